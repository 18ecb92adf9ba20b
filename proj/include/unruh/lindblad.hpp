// lindblad.hpp: Kossakowski matrix, Liouvillian, reduced Bloch system,
// time evolution, steady states and spectrum.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unruh/correlations.hpp"
#include "unruh/two_spin.hpp"

namespace unruh {

using Matrix6 = Eigen::Matrix<cplx, 6, 6>;
using Matrix16 = Eigen::Matrix<cplx, 16, 16>;
using Vector16 = Eigen::Matrix<cplx, 16, 1>;

/// Global factor and B-sign that map the superoperator built from the
/// Kossakowski matrix onto the reduced Bloch equations. The defaults are the
/// values project_consistency fits (and the tests re-derive).
struct Calibration {
    double kappa = 0.25;
    int sign_b = -1;
};

inline constexpr Calibration kCalibration{};

/// gamma^{ab}_{jk}, rows (a, j) and columns (b, k) flattened as 3a + j.
class KossakowskiMatrix {
public:
    const Matrix6& gamma() const noexcept { return gamma_; }
    const DissipationCoefficients& coefficients() const noexcept { return coeffs_; }
    int sign_b() const noexcept { return sign_b_; }

    cplx operator()(int a, Axis j, int b, Axis k) const {
        return gamma_(3 * a + static_cast<int>(j), 3 * b + static_cast<int>(k));
    }

    friend KossakowskiMatrix build_kossakowski(const DissipationCoefficients&, int);

private:
    Matrix6 gamma_ = Matrix6::Zero();
    DissipationCoefficients coeffs_;
    int sign_b_ = kCalibration.sign_b;
};

/// gamma^{ab}_{jk} = A^{ab} d_jk - i s_B B^{ab} e_jk3 - A^{ab} d_j3 d_k3.
/// Throws Error(complete_positivity_violation) if A^{ab} < |B^{ab}| or the
/// result is not positive semidefinite.
KossakowskiMatrix build_kossakowski(const DissipationCoefficients& coeffs,
                                    int sign_b = kCalibration.sign_b);

/// Column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).
Vector16 vectorize(const Matrix4& m);
Matrix4 unvectorize(const Vector16& v);

class Liouvillian {
public:
    const Matrix16& matrix() const noexcept { return matrix_; }
    const DissipationCoefficients& coefficients() const noexcept { return coeffs_; }
    int sign_b() const noexcept { return sign_b_; }
    double kappa() const noexcept { return kappa_; }
    bool has_hamiltonian() const noexcept { return has_hamiltonian_; }
    static constexpr const char* kConvention = "column-stacking";

    /// L applied to a 4x4 matrix.
    Matrix4 apply(const Matrix4& rho) const;

    friend Liouvillian build_liouvillian(const KossakowskiMatrix&, const std::optional<Matrix4>&,
                                         double);
    friend Liouvillian zero_liouvillian();

private:
    Matrix16 matrix_ = Matrix16::Zero();
    DissipationCoefficients coeffs_;
    int sign_b_ = kCalibration.sign_b;
    double kappa_ = kCalibration.kappa;
    bool has_hamiltonian_ = false;
};

/// kappa * sum gamma^{ab}_{jk} [ (s_a^j)^T (x) s_b^k - 1/2 1 (x) s_a^j s_b^k
///                               - 1/2 (s_a^j s_b^k)^T (x) 1 ]
///   - i (1 (x) H - H^T (x) 1).
/// Throws Error(invalid_state) if H is supplied and not Hermitian.
Liouvillian build_liouvillian(const KossakowskiMatrix& k,
                              const std::optional<Matrix4>& hamiltonian = std::nullopt,
                              double kappa = kCalibration.kappa);

/// Convenience: calibrated Liouvillian straight from coefficients.
Liouvillian build_liouvillian(const DissipationCoefficients& coeffs,
                              const Calibration& cal = kCalibration);

Liouvillian zero_liouvillian();

struct BlochSystem {
    Eigen::Matrix3d M;
    Eigen::Vector3d b;

    Eigen::Vector3d rhs(const Eigen::Vector3d& x) const { return M * x + b; }
};

/// d/dtau (Mz, Mzz, Mc) = M (Mz, Mzz, Mc) + b with
///   M = [[-A11, 0, 2 B12], [B11/2, -2 A11, A12], [-B12/2, 2 A12, -A11]],
///   b = (B11, 0, 0).
BlochSystem bloch_system(const DissipationCoefficients& coeffs);

inline Eigen::Vector3d to_vector(const BlochState& s) { return {s.Mz, s.Mzz, s.Mc}; }
inline BlochState to_bloch(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

struct CalibrationReport {
    double kappa_cal = 0.0;  // relative to the raw (kappa = 1) dissipator
    int sign_b = 0;
    double residual = 0.0;   // max-abs mismatch after the fit
    double residual_other_sign = 0.0;
};

/// Fits the scalar factor and B-sign mapping the Liouvillian's action on
/// (Mz, Mzz, Mc) onto bloch_system, using `samples` random symmetric-sector
/// states drawn from `seed`. Requires H = 0. Throws
/// Error(model_inconsistency) if the best residual exceeds 1e-8.
CalibrationReport project_consistency(const Liouvillian& l, int samples = 50,
                                      unsigned seed = 20240611u);

/// The step actually taken is the largest one not above dt that divides
/// sample_every (or tau_max when every step is recorded); the final step is
/// shortened if needed so the run ends exactly at tau_max.
struct EvolveOptions {
    double tau_max = 10.0;
    double dt = 0.0;            // 0 selects 0.01 / spectral radius
    double sample_every = 0.0;  // 0 records every step
};

/// One classical fourth-order Runge-Kutta step of dx/dtau = rhs(x), without
/// any step-size policy.
template <class Rhs, class Vec>
Vec rk4_step(const Rhs& rhs, const Vec& x, double h) {
    const Vec k1 = rhs(x);
    const Vec k2 = rhs(Vec(x + 0.5 * h * k1));
    const Vec k3 = rhs(Vec(x + 0.5 * h * k2));
    const Vec k4 = rhs(Vec(x + h * k3));
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct DensityTrajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

struct BlochTrajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
};

/// Largest step allowed by the stability policy dt <= 0.01 / max|lambda|.
double max_stable_step(const Liouvillian& l);
double max_stable_step(const BlochSystem& s);

/// Classical fixed-step RK4. Full-state samples are checked against the
/// density-matrix invariants (tolerance 1e-10); a violation throws
/// Error(integration_diverged). A dt above the policy bound throws
/// Error(config_error).
DensityTrajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& opts);
BlochTrajectory evolve(const BlochSystem& s, const BlochState& x0, const EvolveOptions& opts);

struct SteadyStates {
    std::vector<Matrix4> basis;  // Hermitian, unit trace where the trace is nonzero
    int degeneracy = 0;
    Eigen::VectorXd singular_values;
};

/// Kernel of L from the SVD with threshold `rel_threshold * sigma_max`.
/// Throws Error(no_steady_state) on an empty kernel.
SteadyStates steady_states(const Liouvillian& l, double rel_threshold = 1e-10);

/// The kernel element as a state when the kernel is one-dimensional.
DensityMatrix unique_steady_state(const Liouvillian& l, double rel_threshold = 1e-10);

enum class Phase { localized, thermal };

const char* to_string(Phase p);

/// Localized: M_z = M0 (3 + 4S)/(3 + M0^2), M_c = -(M0^2 - 4S)/(2 (3 + M0^2)),
/// M_zz = S - M_c with S = mc0 + mzz0 the conserved sum.
/// Thermal: (M0, M0^2/4, 0), independent of the initial data.
BlochState steady_closed_form(Phase phase, double M0, double mc0 = 0.0, double mzz0 = 0.0);

struct Spectrum {
    std::vector<cplx> eigenvalues;  // ascending real part
    double gap = 0.0;               // -max Re over |lambda| > zero_tol
};

/// Throws Error(numerical_failure) if the eigensolver does not converge.
Spectrum spectrum(const Liouvillian& l, double zero_tol = 1e-10);

}  // namespace unruh
