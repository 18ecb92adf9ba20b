// two_spin.hpp: operator algebra on the two-qubit Hilbert space.
//
// Basis order is |00>, |01>, |10>, |11> everywhere in the library, with
// qubit 1 the left tensor factor. |0> is the sigma_z = +1 eigenstate.

#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace unruh {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr Axis kAxes[3] = {Axis::x, Axis::y, Axis::z};

/// Single-qubit Pauli matrix.
Matrix2 pauli(Axis axis);

struct TwoSpinOperator {
    Matrix4 entries;
    std::string label;
};

/// sigma_axis acting on `atom` (0 or 1), identity on the other factor.
TwoSpinOperator embed(int atom, Axis axis);

/// sigma_first (x) sigma_second.
TwoSpinOperator pauli_pair(Axis first, Axis second);

/// sigma_x(x)sigma_x + sigma_y(x)sigma_y + sigma_z(x)sigma_z.
TwoSpinOperator exchange_operator();

struct StateTolerance {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double eigenvalue_floor = -1e-10;
};

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix. Immutable once
/// constructed; the only way in is through validation.
class DensityMatrix {
public:
    /// Throws Error(invalid_state) on a non-Hermitian or wrong-trace input and
    /// Error(unphysical_state) on a negative eigenvalue below the floor.
    static DensityMatrix from_matrix(const Matrix4& m, const StateTolerance& tol = {});
    static DensityMatrix pure(const Vector4& psi);

    static DensityMatrix singlet();
    static DensityMatrix triplet0();
    static DensityMatrix product00();
    static DensityMatrix product11();
    static DensityMatrix maximally_mixed();

    const Matrix4& matrix() const noexcept { return rho_; }

    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

private:
    explicit DensityMatrix(const Matrix4& m) : rho_(m) {}
    Matrix4 rho_;
};

/// Reduced observable triple of the exchange-symmetric sector.
struct BlochState {
    double Mz = 0.0;
    double Mzz = 0.0;
    double Mc = 0.0;
};

struct Observables {
    double Mx = 0.0, My = 0.0, Mz = 0.0;
    double Mxx = 0.0, Myy = 0.0, Mzz = 0.0;
    double Mxy = 0.0, Myz = 0.0, Mzx = 0.0;

    double Mc() const noexcept { return Mxx + Myy; }
    BlochState bloch() const noexcept { return {Mz, Mzz, Mc()}; }
};

/// Magnetizations M_i = Tr[(s_i(x)1 + 1(x)s_i) rho]/2, correlators
/// M_ii = Tr[(s_i(x)s_i) rho]/4 and M_ij = Tr[(s_i(x)s_j + s_j(x)s_i) rho]/4.
Observables observables(const DensityMatrix& rho);

/// Same linear functionals applied to an arbitrary matrix (used on d rho/dtau,
/// which is traceless and not a state). Real parts only.
Observables project_observables(const Matrix4& m);

/// Inverse of the observable map on the symmetric sector: every observable
/// except (M_z, M_zz, M_c) is zero and M_xx = M_yy. Throws
/// Error(unphysical_state) when the result has a negative eigenvalue.
DensityMatrix reconstruct_symmetric(const BlochState& b);

double purity(const DensityMatrix& rho);

/// -sum p ln p over the spectrum (natural log, 0 ln 0 = 0).
double von_neumann_entropy(const DensityMatrix& rho);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
double concurrence_wootters(const DensityMatrix& rho);

/// max{0, 4|M_c| - sqrt((1 + 4 M_zz)^2 - 4 M_z^2)}, evaluated as written and
/// not clamped to [0, 1]. It returns 2 on the singlet, where Wootters gives 1.
/// Throws Error(domain_error) on a negative radicand.
double concurrence_closed_form(const BlochState& b);

/// Fidelity <psi|rho|psi> for a normalized pure state.
double fidelity(const Matrix4& rho, const Vector4& psi);

/// (|01> - |10>)/sqrt(2).
Vector4 singlet_vector();

}  // namespace unruh
