// symmetry.hpp: weak symmetry of the two-atom Liouvillian, the conserved
// exchange correlator, dark states and phase classification.

#pragma once

#include <vector>

#include "unruh/lindblad.hpp"

namespace unruh {

/// D = sx(x)sx + sy(x)sy + sz(x)sz with its superoperator
/// D_hat = D (x) 1 - 1 (x) D^T. In the column-stacking convention D_hat acts
/// as X -> X D - D X; D is real symmetric, so this is -[D, .] and generates
/// the same unitary group as the commutator.
class SymmetryOperator {
public:
    SymmetryOperator();

    const Matrix4& D() const noexcept { return d_; }
    const Matrix16& D_hat() const noexcept { return d_hat_; }

    /// exp(-i D_hat kappa), from the eigendecomposition of the Hermitian D_hat.
    Matrix16 U(double kappa) const;

private:
    Matrix4 d_;
    Matrix16 d_hat_;
    Eigen::Matrix<double, 16, 1> d_hat_eigenvalues_;
    Matrix16 d_hat_eigenvectors_;
};

struct SymmetryResidual {
    double residual = 0.0;     // max over kappa of ||U L U^dag - L||_max
    double commutator = 0.0;   // ||D_hat L - L D_hat||_max
    double liouvillian_norm = 0.0;  // ||L||_max
};

SymmetryResidual symmetry_residual(const Liouvillian& l, const std::vector<double>& kappas);

struct ConservedDrift {
    double initial = 0.0;    // Q(0) = M_xx + M_yy + M_zz
    double max_drift = 0.0;  // max |Q(tau) - Q(0)|
};

ConservedDrift conserved_quantity(const DensityTrajectory& traj);

struct DarkState {
    Vector4 psi;
    Matrix4 rho;
    double purity = 0.0;
    double residual = 0.0;  // ||L vec(rho)||_2
};

struct DarkStates {
    std::vector<DarkState> states;
    bool degenerate_kernel = false;  // every state is stationary (L = 0)
};

/// Pure states |psi><psi| in the numerical kernel of L with
/// ||L vec(rho)||_2 < tol. Candidates are eigenvectors of kernel-basis
/// combinations. For L = 0 a 16-element spanning sample of pure states is
/// returned with degenerate_kernel set.
DarkStates dark_states(const Liouvillian& l, double tol = 1e-10);

struct PhaseClassification {
    Phase phase = Phase::thermal;
    double f = 0.0;
    double alpha_c = 0.0;  // NaN when no localized window exists
    double epsilon_loc = 0.0;
    double distance = 0.0;  // epsilon_loc - (1 - f); positive inside the localized phase
};

/// Localized iff 1 - f(alpha) < epsilon_loc; the boundary itself is thermal.
PhaseClassification classify_phase(const PhysicalParams& p, double epsilon_loc = 0.01);

}  // namespace unruh
