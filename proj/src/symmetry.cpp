#include "unruh/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "unruh/error.hpp"

namespace unruh {

namespace {

constexpr cplx kI{0.0, 1.0};

Matrix16 kron(const Matrix4& a, const Matrix4& b) {
    Matrix16 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

double max_abs(const Matrix16& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

SymmetryOperator::SymmetryOperator() : d_(exchange_operator().entries) {
    const Matrix4 id = Matrix4::Identity();
    d_hat_ = kron(d_, id) - kron(id, d_.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix16> es(d_hat_);
    d_hat_eigenvalues_ = es.eigenvalues();
    d_hat_eigenvectors_ = es.eigenvectors();
}

Matrix16 SymmetryOperator::U(double kappa) const {
    Eigen::Matrix<cplx, 16, 1> phases;
    for (int i = 0; i < 16; ++i) phases(i) = std::exp(-kI * d_hat_eigenvalues_(i) * kappa);
    return d_hat_eigenvectors_ * phases.asDiagonal() * d_hat_eigenvectors_.adjoint();
}

SymmetryResidual symmetry_residual(const Liouvillian& l, const std::vector<double>& kappas) {
    static const SymmetryOperator sym;
    const Matrix16& L = l.matrix();
    SymmetryResidual r;
    r.liouvillian_norm = max_abs(L);
    r.commutator = max_abs(sym.D_hat() * L - L * sym.D_hat());
    for (double kappa : kappas) {
        const Matrix16 u = sym.U(kappa);
        r.residual = std::max(r.residual, max_abs(u * L * u.adjoint() - L));
    }
    return r;
}

ConservedDrift conserved_quantity(const DensityTrajectory& traj) {
    ConservedDrift out;
    if (traj.states.empty()) return out;
    auto q = [](const DensityMatrix& rho) {
        const Observables o = observables(rho);
        return o.Mxx + o.Myy + o.Mzz;
    };
    out.initial = q(traj.states.front());
    for (const auto& rho : traj.states) out.max_drift = std::max(out.max_drift, std::abs(q(rho) - out.initial));
    return out;
}

namespace {

std::vector<Vector4> spanning_sample() {
    std::vector<Vector4> out;
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) out.push_back(Vector4::Unit(i));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            out.push_back(s * (Vector4::Unit(i) + Vector4::Unit(j)));
            out.push_back(s * (Vector4::Unit(i) + kI * Vector4::Unit(j)));
        }
    return out;
}

}  // namespace

DarkStates dark_states(const Liouvillian& l, double tol) {
    DarkStates out;
    auto residual_of = [&](const Matrix4& rho) { return vectorize(l.apply(rho)).norm(); };

    if (l.matrix().cwiseAbs().maxCoeff() == 0.0) {
        out.degenerate_kernel = true;
        for (const Vector4& psi : spanning_sample()) {
            const Matrix4 rho = psi * psi.adjoint();
            out.states.push_back({psi, rho, 1.0, 0.0});
        }
        return out;
    }

    const SteadyStates ss = steady_states(l);
    std::vector<Matrix4> probes = ss.basis;
    const double weights[] = {0.7548776662, 1.3247179572, -0.5698402910};
    for (std::size_t i = 0; i < ss.basis.size(); ++i)
        for (std::size_t j = i + 1; j < ss.basis.size(); ++j)
            for (double w : weights) probes.push_back(ss.basis[i] + w * ss.basis[j]);

    for (const Matrix4& h : probes) {
        Eigen::SelfAdjointEigenSolver<Matrix4> es(0.5 * (h + h.adjoint()));
        for (int c = 0; c < 4; ++c) {
            const Vector4 psi = es.eigenvectors().col(c).normalized();
            const bool seen = std::any_of(out.states.begin(), out.states.end(), [&](const DarkState& d) {
                return std::norm(d.psi.dot(psi)) > 1.0 - 1e-8;
            });
            if (seen) continue;
            const Matrix4 rho = psi * psi.adjoint();
            const double r = residual_of(rho);
            if (r < tol) out.states.push_back({psi, rho, (rho * rho).trace().real(), r});
        }
    }
    return out;
}

PhaseClassification classify_phase(const PhysicalParams& p, double epsilon_loc) {
    const DimensionlessParams d = to_dimensionless(p);
    PhaseClassification c;
    c.f = f_factor(d);
    c.epsilon_loc = epsilon_loc;
    c.distance = epsilon_loc - (1.0 - c.f);
    c.phase = (1.0 - c.f) < epsilon_loc ? Phase::localized : Phase::thermal;
    try {
        c.alpha_c = critical_acceleration(p, epsilon_loc);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_localized_phase) throw;
        c.alpha_c = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

}  // namespace unruh
