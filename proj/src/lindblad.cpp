#include "unruh/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

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

// Levi-Civita e_{jk3} restricted to j, k in {x, y}.
double levi_civita_z(int j, int k) {
    if (j == 0 && k == 1) return 1.0;
    if (j == 1 && k == 0) return -1.0;
    return 0.0;
}

std::string dump(const Matrix16& m) {
    std::ostringstream os;
    os.precision(17);
    os << m;
    return os.str();
}

}  // namespace

KossakowskiMatrix build_kossakowski(const DissipationCoefficients& c, int sign_b) {
    if (sign_b != 1 && sign_b != -1)
        throw Error(ErrorCode::config_error, "sign_b must be +1 or -1");
    const double A[2][2] = {{c.A11, c.A12}, {c.A12, c.A11}};
    const double B[2][2] = {{c.B11, c.B12}, {c.B12, c.B11}};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (A[a][b] < std::abs(B[a][b]) - 1e-15 * std::abs(A[a][b])) {
                std::ostringstream os;
                os << "A^" << a + 1 << b + 1 << " = " << A[a][b] << " < |B^" << a + 1 << b + 1
                   << "| = " << std::abs(B[a][b]);
                throw Error(ErrorCode::complete_positivity_violation, os.str());
            }
        }
    }

    KossakowskiMatrix k;
    k.coeffs_ = c;
    k.sign_b_ = sign_b;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    cplx g = 0.0;
                    if (j == l) g += A[a][b];
                    g -= kI * static_cast<double>(sign_b) * B[a][b] * levi_civita_z(j, l);
                    if (j == 2 && l == 2) g -= A[a][b];
                    k.gamma_(3 * a + j, 3 * b + l) = g;
                }

    Eigen::SelfAdjointEigenSolver<Matrix6> es(k.gamma_, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, k.gamma_.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
        std::ostringstream os;
        os << "Kossakowski matrix has eigenvalue " << es.eigenvalues().minCoeff();
        throw Error(ErrorCode::complete_positivity_violation, os.str());
    }
    return k;
}

Vector16 vectorize(const Matrix4& m) { return Eigen::Map<const Vector16>(m.data()); }

Matrix4 unvectorize(const Vector16& v) { return Eigen::Map<const Matrix4>(v.data()); }

Matrix4 Liouvillian::apply(const Matrix4& rho) const {
    return unvectorize(matrix_ * vectorize(rho));
}

Liouvillian build_liouvillian(const KossakowskiMatrix& k, const std::optional<Matrix4>& hamiltonian,
                              double kappa) {
    const Matrix4 id = Matrix4::Identity();
    Liouvillian l;
    l.coeffs_ = k.coefficients();
    l.sign_b_ = k.sign_b();
    l.kappa_ = kappa;

    for (int a = 0; a < 2; ++a)
        for (int j = 0; j < 3; ++j) {
            const Matrix4 sa = embed(a, kAxes[j]).entries;
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 3; ++m) {
                    const cplx g = k.gamma()(3 * a + j, 3 * b + m);
                    if (g == 0.0) continue;
                    const Matrix4 sb = embed(b, kAxes[m]).entries;
                    const Matrix4 prod = sa * sb;
                    l.matrix_ += (kappa * g) * (kron(sa.transpose(), sb) - 0.5 * kron(id, prod) -
                                                0.5 * kron(prod.transpose(), id));
                }
        }

    if (hamiltonian) {
        const Matrix4& h = *hamiltonian;
        if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw Error(ErrorCode::invalid_state, "Hamiltonian is not Hermitian");
        l.matrix_ += -kI * (kron(id, h) - kron(h.transpose(), id));
        l.has_hamiltonian_ = true;
    }
    return l;
}

Liouvillian build_liouvillian(const DissipationCoefficients& coeffs, const Calibration& cal) {
    return build_liouvillian(build_kossakowski(coeffs, cal.sign_b), std::nullopt, cal.kappa);
}

Liouvillian zero_liouvillian() {
    Liouvillian l;
    l.kappa_ = 0.0;
    return l;
}

BlochSystem bloch_system(const DissipationCoefficients& c) {
    BlochSystem s;
    s.M << -c.A11, 0.0, 2.0 * c.B12,
            c.B11 / 2.0, -2.0 * c.A11, c.A12,
           -c.B12 / 2.0, 2.0 * c.A12, -c.A11;
    s.b << c.B11, 0.0, 0.0;
    return s;
}

CalibrationReport project_consistency(const Liouvillian& l, int samples, unsigned seed) {
    if (l.has_hamiltonian())
        throw Error(ErrorCode::config_error, "calibration requires a Liouvillian without H");
    if (samples < 3) throw Error(ErrorCode::insufficient_data, "need at least 3 samples");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mz(-1.0, 1.0), mzz(-0.25, 0.25), mc(-0.5, 0.5);
    std::vector<DensityMatrix> states;
    while (static_cast<int>(states.size()) < samples) {
        const BlochState b{mz(rng), mzz(rng), mc(rng)};
        try {
            states.push_back(reconstruct_symmetric(b));
        } catch (const Error&) {
            // outside the physical region; redraw
        }
    }

    const BlochSystem target = bloch_system(l.coefficients());
    struct Fit {
        double k, residual;
    };
    auto fit = [&](const Liouvillian& gen) {
        std::vector<Eigen::Vector3d> d, t;
        double num = 0.0, den = 0.0;
        for (const auto& rho : states) {
            d.push_back(to_vector(project_observables(gen.apply(rho.matrix())).bloch()));
            t.push_back(target.rhs(to_vector(observables(rho).bloch())));
            num += d.back().dot(t.back());
            den += d.back().squaredNorm();
        }
        const double k = den > 0.0 ? num / den : 0.0;
        double r = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) r = std::max(r, (k * d[i] - t[i]).cwiseAbs().maxCoeff());
        return Fit{k, r};
    };

    const Fit same = fit(l);
    const Liouvillian mirror =
        build_liouvillian(build_kossakowski(l.coefficients(), -l.sign_b()), std::nullopt, 1.0);
    const Fit other = fit(mirror);

    CalibrationReport rep;
    if (same.residual <= other.residual) {
        rep.kappa_cal = same.k * l.kappa();
        rep.sign_b = l.sign_b();
        rep.residual = same.residual;
        rep.residual_other_sign = other.residual;
    } else {
        rep.kappa_cal = other.k;
        rep.sign_b = -l.sign_b();
        rep.residual = other.residual;
        rep.residual_other_sign = same.residual;
    }
    if (rep.residual > 1e-8) {
        std::ostringstream os;
        os << "superoperator does not project onto the Bloch equations: residual " << rep.residual;
        throw Error(ErrorCode::model_inconsistency, os.str());
    }
    return rep;
}

namespace {

double spectral_radius(const Matrix16& m) {
    Eigen::ComplexEigenSolver<Matrix16> es(m, false);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical_failure, "eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct StepPlan {
    long steps;
    double dt;
    double last;  // length of the final step, in (0, dt]
    long stride;

    double time(long n) const { return n == steps ? dt * (steps - 1) + last : dt * n; }
};

StepPlan plan_steps(const EvolveOptions& opts, double bound) {
    if (!(opts.tau_max > 0.0)) throw Error(ErrorCode::config_error, "tau_max must be > 0");
    if (opts.dt < 0.0) throw Error(ErrorCode::config_error, "dt must be >= 0");
    if (opts.sample_every < 0.0) throw Error(ErrorCode::config_error, "sample_every must be >= 0");
    double dt = opts.dt;
    if (dt == 0.0) dt = std::isfinite(bound) ? bound : opts.tau_max / 100.0;
    if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "dt = " << dt << " exceeds the stability bound " << bound;
        throw Error(ErrorCode::config_error, os.str());
    }
    StepPlan p;
    const double unit = opts.sample_every > 0.0 ? std::min(opts.sample_every, opts.tau_max) : opts.tau_max;
    const long per_unit = std::max(1L, static_cast<long>(std::ceil(unit / dt - 1e-9)));
    p.dt = unit / static_cast<double>(per_unit);
    p.stride = opts.sample_every > 0.0 ? per_unit : 1L;
    p.steps = std::max(1L, static_cast<long>(std::ceil(opts.tau_max / p.dt - 1e-9)));
    p.last = opts.tau_max - p.dt * static_cast<double>(p.steps - 1);
    return p;
}

}  // namespace

double max_stable_step(const Liouvillian& l) {
    const double r = spectral_radius(l.matrix());
    return r > 0.0 ? 0.01 / r : std::numeric_limits<double>::infinity();
}

double max_stable_step(const BlochSystem& s) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(s.M, false);
    const double r = es.eigenvalues().cwiseAbs().maxCoeff();
    return r > 0.0 ? 0.01 / r : std::numeric_limits<double>::infinity();
}

DensityTrajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& opts) {
    const StepPlan plan = plan_steps(opts, max_stable_step(l));
    const Matrix16& L = l.matrix();
    const StateTolerance tol{1e-10, 1e-10, -1e-10};

    DensityTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    Vector16 v = vectorize(rho0.matrix());
    auto rhs = [&L](const Vector16& x) -> Vector16 { return L * x; };
    for (long n = 1; n <= plan.steps; ++n) {
        v = rk4_step(rhs, v, n == plan.steps ? plan.last : plan.dt);
        if (n % plan.stride != 0 && n != plan.steps) continue;
        try {
            traj.states.push_back(DensityMatrix::from_matrix(unvectorize(v), tol));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "step " << n << " of " << plan.steps << " (tau = " << plan.time(n) << ", dt = " << plan.dt
               << "): " << e.what();
            throw Error(ErrorCode::integration_diverged, os.str());
        }
        traj.times.push_back(plan.time(n));
    }
    return traj;
}

BlochTrajectory evolve(const BlochSystem& s, const BlochState& x0, const EvolveOptions& opts) {
    const StepPlan plan = plan_steps(opts, max_stable_step(s));
    BlochTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    Eigen::Vector3d x = to_vector(x0);
    auto rhs = [&s](const Eigen::Vector3d& y) -> Eigen::Vector3d { return s.rhs(y); };
    for (long n = 1; n <= plan.steps; ++n) {
        x = rk4_step(rhs, x, n == plan.steps ? plan.last : plan.dt);
        if (!x.allFinite()) {
            std::ostringstream os;
            os << "non-finite Bloch state at step " << n << " (tau = " << plan.time(n) << ")";
            throw Error(ErrorCode::integration_diverged, os.str());
        }
        if (n % plan.stride != 0 && n != plan.steps) continue;
        traj.times.push_back(plan.time(n));
        traj.states.push_back(to_bloch(x));
    }
    return traj;
}

SteadyStates steady_states(const Liouvillian& l, double rel_threshold) {
    Eigen::JacobiSVD<Matrix16> svd(l.matrix(), Eigen::ComputeFullV);
    SteadyStates out;
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values(0);
    std::vector<Matrix4> kernel;
    for (int i = 0; i < 16; ++i) {
        if (smax == 0.0 || out.singular_values(i) < rel_threshold * smax)
            kernel.push_back(unvectorize(svd.matrixV().col(i)));
    }
    out.degeneracy = static_cast<int>(kernel.size());
    if (out.degeneracy == 0)
        throw Error(ErrorCode::no_steady_state, "Liouvillian has an empty kernel");

    // The kernel is closed under the adjoint, so Hermitian parts span it.
    std::vector<Matrix4> herm;
    auto inner = [](const Matrix4& a, const Matrix4& b) { return (a.adjoint() * b).trace().real(); };
    for (const Matrix4& x : kernel) {
        for (const Matrix4& c : {Matrix4(0.5 * (x + x.adjoint())), Matrix4(-0.5 * kI * (x - x.adjoint()))}) {
            if (static_cast<int>(herm.size()) == out.degeneracy) break;
            Matrix4 r = c;
            for (const Matrix4& q : herm) r -= inner(q, r) * q;
            const double n = std::sqrt(inner(r, r));
            if (n > 1e-8) herm.push_back(r / n);
        }
    }

    // One unit-trace element, the rest traceless.
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < herm.size(); ++i)
        if (std::abs(herm[i].trace().real()) > std::abs(herm[pivot].trace().real())) pivot = i;
    const double tp = herm.empty() ? 0.0 : herm[pivot].trace().real();
    if (std::abs(tp) > 1e-8) {
        for (std::size_t i = 0; i < herm.size(); ++i) {
            if (i == pivot) continue;
            herm[i] -= (herm[i].trace().real() / tp) * herm[pivot];
            herm[i] /= std::sqrt(inner(herm[i], herm[i]));
        }
        herm[pivot] /= tp;
        std::swap(herm[0], herm[pivot]);
    }
    out.basis = std::move(herm);
    return out;
}

DensityMatrix unique_steady_state(const Liouvillian& l, double rel_threshold) {
    const SteadyStates ss = steady_states(l, rel_threshold);
    if (ss.degeneracy != 1) {
        std::ostringstream os;
        os << "kernel has dimension " << ss.degeneracy << ", expected 1";
        throw Error(ErrorCode::numerical_failure, os.str());
    }
    return DensityMatrix::from_matrix(ss.basis.front(), {1e-10, 1e-10, -1e-10});
}

const char* to_string(Phase p) { return p == Phase::localized ? "localized" : "thermal"; }

BlochState steady_closed_form(Phase phase, double M0, double mc0, double mzz0) {
    if (phase == Phase::thermal) return {M0, M0 * M0 / 4.0, 0.0};
    const double S = mc0 + mzz0;
    const double den = 3.0 + M0 * M0;
    BlochState b;
    b.Mz = M0 * (3.0 + 4.0 * S) / den;
    b.Mc = -(M0 * M0 - 4.0 * S) / (2.0 * den);
    b.Mzz = S - b.Mc;
    return b;
}

Spectrum spectrum(const Liouvillian& l, double zero_tol) {
    Eigen::ComplexEigenSolver<Matrix16> es(l.matrix(), false);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::numerical_failure,
                    "eigensolver did not converge for Liouvillian:\n" + dump(l.matrix()));
    Spectrum s;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + 16);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const cplx& a, const cplx& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double top = -std::numeric_limits<double>::infinity();
    for (const cplx& z : s.eigenvalues)
        if (std::abs(z) > zero_tol) top = std::max(top, z.real());
    s.gap = std::isfinite(top) ? -top : 0.0;
    return s;
}

}  // namespace unruh
