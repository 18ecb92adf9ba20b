#include "unruh/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "unruh/error.hpp"

namespace unruh {

void PhysicalParams::validate() const {
    std::ostringstream os;
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) os << "alpha must be >= 0 (got " << alpha << ") ";
    if (!(L > 0.0) || !std::isfinite(L)) os << "L must be > 0 (got " << L << ") ";
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) os << "omega0 must be > 0 (got " << omega0 << ") ";
    if (!(coupling > 0.0)) os << "coupling must be > 0 (got " << coupling << ") ";
    if (!os.str().empty()) throw Error(ErrorCode::config_error, os.str());
}

double a_tilde_of(double alpha, double omega0) { return alpha / (kSpeedOfLight * omega0); }

double alpha_of(double a_tilde, double omega0) { return a_tilde * kSpeedOfLight * omega0; }

DimensionlessParams to_dimensionless(const PhysicalParams& p) {
    p.validate();
    DimensionlessParams d;
    d.a_tilde = a_tilde_of(p.alpha, p.omega0);
    d.ell = p.omega0 * p.L / kSpeedOfLight;
    d.M0 = thermal_magnetization(d.a_tilde);
    d.Gamma0 = p.coupling * p.coupling * p.omega0 / (8.0 * kPi);
    return d;
}

double thermal_magnetization(double a_tilde) {
    if (a_tilde <= 0.0) return 1.0;
    return std::tanh(kPi / a_tilde);
}

double thermal_factor(double a_tilde) { return 1.0 / thermal_magnetization(a_tilde); }

double f_factor(double a_tilde, double ell) {
    if (!(ell > 0.0)) throw Error(ErrorCode::domain_error, "f_factor requires ell > 0");
    if (a_tilde == 0.0) return std::sin(ell) / ell;
    const double x = 0.5 * a_tilde * ell;
    return std::sin(2.0 * std::asinh(x) / a_tilde) / (ell * std::sqrt(1.0 + x * x));
}

DissipationCoefficients DissipationCoefficients::with_cooperativity(double A11, double B11,
                                                                    double f) {
    return {A11, B11, f * A11, f * B11, false};
}

DissipationCoefficients dissipation_coefficients(const PhysicalParams& p, RateUnits units) {
    const DimensionlessParams d = to_dimensionless(p);
    const double rate = units == RateUnits::gamma0 ? 1.0 : d.Gamma0;
    const double f = f_factor(d);
    auto c = DissipationCoefficients::with_cooperativity(rate * thermal_factor(d.a_tilde), rate, f);
    c.zero_temperature_limit = p.alpha == 0.0;
    return c;
}

std::complex<double> wightman_dimensionless(double s, double a_tilde, double ell, bool same_atom,
                                            double eps) {
    const std::complex<double> z(s, -eps);
    std::complex<double> interval;
    if (a_tilde == 0.0) {
        interval = z * z;
    } else {
        const std::complex<double> sh = std::sinh(0.5 * a_tilde * z);
        interval = (4.0 / (a_tilde * a_tilde)) * sh * sh;
    }
    if (!same_atom) interval -= ell * ell;
    return -1.0 / (4.0 * kPi * kPi * interval);
}

std::complex<double> wightman(double dtau, const PhysicalParams& p, bool same_atom,
                              double epsilon) {
    p.validate();
    if (!(epsilon > 0.0)) throw Error(ErrorCode::domain_error, "regulator epsilon must be > 0");
    const DimensionlessParams d = to_dimensionless(p);
    const double k = p.omega0 / kSpeedOfLight;  // converts omega0^2/c^2 units to 1/m^2
    return k * k *
           wightman_dimensionless(p.omega0 * dtau, d.a_tilde, d.ell, same_atom, p.omega0 * epsilon);
}

double response_closed_form(double a_tilde, double ell, bool same_atom, double omega_ratio) {
    if (omega_ratio == 0.0) throw Error(ErrorCode::domain_error, "response needs a nonzero frequency");
    if (!(a_tilde > 0.0)) {
        // Inertial limit: only positive frequencies respond.
        if (omega_ratio <= 0.0) return 0.0;
        const double f = same_atom ? 1.0 : std::sin(omega_ratio * ell) / (omega_ratio * ell);
        return omega_ratio * f / (2.0 * kPi);
    }
    // f at frequency w: rescale (a_tilde, ell) -> (a_tilde / |w|, ell |w|); f is even in w.
    const double w = std::abs(omega_ratio);
    const double f = same_atom ? 1.0 : f_factor(a_tilde / w, ell * w);
    return omega_ratio / (2.0 * kPi * -std::expm1(-2.0 * kPi * omega_ratio / a_tilde)) * f;
}

namespace {

// Integral over the real line equals 2 Re of the half-line integral because
// G_eps(-s) = conj(G_eps(s)).
double regulated_transform(double a_tilde, double ell, bool same_atom, double w, double eps,
                           double tol, double& err_sum) {
    auto integrand = [&](double s) {
        const std::complex<double> phase(std::cos(w * s), std::sin(w * s));
        return (phase * wightman_dimensionless(s, a_tilde, ell, same_atom, eps)).real();
    };

    // Singular points on the half line: coincidence and the light-cone
    // crossing of the two worldlines.
    std::vector<double> singular{0.0};
    if (!same_atom) singular.push_back(2.0 * std::asinh(0.5 * a_tilde * ell) / a_tilde);

    // Tail decays like exp(-a_tilde s).
    const double s_max = 40.0 / a_tilde + 40.0;
    std::vector<double> edges{0.0, s_max};
    for (double p : singular) {
        for (double h = eps; h < 2.0; h *= 2.0) {
            for (double e : {p - h, p + h})
                if (e > 0.0 && e < s_max) edges.push_back(e);
        }
        if (p > 0.0) edges.push_back(p);
    }
    for (double e = 2.0; e < s_max; e += 2.0) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                edges.end());

    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double err = 0.0;
        const double piece =
            gauss_kronrod<double, 61>::integrate(integrand, edges[i], edges[i + 1], 15, tol, &err);
        if (!std::isfinite(piece)) {
            std::ostringstream os;
            os << "non-finite quadrature on [" << edges[i] << ", " << edges[i + 1]
               << "] (a_tilde=" << a_tilde << ", ell=" << ell << ", eps=" << eps << ")";
            throw Error(ErrorCode::oracle_failure, os.str());
        }
        total += piece;
        err_sum += err;
    }
    return 2.0 * total;
}

}  // namespace

OracleResult fourier_transform_oracle(double a_tilde, double ell, bool same_atom,
                                      const OracleOptions& opts) {
    if (!(a_tilde > 0.0)) throw Error(ErrorCode::domain_error, "oracle requires alpha > 0");
    if (!same_atom && !(ell > 0.0)) throw Error(ErrorCode::domain_error, "oracle requires ell > 0");
    if (opts.epsilons.size() < 2) {
        throw Error(ErrorCode::oracle_failure, "need at least two regulator values");
    }
    for (std::size_t i = 1; i < opts.epsilons.size(); ++i) {
        if (std::abs(opts.epsilons[i] * 2.0 - opts.epsilons[i - 1]) > 1e-12 * opts.epsilons[i - 1])
            throw Error(ErrorCode::oracle_failure, "regulators must halve successively");
    }

    OracleResult out;
    for (double eps : opts.epsilons) {
        out.regulated.push_back(regulated_transform(a_tilde, ell, same_atom, opts.omega_ratio, eps,
                                                    opts.quadrature_tolerance,
                                                    out.quadrature_error));
    }

    // Richardson table for errors in powers of eps (ratio 2).
    std::vector<double> row = out.regulated;
    double factor = 2.0;
    while (row.size() > 1) {
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            next.push_back((factor * row[i + 1] - row[i]) / (factor - 1.0));
        row = std::move(next);
        factor *= 2.0;
    }
    out.value = row.front();
    out.extrapolation_change = std::abs(out.value - out.regulated.back());

    const double scale = std::max(std::abs(out.value), 1e-300);
    if (!std::isfinite(out.value) || out.quadrature_error > 1e-6 * scale) {
        std::ostringstream os;
        os << "quadrature did not converge: value=" << out.value
           << " error estimate=" << out.quadrature_error << " (a_tilde=" << a_tilde
           << ", ell=" << ell << ")";
        throw Error(ErrorCode::oracle_failure, os.str());
    }
    return out;
}

OracleResult fourier_transform_oracle(const PhysicalParams& p, bool same_atom,
                                      const OracleOptions& opts) {
    const DimensionlessParams d = to_dimensionless(p);
    return fourier_transform_oracle(d.a_tilde, d.ell, same_atom, opts);
}

double critical_acceleration(const PhysicalParams& p, double epsilon_loc) {
    p.validate();
    if (!(epsilon_loc > 0.0 && epsilon_loc < 1.0))
        throw Error(ErrorCode::config_error, "epsilon_loc must lie in (0, 1)");
    const double ell = p.omega0 * p.L / kSpeedOfLight;
    const double floor_gap = 1.0 - f_factor(0.0, ell);
    if (!(floor_gap < epsilon_loc)) {
        std::ostringstream os;
        os << "1 - f never drops below epsilon_loc=" << epsilon_loc
           << "; the minimum achievable 1 - f is " << floor_gap << " (ell=" << ell << ")";
        throw Error(ErrorCode::no_localized_phase, os.str());
    }
    auto gap = [&](double a) { return 1.0 - f_factor(a, ell); };

    // First crossing on a geometric grid, then bisection in log space.
    double lo = 1e-8;
    double hi = lo;
    while (gap(hi) < epsilon_loc) {
        lo = hi;
        hi *= 1.05;
        if (hi > 1e300) throw Error(ErrorCode::numerical_failure, "no threshold crossing found");
    }
    if (lo == hi) lo = 0.0;
    while (hi - lo > 1e-6 * hi) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        (gap(mid) < epsilon_loc ? lo : hi) = mid;
    }
    return alpha_of(hi, p.omega0);
}

}  // namespace unruh
