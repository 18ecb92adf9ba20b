// correlations.hpp: vacuum two-point functions along the accelerated
// worldlines, their Fourier transforms and the dissipation coefficients.
//
// SI inputs are converted once to the dimensionless pair
//   a_tilde = alpha / (c omega0),   ell = omega0 L / c
// and everything downstream is dimensionless. Rates are in units of
// Gamma0 = lambda^2 omega0 / (8 pi), times in units of 1/Gamma0.

#pragma once

#include <complex>
#include <vector>

namespace unruh {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Physical inputs. omega0 is an angular frequency (rad/s).
struct PhysicalParams {
    double alpha = 0.0;      // proper acceleration, m/s^2
    double L = 6e-7;         // proper separation, m
    double omega0 = 1e14;    // Zeeman angular frequency, rad/s
    double coupling = 1e-3;  // dimensionless lambda

    /// Throws Error(config_error) unless alpha >= 0 and L, omega0, coupling > 0.
    void validate() const;
};

struct DimensionlessParams {
    double a_tilde = 0.0;
    double ell = 0.0;
    double M0 = 1.0;      // tanh(pi / a_tilde)
    double Gamma0 = 0.0;  // lambda^2 omega0 / (8 pi), in 1/s
};

DimensionlessParams to_dimensionless(const PhysicalParams& p);

/// Dimensionless acceleration for a given alpha at fixed omega0.
double a_tilde_of(double alpha, double omega0);
double alpha_of(double a_tilde, double omega0);

/// Zero-temperature-limit-aware tanh(pi / a_tilde).
double thermal_magnetization(double a_tilde);

/// coth(pi / a_tilde), equal to 1 at a_tilde = 0.
double thermal_factor(double a_tilde);

/// Cross-atom cooperativity
///   sin((2/a) asinh(a ell / 2)) / (ell sqrt(1 + a^2 ell^2 / 4)),
/// with the a_tilde = 0 limit sin(ell)/ell. The same-atom value is 1 and is
/// handled by callers.
double f_factor(double a_tilde, double ell);
inline double f_factor(const DimensionlessParams& p) { return f_factor(p.a_tilde, p.ell); }

struct DissipationCoefficients {
    double A11 = 0.0;
    double B11 = 0.0;
    double A12 = 0.0;
    double B12 = 0.0;
    bool zero_temperature_limit = false;

    /// A12 = f A11, B12 = f B11 with the single-atom pair held fixed.
    static DissipationCoefficients with_cooperativity(double A11, double B11, double f);
};

enum class RateUnits { per_second, gamma0 };

/// B11 = Gamma0, A11 = Gamma0 coth(pi/a_tilde), B12 = Gamma0 f, A12 = A11 f.
/// alpha = 0 returns the zero-temperature limit A = B with the flag set.
DissipationCoefficients dissipation_coefficients(const PhysicalParams& p,
                                                 RateUnits units = RateUnits::gamma0);

/// Dimensionless positive-frequency Wightman function
///   -1 / (4 pi^2 [(4/a^2) sinh^2(a (s - i eps)/2) - ell^2 (1 - same_atom)])
/// with s = omega0 * dtau and eps = omega0 * epsilon. Units of omega0^2/c^2.
std::complex<double> wightman_dimensionless(double s, double a_tilde, double ell, bool same_atom,
                                            double eps);

/// Same function in natural units with lengths in metres (result in 1/m^2).
/// dtau and epsilon are in seconds; requires epsilon > 0.
std::complex<double> wightman(double dtau, const PhysicalParams& p, bool same_atom,
                              double epsilon);

/// Closed-form Fourier transform of the Wightman function at frequency
/// w = omega_ratio * omega0, in units of omega0:
///   (1/2pi) w / (1 - exp(-2 pi w / a_tilde)) f_ab.
double response_closed_form(double a_tilde, double ell, bool same_atom, double omega_ratio = 1.0);

struct OracleOptions {
    std::vector<double> epsilons{1e-2, 5e-3, 2.5e-3};  // in units of 1/omega0
    double omega_ratio = 1.0;
    double quadrature_tolerance = 1e-11;
};

struct OracleResult {
    double value = 0.0;                   // Richardson-extrapolated, units of omega0
    std::vector<double> regulated;        // one per epsilon
    double quadrature_error = 0.0;        // summed Gauss-Kronrod estimates
    double extrapolation_change = 0.0;    // |value - finest regulated value|
};

/// Numerical transform of the Wightman function by adaptive quadrature at
/// several regulators, extrapolated to eps -> 0. A validation oracle for
/// response_closed_form. Throws Error(oracle_failure) when quadrature does not
/// converge.
OracleResult fourier_transform_oracle(double a_tilde, double ell, bool same_atom,
                                      const OracleOptions& opts = {});
OracleResult fourier_transform_oracle(const PhysicalParams& p, bool same_atom,
                                      const OracleOptions& opts = {});

/// Smallest alpha (m/s^2) at which 1 - f(alpha) reaches epsilon_loc, found by
/// a geometric scan followed by bisection to relative tolerance 1e-6. The
/// returned value sits on the thermal side of the threshold. Throws
/// Error(no_localized_phase) when 1 - sin(ell)/ell already exceeds
/// epsilon_loc.
double critical_acceleration(const PhysicalParams& p, double epsilon_loc = 0.01);

}  // namespace unruh
