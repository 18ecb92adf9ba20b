// Shared helpers for the test binaries: seeded random states and a few
// reference quantities computed without the library.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <random>

#include "unruh/error.hpp"
#include "unruh/sweep.hpp"

namespace testing {

using unruh::cplx;
using unruh::Matrix4;
using unruh::Vector4;

inline Matrix4 ginibre(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Matrix4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cplx(n(rng), n(rng));
    return g;
}

/// Full-rank random density matrix G G^dag / Tr.
inline unruh::DensityMatrix random_state(std::mt19937_64& rng) {
    const Matrix4 g = ginibre(rng);
    Matrix4 rho = g * g.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return unruh::DensityMatrix::from_matrix(rho);
}

inline Vector4 random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(n(rng), n(rng));
    return v.normalized();
}

inline Eigen::Vector2cd random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::Vector2cd v(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)));
    return v.normalized();
}

inline Matrix4 random_unitary(std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix4> qr(ginibre(rng));
    return qr.householderQ();
}

/// Populations of the symmetric-sector state on |00>, |11>, |T0>, |S>.
inline std::array<double, 4> symmetric_populations(const unruh::BlochState& b) {
    return {0.25 * (1 + 2 * b.Mz + 4 * b.Mzz), 0.25 * (1 - 2 * b.Mz + 4 * b.Mzz),
            0.25 * (1 - 4 * b.Mzz + 4 * b.Mc), 0.25 * (1 - 4 * b.Mzz - 4 * b.Mc)};
}

/// Rejection sample of a physical (M_z, M_zz, M_c) triple.
inline unruh::BlochState random_symmetric(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mz(-1, 1), mzz(-0.25, 0.25), mc(-0.5, 0.5);
    for (;;) {
        const unruh::BlochState b{mz(rng), mzz(rng), mc(rng)};
        bool ok = true;
        for (double p : symmetric_populations(b)) ok = ok && p > 1e-3;
        if (ok) return b;
    }
}

/// Error code raised by `f`, or nullopt when it returns normally.
template <class F>
std::optional<unruh::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const unruh::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

/// Thermal (Gibbs-like) steady observables for a given a_tilde.
inline unruh::BlochState thermal_reference(double a_tilde) {
    const double m0 = std::tanh(unruh::kPi / a_tilde);
    return {m0, m0 * m0 / 4, 0.0};
}

}  // namespace testing
