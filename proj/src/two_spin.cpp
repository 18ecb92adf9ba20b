#include "unruh/two_spin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "unruh/error.hpp"

namespace unruh {

namespace {

constexpr cplx kI{0.0, 1.0};

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Eigen::Vector4d hermitian_spectrum(const Matrix4& m) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_real(const Matrix4& op, const Matrix4& rho) { return (op * rho).trace().real(); }

}  // namespace

Matrix2 pauli(Axis axis) {
    Matrix2 m;
    switch (axis) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, -kI, kI, 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

TwoSpinOperator embed(int atom, Axis axis) {
    const Matrix2 id = Matrix2::Identity();
    if (atom == 0) return {kron(pauli(axis), id), std::string("s") + axis_name(axis) + "(x)1"};
    return {kron(id, pauli(axis)), std::string("1(x)s") + axis_name(axis)};
}

TwoSpinOperator pauli_pair(Axis first, Axis second) {
    return {kron(pauli(first), pauli(second)),
            std::string("s") + axis_name(first) + "(x)s" + axis_name(second)};
}

TwoSpinOperator exchange_operator() {
    Matrix4 d = Matrix4::Zero();
    for (Axis a : kAxes) d += pauli_pair(a, a).entries;
    return {d, "D"};
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4& m, const StateTolerance& tol) {
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= tol.hermiticity)) {
        std::ostringstream os;
        os << "matrix is not Hermitian (max |rho - rho^dag| = " << herm << ")";
        throw Error(ErrorCode::invalid_state, os.str());
    }
    const cplx tr = m.trace();
    if (!(std::abs(tr - 1.0) <= tol.trace)) {
        std::ostringstream os;
        os << "trace is " << tr << ", expected 1";
        throw Error(ErrorCode::invalid_state, os.str());
    }
    const double lmin = hermitian_spectrum(m).minCoeff();
    if (lmin < tol.eigenvalue_floor) {
        std::ostringstream os;
        os << "negative eigenvalue " << lmin;
        throw Error(ErrorCode::unphysical_state, os.str());
    }
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Vector4& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw Error(ErrorCode::invalid_state, "zero state vector");
    const Vector4 v = psi / n;
    return from_matrix(v * v.adjoint());
}

Vector4 singlet_vector() {
    const double s = 1.0 / std::sqrt(2.0);
    return Vector4(0.0, s, -s, 0.0);
}

DensityMatrix DensityMatrix::singlet() { return pure(singlet_vector()); }

DensityMatrix DensityMatrix::triplet0() {
    const double s = 1.0 / std::sqrt(2.0);
    return pure(Vector4(0.0, s, s, 0.0));
}

DensityMatrix DensityMatrix::product00() { return pure(Vector4(1.0, 0.0, 0.0, 0.0)); }

DensityMatrix DensityMatrix::product11() { return pure(Vector4(0.0, 0.0, 0.0, 1.0)); }

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.25 * Matrix4::Identity()); }

double DensityMatrix::min_eigenvalue() const { return hermitian_spectrum(rho_).minCoeff(); }

Observables project_observables(const Matrix4& m) {
    std::array<Matrix4, 3> s1, s2;
    for (Axis a : kAxes) {
        s1[static_cast<int>(a)] = embed(0, a).entries;
        s2[static_cast<int>(a)] = embed(1, a).entries;
    }
    auto single = [&](int i) { return 0.5 * trace_real(s1[i] + s2[i], m); };
    auto same = [&](int i) { return 0.25 * trace_real(s1[i] * s2[i], m); };
    auto mixed = [&](int i, int j) { return 0.25 * trace_real(s1[i] * s2[j] + s1[j] * s2[i], m); };

    Observables o;
    o.Mx = single(0);
    o.My = single(1);
    o.Mz = single(2);
    o.Mxx = same(0);
    o.Myy = same(1);
    o.Mzz = same(2);
    o.Mxy = mixed(0, 1);
    o.Myz = mixed(1, 2);
    o.Mzx = mixed(2, 0);
    return o;
}

Observables observables(const DensityMatrix& rho) { return project_observables(rho.matrix()); }

DensityMatrix reconstruct_symmetric(const BlochState& b) {
    const Matrix4 zsum = embed(0, Axis::z).entries + embed(1, Axis::z).entries;
    const Matrix4 m = 0.25 * (Matrix4::Identity() + b.Mz * zsum +
                              4.0 * b.Mzz * pauli_pair(Axis::z, Axis::z).entries +
                              2.0 * b.Mc *
                                  (pauli_pair(Axis::x, Axis::x).entries +
                                   pauli_pair(Axis::y, Axis::y).entries));
    try {
        return DensityMatrix::from_matrix(m);
    } catch (const Error& e) {
        std::ostringstream os;
        os << "(Mz, Mzz, Mc) = (" << b.Mz << ", " << b.Mzz << ", " << b.Mc
           << ") is outside the physical region: " << e.what();
        throw Error(ErrorCode::unphysical_state, os.str());
    }
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double p : hermitian_spectrum(rho.matrix())) {
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double concurrence_wootters(const DensityMatrix& state) {
    const Matrix4 yy = pauli_pair(Axis::y, Axis::y).entries;

    // With rho = W W^dag, the square roots of eig(rho * flipped rho) are the
    // singular values of W^T (sy x sy) W. Taking them directly avoids the
    // square root of round-off on rank-deficient states.
    Eigen::SelfAdjointEigenSolver<Matrix4> es(state.matrix());
    const Eigen::Vector4d p = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix4 w = es.eigenvectors() * p.asDiagonal();
    const Matrix4 tau = w.transpose() * yy * w;
    Eigen::JacobiSVD<Matrix4> svd(tau);
    const Eigen::Vector4d l = svd.singularValues();  // descending
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double concurrence_closed_form(const BlochState& b) {
    double radicand = (1.0 + 4.0 * b.Mzz) * (1.0 + 4.0 * b.Mzz) - 4.0 * b.Mz * b.Mz;
    // Round-off on boundary states (|00>, |11>) lands just below zero.
    if (radicand < 0.0 && radicand > -1e-12) radicand = 0.0;
    if (radicand < 0.0) {
        std::ostringstream os;
        os << "negative radicand " << radicand << " for (Mz, Mzz, Mc) = (" << b.Mz << ", "
           << b.Mzz << ", " << b.Mc << ")";
        throw Error(ErrorCode::domain_error, os.str());
    }
    return std::max(0.0, 4.0 * std::abs(b.Mc) - std::sqrt(radicand));
}

double fidelity(const Matrix4& rho, const Vector4& psi) {
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

}  // namespace unruh
