#include "unruh/serialization.hpp"

#include <cmath>

#include "unruh/error.hpp"

namespace unruh {

using nlohmann::json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

cplx entry_from_json(const json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw Error(ErrorCode::invalid_state, "matrix entry must be a number or a [re, im] pair: " + e.dump());
    return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

json to_json(const Matrix4& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

json to_json(const BlochState& b) { return {{"Mz", b.Mz}, {"Mzz", b.Mzz}, {"Mc", b.Mc}}; }

json to_json(const PhaseClassification& c) {
    return {{"phase", to_string(c.phase)},
            {"f", c.f},
            {"alpha_c", number_or_null(c.alpha_c)},
            {"epsilon_loc", c.epsilon_loc}};
}

json to_json(const SymmetryResidual& r) {
    return {{"residual", r.residual},
            {"commutator", r.commutator},
            {"liouvillian_norm", r.liouvillian_norm}};
}

Matrix4 matrix_from_json(const json& j) {
    Matrix4 m;
    if (j.is_array() && j.size() == 4 && j[0].is_array() && j[0].size() == 4) {
        for (int i = 0; i < 4; ++i) {
            if (!j[i].is_array() || j[i].size() != 4)
                throw Error(ErrorCode::invalid_state, "density matrix rows must have 4 entries");
            for (int k = 0; k < 4; ++k) m(i, k) = entry_from_json(j[i][k]);
        }
        return m;
    }
    if (j.is_array() && j.size() == 16) {
        for (int n = 0; n < 16; ++n) m(n / 4, n % 4) = entry_from_json(j[n]);
        return m;
    }
    throw Error(ErrorCode::invalid_state, "expected a 4x4 array (entries real or [re, im]) or 16 flat entries");
}

DensityMatrix density_matrix_from_json(const json& j) {
    return DensityMatrix::from_matrix(matrix_from_json(j));
}

BlochState bloch_from_json(const json& j) {
    try {
        return {j.at("Mz").get<double>(), j.at("Mzz").get<double>(), j.at("Mc").get<double>()};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_state, std::string("malformed BlochState: ") + e.what());
    }
}

}  // namespace unruh
