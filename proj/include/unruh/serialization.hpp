// serialization.hpp: JSON forms of states and results.
//
// Density matrix: row-major nested array, each entry a [re, im] pair.
// BlochState: {"Mz": .., "Mzz": .., "Mc": ..}.

#pragma once

#include <nlohmann/json.hpp>

#include "unruh/symmetry.hpp"

namespace unruh {

nlohmann::json to_json(const Matrix4& m);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const BlochState& b);
nlohmann::json to_json(const PhaseClassification& c);
nlohmann::json to_json(const SymmetryResidual& r);

/// Accepts the nested 4x4 form or a flat list of 16 pairs (row-major).
/// Throws Error(invalid_state) on malformed input.
Matrix4 matrix_from_json(const nlohmann::json& j);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);
BlochState bloch_from_json(const nlohmann::json& j);

}  // namespace unruh
