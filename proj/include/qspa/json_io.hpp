#pragma once

#include <string>

#include <json.hpp>

#include "qspa/channels.hpp"
#include "qspa/complex_matrix.hpp"
#include "qspa/states.hpp"

namespace qspa::io {

using nlohmann::json;

/// Matrix wire format used repo-wide:
///   {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major,
/// doubles in shortest round-trip decimal form.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// Density matrices add "kind": "density" to the matrix format.
json density_to_json(const states::DensityMatrix& rho);
states::DensityMatrix density_from_json(const json& j);

/// Maps: {"kind": "kraus"|"choi", "d_in", "d_out", "ops"|"mat"}.
json map_to_json(const channels::HermitianMapSpec& map);
channels::HermitianMapSpec map_from_json(const json& j);

json kraus_to_json(const channels::KrausMap& map);

json spa_result_to_json(const channels::SpaResult& res);

json load_json_file(const std::string& path);
states::DensityMatrix load_state(const std::string& path);
channels::HermitianMapSpec load_map(const std::string& path);

}  // namespace qspa::io
