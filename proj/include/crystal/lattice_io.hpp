#pragma once

#include <string>

#include <json.hpp>

#include "crystal/lattice.hpp"

namespace crystal {

/// Reads a realization from the JSON lattice config format (comments allowed):
///
///   {
///     "vertices": ["x", "y"],
///     "dim": 2,
///     "edges": [ {"name": "e1", "origin": "x", "terminus": "y",
///                 "inverse": "e1~", "voltage": [0, 0]}, ... ],
///     "offsets": {"x": [0, 0], "y": ["1/3", "2/3"]},
///     "basis": [[1, 0], [0, 1]]
///   }
///
/// Every oriented edge is listed, including inverses. "basis" lists the
/// images of the generators (the matrix columns) and defaults to the
/// identity. Real entries may be numbers or strings "p/q".
PeriodicRealization realization_from_json(const nlohmann::json& doc);
PeriodicRealization realization_from_file(const std::string& path);
nlohmann::json realization_to_json(const PeriodicRealization& real);

/// Parses a JSON document that may contain // and /* */ comments.
nlohmann::json parse_config_text(const std::string& text);
nlohmann::json load_config_file(const std::string& path);

/// Number or "p/q" / decimal string.
double parse_real(const nlohmann::json& value);
RealVector parse_real_vector(const nlohmann::json& value);

}  // namespace crystal
