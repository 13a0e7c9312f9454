#pragma once

#include <string>

#include "toeprank/pattern.hpp"

namespace toeprank {

/// Parses the pattern document
///   { "rows": ["r1", ...], "cols": ["c1", ...],
///     "coefficients": [ { "index": 0, "nonzeros": [["r1","c1"], ...] }, ... ] }
/// Indices must be distinct nonnegative integers; nonzeros reference declared
/// labels and may not repeat within a coefficient. `origin` names the source
/// in diagnostics. Malformed input raises ValidationError.
LaurentPattern parse_pattern_text(const std::string& text,
                                  const std::string& origin = "<memory>");

LaurentPattern load_pattern_file(const std::string& path);

/// Canonical serialization: coefficients in ascending index order, nonzeros
/// sorted by declared label positions. parse(serialize(h)) reproduces h.
std::string pattern_to_json_text(const LaurentPattern& h);

} // namespace toeprank
