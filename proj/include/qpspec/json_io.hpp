#pragma once

#include <string>

#include "json.hpp"
#include "qpspec/coefficient_map.hpp"

namespace qps {

// {"P": [[...]], "coeffs": [{"k": [...], "re": r, "im": i}, ...]} with the
// indices sorted lexicographically.
nlohmann::json to_json(const QpCoefficientMap& f);
QpCoefficientMap coefficient_map_from_json(const nlohmann::json& j);

}  // namespace qps
