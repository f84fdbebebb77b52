#include "qpspec/json_io.hpp"

#include <stdexcept>

namespace qps {

nlohmann::json to_json(const QpCoefficientMap& f) {
  const auto& P = f.projection();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < P.physical_dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < P.embed_dim(); ++j) row.push_back(P.entry(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json coeffs = nlohmann::json::array();
  // std::map iteration is already lexicographic in k
  for (const auto& [k, a] : f.coeffs()) {
    coeffs.push_back({{"k", k}, {"re", a.real()}, {"im", a.imag()}});
  }
  return {{"P", std::move(rows)}, {"coeffs", std::move(coeffs)}};
}

QpCoefficientMap coefficient_map_from_json(const nlohmann::json& j) {
  const auto& rows = j.at("P");
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("coefficient_map_from_json: bad P");
  const int d = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.at(0).size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("coefficient_map_from_json: ragged P");
    for (const auto& v : row) entries.push_back(v.get<double>());
  }
  QpCoefficientMap out(ProjectionMatrix(d, n, std::move(entries)));
  for (const auto& entry : j.at("coeffs")) {
    FrequencyIndex k = entry.at("k").get<FrequencyIndex>();
    out.add(std::move(k), cplx(entry.at("re").get<double>(), entry.at("im").get<double>()));
  }
  return out;
}

}  // namespace qps
