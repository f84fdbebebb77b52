#include "qpspec/coefficient_map.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

QpCoefficientMap::QpCoefficientMap(ProjectionMatrix P, double drop_tol)
    : P_(std::move(P)), drop_tol_(drop_tol) {
  if (drop_tol_ < 0.0) throw std::invalid_argument("QpCoefficientMap: drop tolerance < 0");
}

void QpCoefficientMap::check_index(const FrequencyIndex& k) const {
  if (static_cast<int>(k.size()) != P_.embed_dim())
    throw std::invalid_argument("QpCoefficientMap: index length != n");
}

void QpCoefficientMap::set(FrequencyIndex k, cplx a) {
  check_index(k);
  if (std::abs(a) <= drop_tol_)
    coeffs_.erase(k);
  else
    coeffs_[std::move(k)] = a;
}

void QpCoefficientMap::add(FrequencyIndex k, cplx a) {
  check_index(k);
  auto it = coeffs_.find(k);
  const cplx next = (it == coeffs_.end() ? a : it->second + a);
  if (std::abs(next) <= drop_tol_) {
    if (it != coeffs_.end()) coeffs_.erase(it);
  } else if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(k), next);
  } else {
    it->second = next;
  }
}

cplx QpCoefficientMap::at(const FrequencyIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

cplx evaluate(const QpCoefficientMap& f, std::span<const double> x) {
  const auto& P = f.projection();
  if (static_cast<int>(x.size()) != P.physical_dim())
    throw std::invalid_argument("evaluate: point dimension != d");
  cplx acc(0.0);
  for (const auto& [k, a] : f.coeffs()) {
    double phase = 0.0;
    for (int j = 0; j < P.embed_dim(); ++j) {
      double col = 0.0;
      for (int i = 0; i < P.physical_dim(); ++i) col += P.entry(i, j) * x[static_cast<std::size_t>(i)];
      phase += col * k[static_cast<std::size_t>(j)];
    }
    acc += a * std::polar(1.0, phase);
  }
  return acc;
}

std::vector<cplx> evaluate_many(const QpCoefficientMap& f, const std::vector<std::vector<double>>& points) {
  const auto& P = f.projection();
  const int n = P.embed_dim();
  const int d = P.physical_dim();

  // per-axis index ranges of the support
  std::vector<int> kmin(static_cast<std::size_t>(n), 0), kmax(static_cast<std::size_t>(n), 0);
  bool first = true;
  for (const auto& [k, a] : f.coeffs()) {
    (void)a;
    for (int j = 0; j < n; ++j) {
      const int kj = k[static_cast<std::size_t>(j)];
      if (first || kj < kmin[static_cast<std::size_t>(j)]) kmin[static_cast<std::size_t>(j)] = kj;
      if (first || kj > kmax[static_cast<std::size_t>(j)]) kmax[static_cast<std::size_t>(j)] = kj;
    }
    first = false;
  }

  // flatten the support once
  struct Entry {
    std::vector<int> off;  // k_j - kmin_j per axis
    cplx a;
  };
  std::vector<Entry> entries;
  entries.reserve(f.support_size());
  for (const auto& [k, a] : f.coeffs()) {
    Entry e;
    e.off.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      e.off[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j)] - kmin[static_cast<std::size_t>(j)];
    e.a = a;
    entries.push_back(std::move(e));
  }

  std::vector<std::vector<cplx>> axis_phases(static_cast<std::size_t>(n));
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("evaluate_many: point dimension != d");
    for (int j = 0; j < n; ++j) {
      double theta = 0.0;
      for (int i = 0; i < d; ++i) theta += P.entry(i, j) * x[static_cast<std::size_t>(i)];
      auto& table = axis_phases[static_cast<std::size_t>(j)];
      const int len = kmax[static_cast<std::size_t>(j)] - kmin[static_cast<std::size_t>(j)] + 1;
      table.resize(static_cast<std::size_t>(len));
      for (int t = 0; t < len; ++t)
        table[static_cast<std::size_t>(t)] = std::polar(1.0, (kmin[static_cast<std::size_t>(j)] + t) * theta);
    }
    cplx acc(0.0);
    for (const auto& e : entries) {
      cplx w = e.a;
      for (int j = 0; j < n; ++j)
        w *= axis_phases[static_cast<std::size_t>(j)][static_cast<std::size_t>(e.off[static_cast<std::size_t>(j)])];
      acc += w;
    }
    out.push_back(acc);
  }
  return out;
}

double parseval_l2_norm(const QpCoefficientMap& f) {
  double s = 0.0;
  for (const auto& [k, a] : f.coeffs()) {
    (void)k;
    s += std::norm(a);
  }
  return std::sqrt(s);
}

double sobolev_seminorm(const QpCoefficientMap& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("sobolev_seminorm: alpha < 0");
  const auto& P = f.projection();
  double s = 0.0;
  for (const auto& [k, a] : f.coeffs()) {
    const auto lambda = P.frequency(k);
    double mag = 0.0;
    for (double v : lambda) mag += std::abs(v);
    if (mag == 0.0) continue;
    s += std::pow(mag, 2.0 * alpha) * std::norm(a);
  }
  return std::sqrt(s);
}

double parent_seminorm(const QpCoefficientMap& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("parent_seminorm: alpha < 0");
  double s = 0.0;
  for (const auto& [k, a] : f.coeffs()) {
    double k2 = 0.0;
    for (int kj : k) k2 += static_cast<double>(kj) * static_cast<double>(kj);
    if (k2 == 0.0) continue;
    s += std::pow(k2, alpha) * std::norm(a);
  }
  return std::sqrt(s);
}

}  // namespace qps
