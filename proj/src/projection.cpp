#include "qpspec/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/SVD>

namespace qps {

ProjectionMatrix::ProjectionMatrix(int d, int n, std::vector<double> entries)
    : d_(d), n_(n), entries_(std::move(entries)) {
  if (d < 1 || n < d) throw std::invalid_argument("ProjectionMatrix: need 1 <= d <= n");
  if (entries_.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(n))
    throw std::invalid_argument("ProjectionMatrix: entry count != d*n");
  for (double e : entries_)
    if (!std::isfinite(e)) throw std::invalid_argument("ProjectionMatrix: non-finite entry");
}

ProjectionMatrix ProjectionMatrix::row(std::vector<double> entries) {
  const int n = static_cast<int>(entries.size());
  return ProjectionMatrix(1, n, std::move(entries));
}

ProjectionMatrix ProjectionMatrix::identity(int d) {
  std::vector<double> e(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i) * d + i] = 1.0;
  return ProjectionMatrix(d, d, std::move(e));
}

std::vector<double> ProjectionMatrix::frequency(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != n_) throw std::invalid_argument("frequency: index length != n");
  std::vector<double> lambda(static_cast<std::size_t>(d_), 0.0);
  for (int i = 0; i < d_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) acc += entry(i, j) * k[static_cast<std::size_t>(j)];
    lambda[static_cast<std::size_t>(i)] = acc;
  }
  return lambda;
}

double ProjectionMatrix::frequency_scalar(std::span<const int> k) const {
  if (d_ != 1) throw std::invalid_argument("frequency_scalar: d != 1");
  if (static_cast<int>(k.size()) != n_) throw std::invalid_argument("frequency_scalar: index length != n");
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += entries_[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
  return acc;
}

namespace {

// Enumerates the box lexicographically, invoking fn(k).
template <typename Fn>
void for_each_box_index(int n, int N, Fn&& fn) {
  FrequencyIndex k(static_cast<std::size_t>(n), -N);
  for (;;) {
    fn(k);
    int axis = n - 1;
    while (axis >= 0) {
      if (++k[static_cast<std::size_t>(axis)] < N) break;
      k[static_cast<std::size_t>(axis)] = -N;
      --axis;
    }
    if (axis < 0) break;
  }
}

std::size_t box_size(int n, int N) {
  std::size_t s = 1;
  for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(2 * N);
  return s;
}

// Exact all-pairs tolerance check via a cell hash: points closer than tol
// must fall in the same or an adjacent cell.
bool all_pairs_separated(const std::vector<std::vector<double>>& pts, int d, double tol) {
  struct CellHash {
    std::size_t operator()(const std::vector<long long>& c) const {
      std::size_t h = 1469598103934665603ull;
      for (long long v : c) {
        h ^= static_cast<std::size_t>(v);
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_map<std::vector<long long>, std::vector<std::size_t>, CellHash> cells;
  cells.reserve(pts.size() * 2);
  const double inv = 1.0 / tol;
  std::vector<long long> cell(static_cast<std::size_t>(d));
  std::vector<long long> probe(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int a = 0; a < d; ++a)
      cell[static_cast<std::size_t>(a)] = static_cast<long long>(std::floor(pts[i][static_cast<std::size_t>(a)] * inv));
    // visit all 3^d neighbouring cells
    std::vector<int> off(static_cast<std::size_t>(d), -1);
    for (;;) {
      for (int a = 0; a < d; ++a) probe[static_cast<std::size_t>(a)] = cell[static_cast<std::size_t>(a)] + off[static_cast<std::size_t>(a)];
      auto it = cells.find(probe);
      if (it != cells.end()) {
        for (std::size_t j : it->second) {
          double dist2 = 0.0;
          for (int a = 0; a < d; ++a) {
            const double diff = pts[i][static_cast<std::size_t>(a)] - pts[j][static_cast<std::size_t>(a)];
            dist2 += diff * diff;
          }
          if (dist2 <= tol * tol) return false;
        }
      }
      int axis = d - 1;
      while (axis >= 0) {
        if (++off[static_cast<std::size_t>(axis)] <= 1) break;
        off[static_cast<std::size_t>(axis)] = -1;
        --axis;
      }
      if (axis < 0) break;
    }
    cells[cell].push_back(i);
  }
  return true;
}

}  // namespace

bool validate_injectivity(const ProjectionMatrix& P, int N, double tol) {
  if (N < 1) throw std::invalid_argument("validate_injectivity: N < 1");
  if (!(tol > 0.0)) throw std::invalid_argument("validate_injectivity: tol <= 0");
  const int d = P.physical_dim();
  if (d == 1) {
    // sorted scalar frequencies; adjacent gaps decide
    std::vector<double> freqs;
    freqs.reserve(box_size(P.embed_dim(), N));
    for_each_box_index(P.embed_dim(), N, [&](const FrequencyIndex& k) { freqs.push_back(P.frequency_scalar(k)); });
    std::sort(freqs.begin(), freqs.end());
    for (std::size_t i = 1; i < freqs.size(); ++i)
      if (freqs[i] - freqs[i - 1] <= tol) return false;
    return true;
  }
  std::vector<std::vector<double>> pts;
  pts.reserve(box_size(P.embed_dim(), N));
  for_each_box_index(P.embed_dim(), N, [&](const FrequencyIndex& k) { pts.push_back(P.frequency(k)); });
  return all_pairs_separated(pts, d, tol);
}

std::vector<FrequencyBoxEntry> frequency_box(const ProjectionMatrix& P, int N, double tol) {
  if (!validate_injectivity(P, N, tol))
    throw std::runtime_error("frequency_box: index -> frequency map is not injective on the box");
  std::vector<FrequencyBoxEntry> out;
  out.reserve(box_size(P.embed_dim(), N));
  for_each_box_index(P.embed_dim(), N, [&](const FrequencyIndex& k) { out.push_back({k, P.frequency(k)}); });
  return out;
}

double min_singular_value(const ProjectionMatrix& P) {
  const int d = P.physical_dim();
  const int n = P.embed_dim();
  Eigen::MatrixXd m(d, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = P.entry(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double scale = sv.size() > 0 ? sv(0) : 0.0;
  double smallest = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-14 * scale && sv(i) > 0.0) smallest = sv(i);
  return smallest;  // singular values are sorted descending; last nonzero wins
}

std::vector<std::vector<double>> slice_modulo_points(const ProjectionMatrix& P, double x_max, double step) {
  if (P.physical_dim() != 1) throw std::invalid_argument("slice_modulo_points: d != 1");
  if (!(x_max > 0.0)) throw std::invalid_argument("slice_modulo_points: x_max <= 0");
  if (!(step > 0.0)) throw std::invalid_argument("slice_modulo_points: step <= 0");
  const int n = P.embed_dim();
  std::vector<std::vector<double>> out;
  const auto count = static_cast<std::size_t>(std::floor(x_max / step + 1e-12)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = static_cast<double>(i) * step;
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      double v = std::fmod(P.entry(0, j) * x, two_pi);
      if (v < 0.0) v += two_pi;
      z[static_cast<std::size_t>(j)] = v;
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace qps
