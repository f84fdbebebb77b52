#pragma once

#include <span>
#include <vector>

#include "qpspec/types.hpp"

namespace qps {

// d x n matrix mapping integer indices k in Z^n to physical frequencies
// lambda = P k in R^d. The columns are expected to be rationally
// independent; since that is undecidable in floating point, callers check
// injectivity of k -> P k on the index box they actually use via
// validate_injectivity().
class ProjectionMatrix {
public:
  // entries row-major, d * n values
  ProjectionMatrix(int d, int n, std::vector<double> entries);

  static ProjectionMatrix row(std::vector<double> entries);  // d = 1
  static ProjectionMatrix identity(int d);

  int physical_dim() const { return d_; }
  int embed_dim() const { return n_; }
  double entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  const std::vector<double>& entries() const { return entries_; }

  // lambda = P k
  std::vector<double> frequency(std::span<const int> k) const;
  // d == 1 fast path
  double frequency_scalar(std::span<const int> k) const;

  bool operator==(const ProjectionMatrix&) const = default;

private:
  int d_;
  int n_;
  std::vector<double> entries_;
};

// True iff all pairwise distances ||P k - P k'|| over distinct k, k' in the
// index box -N <= k_j < N exceed tol.
bool validate_injectivity(const ProjectionMatrix& P, int N, double tol = 1e-9);

struct FrequencyBoxEntry {
  FrequencyIndex k;
  std::vector<double> lambda;
};

// All (2N)^n indices of the box in lexicographic order together with their
// frequencies. Throws std::runtime_error when injectivity fails at tol.
std::vector<FrequencyBoxEntry> frequency_box(const ProjectionMatrix& P, int N, double tol = 1e-9);

// Smallest nonzero singular value of P.
double min_singular_value(const ProjectionMatrix& P);

// Torus footprint (P^T x mod 2pi) of the slice x = 0, step, 2 step, ...,
// x_max, in that order. Requires d = 1.
std::vector<std::vector<double>> slice_modulo_points(const ProjectionMatrix& P, double x_max, double step);

}  // namespace qps
