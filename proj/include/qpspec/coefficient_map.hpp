#pragma once

#include <map>
#include <span>

#include "qpspec/projection.hpp"

namespace qps {

// Finite-support Fourier data of a quasiperiodic function, keyed by the
// integer index k. The same numbers are simultaneously the coefficients of
// the n-dimensional periodic parent function, so a single map serves both
// readings.
//
// Entries with |a| <= drop_tol are not stored; the default 0 keeps every
// explicitly set value.
class QpCoefficientMap {
public:
  explicit QpCoefficientMap(ProjectionMatrix P, double drop_tol = 0.0);

  void set(FrequencyIndex k, cplx a);
  void add(FrequencyIndex k, cplx a);
  cplx at(const FrequencyIndex& k) const;  // zero when absent

  const std::map<FrequencyIndex, cplx>& coeffs() const { return coeffs_; }
  const ProjectionMatrix& projection() const { return P_; }
  double drop_tolerance() const { return drop_tol_; }
  std::size_t support_size() const { return coeffs_.size(); }

private:
  void check_index(const FrequencyIndex& k) const;

  ProjectionMatrix P_;
  double drop_tol_;
  std::map<FrequencyIndex, cplx> coeffs_;
};

// Finite sum  sum_k f_k exp(i (P k)^T x).
cplx evaluate(const QpCoefficientMap& f, std::span<const double> x);

// Batch evaluation. Builds one phase table per embedding axis and point, so
// the cost is O(|support| n) per point instead of O(|support| n) exponentials.
std::vector<cplx> evaluate_many(const QpCoefficientMap& f, const std::vector<std::vector<double>>& points);

double parseval_l2_norm(const QpCoefficientMap& f);

// |f|_alpha with the l1 frequency magnitude |lambda| = sum_j |lambda_j|.
// The square in |lambda|^{2 alpha} applies to the l1 magnitude.
double sobolev_seminorm(const QpCoefficientMap& f, double alpha);

// Parent-side seminorm, ||k||_2 on the integer indices.
double parent_seminorm(const QpCoefficientMap& f, double alpha);

}  // namespace qps
