#pragma once

#include "qpspec/pm.hpp"

namespace qps {

// Dense spectrum over the index box; same storage contract as the discrete
// Fourier-Bohr coefficients, zeros stored.
using TruncatedSpectrum = DiscreteCoefficients;

// P_N f: restriction of the coefficients to the box, dropped modes
// discarded.
TruncatedSpectrum truncate(const QpCoefficientMap& f, int N);

QpCoefficientMap to_coefficient_map(const TruncatedSpectrum& s, double drop_tol = 0.0);

// out[beta] = sum_{lambda in box} vhat_{k_beta - k_lambda} psihat_lambda,
// with vhat looked up by integer index difference (valid because k -> P k is
// injective on the box). Iterates over the support of v: O(D |support(v)|).
TruncatedSpectrum convolve(const QpCoefficientMap& v, const TruncatedSpectrum& psi);

// Parseval norm of f - P_N f (exact tail mass).
double truncation_error(const QpCoefficientMap& f, int N);

// Direct reciprocal-space convolution kernel. The inner sum runs over the
// whole box, so one application costs O(D^2) irrespective of the sparsity
// of v; this is the cost model the QSM timing comparison is built on.
class DirectConvolver {
public:
  DirectConvolver(const QpCoefficientMap& v, int N);

  // in/out are box-slot arrays of length (2N)^n; in == out is not allowed.
  void apply(const cplx* in, cplx* out) const;
  TruncatedSpectrum operator()(const TruncatedSpectrum& psi) const;

  int truncation_order() const { return N_; }
  std::size_t box_size() const { return box_size_; }

private:
  int n_;
  int N_;
  std::size_t box_size_;
  std::vector<int> signed_k_;   // box_size_ * n, signed index per slot
  std::vector<cplx> table_;     // dense vhat over the difference range
  std::vector<int> tdims_;      // (4N - 1) per axis
};

}  // namespace qps
