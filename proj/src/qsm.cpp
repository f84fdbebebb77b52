#include "qpspec/qsm.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

TruncatedSpectrum truncate(const QpCoefficientMap& f, int N) {
  auto out = TruncatedSpectrum::zeros(f.projection(), N);
  for (const auto& [k, a] : f.coeffs()) {
    bool inside = true;
    for (int kj : k)
      if (kj < -N || kj >= N) {
        inside = false;
        break;
      }
    if (inside) out.set(k, a);
  }
  return out;
}

QpCoefficientMap to_coefficient_map(const TruncatedSpectrum& s, double drop_tol) {
  QpCoefficientMap out(s.projection(), drop_tol);
  for (std::size_t i = 0; i < s.size(); ++i) out.set(s.index_of(i), s.data()[i]);
  return out;
}

TruncatedSpectrum convolve(const QpCoefficientMap& v, const TruncatedSpectrum& psi) {
  if (v.projection().embed_dim() != psi.projection().embed_dim())
    throw std::invalid_argument("convolve: embedding dimension mismatch");
  const int N = psi.truncation_order();
  auto out = TruncatedSpectrum::zeros(psi.projection(), N);
  const std::size_t n = static_cast<std::size_t>(psi.projection().embed_dim());
  FrequencyIndex src(n);
  // out[beta] = sum_mu vhat_mu psihat_{beta - mu}; indices leaving the box
  // contribute nothing.
  for (std::size_t b = 0; b < out.size(); ++b) {
    const FrequencyIndex kb = out.index_of(b);
    cplx acc(0.0);
    for (const auto& [mu, vm] : v.coeffs()) {
      bool inside = true;
      for (std::size_t j = 0; j < n; ++j) {
        src[j] = kb[j] - mu[j];
        if (src[j] < -N || src[j] >= N) {
          inside = false;
          break;
        }
      }
      if (inside) acc += vm * psi.data()[psi.slot(src)];
    }
    out.data()[b] = acc;
  }
  return out;
}

double truncation_error(const QpCoefficientMap& f, int N) {
  double tail = 0.0;
  for (const auto& [k, a] : f.coeffs()) {
    for (int kj : k)
      if (kj < -N || kj >= N) {
        tail += std::norm(a);
        break;
      }
  }
  return std::sqrt(tail);
}

DirectConvolver::DirectConvolver(const QpCoefficientMap& v, int N)
    : n_(v.projection().embed_dim()), N_(N) {
  if (N_ < 1) throw std::invalid_argument("DirectConvolver: N < 1");
  const int per = 2 * N_;
  const int tside = 4 * N_ - 1;  // differences span [-(2N-1), 2N-1]
  box_size_ = 1;
  std::size_t tsize = 1;
  for (int a = 0; a < n_; ++a) {
    box_size_ *= static_cast<std::size_t>(per);
    tsize *= static_cast<std::size_t>(tside);
    tdims_.push_back(tside);
  }
  table_.assign(tsize, cplx(0.0));
  for (const auto& [k, a] : v.coeffs()) {
    bool representable = true;
    std::size_t t = 0;
    for (int kj : k) {
      if (kj <= -per || kj >= per) {
        representable = false;  // can never arise as an in-box difference
        break;
      }
      t = t * static_cast<std::size_t>(tside) + static_cast<std::size_t>(kj + per - 1);
    }
    if (representable) table_[t] += a;
  }
  signed_k_.resize(box_size_ * static_cast<std::size_t>(n_));
  for (std::size_t s = 0; s < box_size_; ++s) {
    std::size_t rest = s;
    for (int a = n_ - 1; a >= 0; --a) {
      const int w = static_cast<int>(rest % static_cast<std::size_t>(per));
      signed_k_[s * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a)] = w >= N_ ? w - per : w;
      rest /= static_cast<std::size_t>(per);
    }
  }
}

void DirectConvolver::apply(const cplx* in, cplx* out) const {
  if (in == out) throw std::invalid_argument("DirectConvolver::apply: in-place not supported");
  const int per = 2 * N_;
  const int tside = 4 * N_ - 1;
  if (n_ == 2) {
    // beta loop outside, full box inside; the innermost run walks the table
    // row backwards so the gather stays contiguous.
    for (std::size_t b = 0; b < box_size_; ++b) {
      const int kb1 = signed_k_[b * 2];
      const int kb2 = signed_k_[b * 2 + 1];
      cplx acc(0.0);
      for (int l1 = 0; l1 < per; ++l1) {
        const int kl1 = l1 >= N_ ? l1 - per : l1;
        const cplx* row = table_.data() + static_cast<std::size_t>(kb1 - kl1 + per - 1) * static_cast<std::size_t>(tside);
        const cplx* state = in + static_cast<std::size_t>(l1) * static_cast<std::size_t>(per);
        // slots 0..N-1 carry kl2 = 0..N-1; slots N..2N-1 carry kl2 = -N..-1
        const int base_lo = kb2 + per - 1;          // index for kl2 = 0
        const int base_hi = kb2 + N_ + per - 1;     // index for kl2 = -N
        for (int l2 = 0; l2 < N_; ++l2) acc += row[base_lo - l2] * state[l2];
        for (int l2 = 0; l2 < N_; ++l2) acc += row[base_hi - l2] * state[N_ + l2];
      }
      out[b] = acc;
    }
    return;
  }
  // generic rank
  for (std::size_t b = 0; b < box_size_; ++b) {
    const int* kb = signed_k_.data() + b * static_cast<std::size_t>(n_);
    cplx acc(0.0);
    for (std::size_t l = 0; l < box_size_; ++l) {
      const int* kl = signed_k_.data() + l * static_cast<std::size_t>(n_);
      std::size_t t = 0;
      for (int a = 0; a < n_; ++a)
        t = t * static_cast<std::size_t>(tside) + static_cast<std::size_t>(kb[a] - kl[a] + per - 1);
      acc += table_[t] * in[l];
    }
    out[b] = acc;
  }
}

TruncatedSpectrum DirectConvolver::operator()(const TruncatedSpectrum& psi) const {
  if (psi.truncation_order() != N_ || psi.projection().embed_dim() != n_)
    throw std::invalid_argument("DirectConvolver: spectrum shape mismatch");
  auto out = TruncatedSpectrum::zeros(psi.projection(), N_);
  apply(psi.data().data(), out.data().data());
  return out;
}

}  // namespace qps
