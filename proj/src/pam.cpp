#include "qpspec/pam.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qps {

std::vector<Convergent> convergents(double alpha, int count) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("convergents: alpha must be positive");
  if (count < 1) throw std::invalid_argument("convergents: count < 1");
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(count));
  // p_i = a_i p_{i-1} + p_{i-2}, seeded with p_{-1}/q_{-1} = 1/0 and
  // p_{-2}/q_{-2} = 0/1.
  long long p1 = 1, q1 = 0;
  long long p2 = 0, q2 = 1;
  double x = alpha;
  const long long cap = std::numeric_limits<long long>::max();
  for (int i = 0; i < count; ++i) {
    const double fl = std::floor(x);
    if (fl > 9.0e17) break;
    const auto a = static_cast<long long>(fl);
    if (a > 0 && (p1 > (cap - p2) / a || q1 > (cap - q2) / std::max<long long>(a, 1))) break;
    const long long p = a * p1 + p2;
    const long long q = a * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    const double frac = x - fl;
    // expansion terminated (alpha rational at double resolution)
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  return out;
}

double diophantine_error(double alpha, long long L) {
  if (L < 1) throw std::invalid_argument("diophantine_error: L < 1");
  const double x = static_cast<double>(L) * alpha;
  return std::abs(x - std::nearbyint(x));  // nearbyint: ties to even
}

PeriodicApproximant::PeriodicApproximant(long long L) : L_(L) {
  if (L_ < 1) throw std::invalid_argument("PeriodicApproximant: L < 1");
}

void PeriodicApproximant::add(long long h, cplx a) {
  auto [it, inserted] = modes_.try_emplace(h, a);
  if (!inserted) {
    it->second += a;
    ++collisions_;
  }
}

cplx PeriodicApproximant::at(long long h) const {
  auto it = modes_.find(h);
  return it == modes_.end() ? cplx(0.0) : it->second;
}

PeriodicApproximant periodize(const QpCoefficientMap& f, long long L) {
  const auto& P = f.projection();
  if (P.physical_dim() != 1) throw std::invalid_argument("periodize: requires d = 1");
  PeriodicApproximant out(L);
  for (const auto& [k, a] : f.coeffs()) {
    const double lambda = P.frequency_scalar(k);
    const double scaled = static_cast<double>(L) * lambda;
    if (std::abs(scaled) > 9.0e17) throw std::runtime_error("periodize: mode index overflows");
    out.add(static_cast<long long>(std::nearbyint(scaled)), a);
  }
  return out;
}

double pam_error_eM(const PeriodicApproximant& numeric, const QpCoefficientMap& reference, long long L, int M) {
  if (numeric.supercell() != L) throw std::invalid_argument("pam_error_eM: supercell mismatch");
  if (M < 1) throw std::invalid_argument("pam_error_eM: M < 1");
  const PeriodicApproximant mapped = periodize(reference, L);
  const long long window = L * static_cast<long long>(M);
  double acc = 0.0;
  auto in_window = [&](long long h) { return h >= -window && h < window; };
  for (const auto& [h, a] : mapped.modes())
    if (in_window(h)) acc += std::norm(a - numeric.at(h));
  for (const auto& [h, a] : numeric.modes())
    if (in_window(h) && mapped.modes().find(h) == mapped.modes().end()) acc += std::norm(a);
  return std::sqrt(acc);
}

}  // namespace qps
