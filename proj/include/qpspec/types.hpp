#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace qps {

using cplx = std::complex<double>;

// Integer index k in Z^n; the physical frequency is always derived as P k.
using FrequencyIndex = std::vector<int>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace qps
