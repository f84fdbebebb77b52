#pragma once

#include <functional>

#include "qpspec/coefficient_map.hpp"

namespace qps {

// Cube-average quadrature setup: average over s + K_T with a uniform
// composite trapezoid rule, samples_per_unit intervals per unit length.
// The density should resolve the fastest oscillation present (>= 2 x the
// largest frequency magnitude of interest).
struct BoxAverageConfig {
  double half_width = 1.0;      // T
  std::vector<double> offset;   // s, one entry per physical dimension
  int samples_per_unit = 8;
};

using PointFunction = std::function<cplx(std::span<const double>)>;

// Trapezoid average of f over the cube s + K_T. Deterministic for a fixed
// config; throws on non-finite samples.
cplx box_mean(const PointFunction& f, const BoxAverageConfig& cfg);

// Box mean of x -> f(x) exp(-i lambda^T x); tends to the coefficient at
// lambda as T grows, at rate O(1/T) for trigonometric sums.
cplx continuous_fourier_bohr(const PointFunction& f, std::span<const double> lambda, const BoxAverageConfig& cfg);

struct CoefficientEqualityCheck {
  cplx box_estimate;  // continuous Fourier-Bohr estimate at lambda = P k
  cplx exact;         // parent coefficient stored in the map
  double gap;         // |box_estimate - exact|
};

// Compares the quadrature estimate of the coefficient at lambda = P k with
// the exact parent coefficient read from the map.
CoefficientEqualityCheck verify_coefficient_equality(const QpCoefficientMap& f, const FrequencyIndex& k,
                                                     const BoxAverageConfig& cfg);

}  // namespace qps
