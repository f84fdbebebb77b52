#include "qpspec/box_mean.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

namespace {

void check_config(const BoxAverageConfig& cfg) {
  if (!(cfg.half_width > 0.0)) throw std::invalid_argument("box_mean: half width T <= 0");
  if (cfg.samples_per_unit < 1) throw std::invalid_argument("box_mean: samples_per_unit < 1");
  if (cfg.offset.empty()) throw std::invalid_argument("box_mean: empty offset (sets the dimension)");
  for (double s : cfg.offset)
    if (!std::isfinite(s)) throw std::invalid_argument("box_mean: non-finite offset");
}

}  // namespace

cplx box_mean(const PointFunction& f, const BoxAverageConfig& cfg) {
  check_config(cfg);
  const int d = static_cast<int>(cfg.offset.size());
  const auto intervals =
      static_cast<std::size_t>(std::ceil(2.0 * cfg.half_width * static_cast<double>(cfg.samples_per_unit)));
  const std::size_t nodes = intervals + 1;
  const double h = 2.0 * cfg.half_width / static_cast<double>(intervals);

  // composite trapezoid over the product grid; endpoint weights 1/2 per axis
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  cplx acc(0.0);
  double wsum = 0.0;
  for (;;) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const std::size_t i = idx[static_cast<std::size_t>(a)];
      x[static_cast<std::size_t>(a)] =
          cfg.offset[static_cast<std::size_t>(a)] - cfg.half_width + static_cast<double>(i) * h;
      if (i == 0 || i == nodes - 1) w *= 0.5;
    }
    const cplx v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::runtime_error("box_mean: non-finite sample");
    acc += w * v;
    wsum += w;
    int axis = d - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] < nodes) break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return acc / wsum;
}

cplx continuous_fourier_bohr(const PointFunction& f, std::span<const double> lambda, const BoxAverageConfig& cfg) {
  if (lambda.size() != cfg.offset.size())
    throw std::invalid_argument("continuous_fourier_bohr: lambda dimension != offset dimension");
  std::vector<double> lam(lambda.begin(), lambda.end());
  return box_mean(
      [&](std::span<const double> x) {
        double phase = 0.0;
        for (std::size_t a = 0; a < lam.size(); ++a) phase += lam[a] * x[a];
        return f(x) * std::polar(1.0, -phase);
      },
      cfg);
}

CoefficientEqualityCheck verify_coefficient_equality(const QpCoefficientMap& f, const FrequencyIndex& k,
                                                     const BoxAverageConfig& cfg) {
  const auto lambda = f.projection().frequency(k);
  const cplx estimate = continuous_fourier_bohr(
      [&](std::span<const double> x) { return evaluate(f, x); }, lambda, cfg);
  const cplx exact = f.at(k);
  return {estimate, exact, std::abs(estimate - exact)};
}

}  // namespace qps
