#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"
#include "qpspec/box_mean.hpp"
#include "qpspec/coefficient_map.hpp"
#include "qpspec/json_io.hpp"
#include "qpspec/projection.hpp"
#include "test_util.hpp"

using namespace qps;
using qps::test::random_map;
using qps::test::rng;

namespace {
const double pi = std::numbers::pi;
const double s5 = std::sqrt(5.0);
const double s3 = std::sqrt(3.0);

ProjectionMatrix p15() { return ProjectionMatrix::row({1.0, s5}); }
}  // namespace

TEST_CASE("validate_injectivity on irrational, rational and integer matrices") {
  CHECK(validate_injectivity(p15(), 4, 1e-9));
  // brute-force oracle over all 64 x 64 pairs
  {
    std::vector<double> freqs;
    for (int a = -4; a < 4; ++a)
      for (int b = -4; b < 4; ++b) freqs.push_back(a + b * s5);
    bool separated = true;
    for (std::size_t i = 0; i < freqs.size(); ++i)
      for (std::size_t j = i + 1; j < freqs.size(); ++j)
        if (std::abs(freqs[i] - freqs[j]) <= 1e-9) separated = false;
    CHECK(separated);
  }
  CHECK_FALSE(validate_injectivity(ProjectionMatrix::row({1.0, 1.0}), 1, 1e-9));
  CHECK(validate_injectivity(ProjectionMatrix::identity(2), 8, 1e-9));
  CHECK_THROWS_AS(validate_injectivity(p15(), 0, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(validate_injectivity(p15(), 2, 0.0), std::invalid_argument);
}

TEST_CASE("frequency_box enumerates the half-open box lexicographically") {
  const auto box = frequency_box(p15(), 1);
  REQUIRE(box.size() == 4);
  CHECK(box[0].k == FrequencyIndex{-1, -1});
  CHECK(box[1].k == FrequencyIndex{-1, 0});
  CHECK(box[2].k == FrequencyIndex{0, -1});
  CHECK(box[3].k == FrequencyIndex{0, 0});
  CHECK(box[0].lambda[0] == doctest::Approx(-1.0 - s5).epsilon(1e-14));
  CHECK(box[1].lambda[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(box[2].lambda[0] == doctest::Approx(-s5).epsilon(1e-14));
  CHECK(box[3].lambda[0] == doctest::Approx(0.0));

  CHECK(frequency_box(p15(), 2).size() == 16);

  const auto b3 = frequency_box(ProjectionMatrix::row({1.0, s3}), 1);
  std::multiset<double> got;
  for (const auto& e : b3) got.insert(e.lambda[0]);
  const std::vector<double> expect{-1.0 - s3, -s3, -1.0, 0.0};
  for (double v : expect) CHECK(got.count(v) == 1);

  CHECK_THROWS_AS(frequency_box(ProjectionMatrix::row({1.0, 1.0}), 1), std::runtime_error);
}

TEST_CASE("evaluate: constants, zero point, frozen two-mode value") {
  QpCoefficientMap constant(p15());
  constant.set({0, 0}, cplx(2.5, -1.0));
  const std::vector<double> x{0.7};
  CHECK(evaluate(constant, x) == cplx(2.5, -1.0));

  auto f = random_map(p15(), 5, 12);
  cplx total(0.0);
  for (const auto& [k, a] : f.coeffs()) total += a;
  const std::vector<double> zero{0.0};
  CHECK(std::abs(evaluate(f, zero) - total) < 1e-13);

  QpCoefficientMap two(p15());
  two.set({1, 0}, cplx(1.0));
  two.set({0, 1}, cplx(1.0));
  const std::vector<double> xp{pi};
  const cplx got = evaluate(two, xp);
  // independent scalar oracle: e^{i pi} + e^{i pi sqrt5}
  const cplx oracle = std::exp(cplx(0.0, pi)) + std::exp(cplx(0.0, pi * s5));
  CHECK(std::abs(got - oracle) < 1e-13);
  CHECK(got.real() == doctest::Approx(-0.2626311219216801).epsilon(1e-12));
  CHECK(got.imag() == doctest::Approx(0.67549029426152364).epsilon(1e-12));
}

TEST_CASE("evaluate linearity and evaluate_many consistency") {
  const auto f = random_map(p15(), 6, 10);
  const auto g = random_map(p15(), 6, 10);
  const cplx a(0.3, -1.2), b(-0.8, 0.45);
  QpCoefficientMap combo(p15());
  for (const auto& [k, v] : f.coeffs()) combo.add(k, a * v);
  for (const auto& [k, v] : g.coeffs()) combo.add(k, b * v);

  std::uniform_real_distribution<double> xs(-30.0, 30.0);
  std::vector<std::vector<double>> pts;
  for (int t = 0; t < 25; ++t) pts.push_back({xs(rng())});
  const auto many = evaluate_many(f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx lin = a * evaluate(f, pts[i]) + b * evaluate(g, pts[i]);
    CHECK(std::abs(evaluate(combo, pts[i]) - lin) < 1e-12);
    CHECK(std::abs(many[i] - evaluate(f, pts[i])) < 1e-12);
  }
}

TEST_CASE("box_mean: constants, oscillation decay, orthonormality") {
  BoxAverageConfig cfg{10.0, {0.0}, 8};
  const cplx one = box_mean([](std::span<const double>) { return cplx(1.0); }, cfg);
  CHECK(std::abs(one - cplx(1.0)) < 1e-14);

  BoxAverageConfig cfg2{3.0, {0.25, -0.5}, 6};
  const cplx one2 = box_mean([](std::span<const double>) { return cplx(1.0); }, cfg2);
  CHECK(std::abs(one2 - cplx(1.0)) < 1e-14);

  BoxAverageConfig wide{100.0, {0.0}, 16};
  const cplx osc = box_mean([](std::span<const double> x) { return std::exp(cplx(0.0, x[0])); }, wide);
  CHECK(std::abs(osc) <= 0.02);
  // exact integral sin(100)/100; trapezoid at h = 1/16 stays within ~1e-3
  CHECK(std::abs(osc - cplx(-0.0050636564110975879, 0.0)) < 1e-3);

  const cplx unit = box_mean(
      [](std::span<const double> x) { return std::exp(cplx(0.0, x[0])) * std::exp(cplx(0.0, -x[0])); }, wide);
  CHECK(std::abs(unit - cplx(1.0)) < 1e-14);

  CHECK_THROWS_AS(box_mean([](std::span<const double>) { return cplx(1.0); }, BoxAverageConfig{-1.0, {0.0}, 8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      box_mean([](std::span<const double>) { return cplx(std::numeric_limits<double>::infinity(), 0.0); }, cfg),
      std::runtime_error);
}

TEST_CASE("continuous_fourier_bohr: orthonormality and the four-mode potential") {
  BoxAverageConfig cfg{50.0, {0.0}, 8};
  const double lam0 = 1.0;
  auto mode = [&](std::span<const double> x) { return std::exp(cplx(0.0, lam0 * x[0])); };
  const std::vector<double> at0{lam0};
  CHECK(std::abs(continuous_fourier_bohr(mode, at0, cfg) - cplx(1.0)) < 1e-12);
  const std::vector<double> away{3.0};
  CHECK(std::abs(continuous_fourier_bohr(mode, away, cfg)) < 0.03);

  // four unit modes at +-1, +-sqrt5; estimate the sqrt5 coefficient
  QpCoefficientMap v(p15());
  v.set({1, 0}, cplx(1.0));
  v.set({-1, 0}, cplx(1.0));
  v.set({0, 1}, cplx(1.0));
  v.set({0, -1}, cplx(1.0));
  BoxAverageConfig big{1e4, {0.0}, 7};
  const std::vector<double> lam{s5};
  const cplx est = continuous_fourier_bohr([&](std::span<const double> x) { return evaluate(v, x); }, lam, big);
  CHECK(std::abs(est - cplx(1.0)) < 1e-2);
}

TEST_CASE("orthonormality gap is bounded by C/T on a doubling ladder") {
  const double lam0 = 1.0;
  auto mode = [&](std::span<const double> x) { return std::exp(cplx(0.0, lam0 * x[0])); };
  const std::vector<double> away{lam0 - 1.7};
  // envelope over a short T window so the oscillating sinc cannot hide a peak
  auto envelope = [&](double T) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      BoxAverageConfig cfg{T * (1.0 + 0.02 * i), {0.0}, 8};
      worst = std::max(worst, std::abs(continuous_fourier_bohr(mode, away, cfg)));
    }
    return worst;
  };
  const double T0 = 40.0;
  const double C = envelope(T0) * T0;
  CHECK(C > 0.0);
  for (int j = 1; j <= 3; ++j) {
    const double T = T0 * std::pow(2.0, j);
    CHECK(envelope(T) <= 1.3 * C / T);
  }
}

TEST_CASE("parseval_l2_norm: empty, 3-4-5, default initial data") {
  QpCoefficientMap empty(p15());
  CHECK(parseval_l2_norm(empty) == 0.0);

  QpCoefficientMap pyth(p15());
  pyth.set({1, 0}, cplx(3.0));
  pyth.set({0, 1}, cplx(0.0, 4.0));
  CHECK(parseval_l2_norm(pyth) == doctest::Approx(5.0).epsilon(1e-15));

  QpCoefficientMap psi0(p15());
  double oracle = 0.0;  // independent direct summation
  for (int m = -32; m <= 31; ++m)
    for (int n = -32; n <= 31; ++n) {
      const double c = std::exp(-(std::abs(m) + std::abs(n)));
      psi0.set({m, n}, cplx(c));
      oracle += c * c;
    }
  oracle = std::sqrt(oracle);
  CHECK(parseval_l2_norm(psi0) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(parseval_l2_norm(psi0) == doctest::Approx(1.3130352854993313).epsilon(1e-12));
}

TEST_CASE("Parseval identity matches the box mean of |f|^2 at O(1/T)") {
  QpCoefficientMap f(p15());
  f.set({1, 0}, cplx(0.8, 0.1));
  f.set({0, 1}, cplx(-0.3, 0.4));
  f.set({-2, 1}, cplx(0.15, -0.25));
  double exact = 0.0;
  for (const auto& [k, a] : f.coeffs()) exact += std::norm(a);
  BoxAverageConfig cfg{400.0, {0.0}, 10};
  const cplx mean = box_mean([&](std::span<const double> x) {
    const cplx v = evaluate(f, x);
    return cplx(std::norm(v), 0.0);
  }, cfg);
  CHECK(std::abs(mean.real() - exact) < 4.0 / cfg.half_width);
}

TEST_CASE("seminorms: l1 frequency magnitude vs parent index norm") {
  QpCoefficientMap constant(p15());
  constant.set({0, 0}, cplx(7.0));
  CHECK(sobolev_seminorm(constant, 1.5) == 0.0);

  QpCoefficientMap unit(p15());
  unit.set({1, 0}, cplx(1.0));
  CHECK(sobolev_seminorm(unit, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  QpCoefficientMap f(p15());
  f.set({1, 1}, cplx(2.0));
  // parent route: ||k||_2^{2 alpha} |a|^2 = 4 * 4 = 16, seminorm sqrt
  CHECK(parent_seminorm(f, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  // quasiperiodic route uses |lambda| = 1 + sqrt5
  const double lam = 1.0 + s5;
  CHECK(sobolev_seminorm(f, 2.0) == doctest::Approx(lam * lam * 2.0).epsilon(1e-13));
}

TEST_CASE("min_singular_value") {
  CHECK(min_singular_value(ProjectionMatrix(1, 1, {3.0})) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(min_singular_value(p15()) == doctest::Approx(2.4494897427831781).epsilon(1e-14));
  CHECK(min_singular_value(ProjectionMatrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-14));
  // rank-deficient: smallest *nonzero* singular value
  CHECK(min_singular_value(ProjectionMatrix(2, 2, {1.0, 1.0, 1.0, 1.0})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("slice_modulo_points: frozen values and ordering") {
  const auto pts3 = slice_modulo_points(ProjectionMatrix::row({1.0, s3}), 2.0 * pi, 2.0 * pi);
  REQUIRE(pts3.size() == 2);
  CHECK(pts3[0][0] == doctest::Approx(0.0));
  CHECK(pts3[0][1] == doctest::Approx(0.0));
  CHECK(pts3[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pts3[1][1] == doctest::Approx(4.5996108782257206).epsilon(1e-12));

  const auto pts5 = slice_modulo_points(p15(), pi, pi);
  REQUIRE(pts5.size() == 2);
  CHECK(pts5[1][0] == doctest::Approx(pi).epsilon(1e-14));
  CHECK(pts5[1][1] == doctest::Approx(0.74162942386113992).epsilon(1e-12));

  CHECK_THROWS_AS(slice_modulo_points(p15(), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(slice_modulo_points(p15(), -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("slice covering radius shrinks as the slice grows") {
  const ProjectionMatrix P = ProjectionMatrix::row({1.0, s3});
  auto covering_radius = [&](double x_max) {
    const auto pts = slice_modulo_points(P, x_max, 0.37);
    const int G = 40;
    double worst = 0.0;
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) {
        const double u = (a + 0.5) * two_pi / G;
        const double v = (b + 0.5) * two_pi / G;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) {
          double du = std::abs(p[0] - u);
          double dv = std::abs(p[1] - v);
          du = std::min(du, two_pi - du);
          dv = std::min(dv, two_pi - dv);
          best = std::min(best, du * du + dv * dv);
        }
        worst = std::max(worst, best);
      }
    return std::sqrt(worst);
  };
  const std::vector<double> ladder{40.0, 80.0, 160.0, 320.0};
  std::vector<double> radii;
  for (double x : ladder) radii.push_back(covering_radius(x));
  for (std::size_t i = 1; i < radii.size(); ++i) CHECK(radii[i] <= radii[i - 1] + 1e-12);
  CHECK(radii.back() < radii.front());
}

TEST_CASE("verify_coefficient_equality: single modes and the potential ladder") {
  // single mode queried at itself: integrand is constant, gap is roundoff
  QpCoefficientMap single(p15());
  single.set({1, 0}, cplx(0.6, 0.2));
  BoxAverageConfig cfg{100.0, {0.0}, 8};
  CHECK(verify_coefficient_equality(single, {1, 0}, cfg).gap < 1e-13);
  // queried away from the mode the estimate decays like 1/(|dlambda| T)
  const auto miss = verify_coefficient_equality(single, {0, 1}, cfg);
  CHECK(miss.exact == cplx(0.0));
  CHECK(std::abs(miss.box_estimate) < 0.02);

  QpCoefficientMap v(p15());
  v.set({1, 0}, cplx(1.0));
  v.set({-1, 0}, cplx(1.0));
  v.set({0, 1}, cplx(1.0));
  v.set({0, -1}, cplx(1.0));
  // rms of the raw gap over a probe window; the plain gap oscillates with
  // sin(a T) and has no pointwise rate
  auto rms_gap = [&](double T) {
    double acc = 0.0;
    const int probes = 48;
    for (int i = 0; i < probes; ++i) {
      BoxAverageConfig c{T * (1.0 + 0.2 * i / probes), {0.0}, 8};
      const double g = verify_coefficient_equality(v, {1, 0}, c).gap;
      acc += g * g;
    }
    return std::sqrt(acc / probes);
  };
  std::vector<double> gaps;
  for (double T : {100.0, 200.0, 400.0, 800.0}) gaps.push_back(rms_gap(T));
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const double ratio = gaps[i] / gaps[i - 1];
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
  }
  // decade check: T=100 -> T=1000 shrinks the gap by roughly 1/10
  CHECK(rms_gap(1000.0) < 0.3 * gaps.front());
}

TEST_CASE("coefficient map drop tolerance and JSON round trip") {
  QpCoefficientMap f(p15(), 1e-3);
  f.set({1, 0}, cplx(1e-4));
  CHECK(f.support_size() == 0);
  f.set({1, 0}, cplx(0.5));
  f.add({1, 0}, cplx(-0.5));  // annihilates below tolerance
  CHECK(f.support_size() == 0);

  const auto g = random_map(p15(), 8, 20);
  const auto j = to_json(g);
  const auto back = coefficient_map_from_json(j);
  CHECK(qps::test::map_distance(g, back) < 1e-15);
  CHECK(back.projection() == g.projection());
  // serialized indices arrive in lexicographic order
  FrequencyIndex prev;
  bool first = true;
  for (const auto& entry : j.at("coeffs")) {
    FrequencyIndex k = entry.at("k").get<FrequencyIndex>();
    if (!first) CHECK(prev < k);
    prev = std::move(k);
    first = false;
  }
}
