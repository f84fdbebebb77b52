#include "qpspec/tqse.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qpspec/cache.hpp"
#include "qpspec/fft.hpp"
#include "qpspec/json_io.hpp"

namespace qps {

TqseProblem default_problem() {
  ProjectionMatrix P = ProjectionMatrix::row({1.0, std::sqrt(5.0)});
  QpCoefficientMap v(P);
  v.set({1, 0}, cplx(1.0));
  v.set({-1, 0}, cplx(1.0));
  v.set({0, 1}, cplx(1.0));
  v.set({0, -1}, cplx(1.0));
  QpCoefficientMap psi0(P);
  for (int m = -32; m <= 31; ++m)
    for (int n = -32; n <= 31; ++n) psi0.set({m, n}, cplx(std::exp(-(std::abs(m) + std::abs(n)))));
  return {P, std::move(v), std::move(psi0), 1e-3, 1e-7};
}

std::string method_name(Method m) {
  switch (m) {
    case Method::qsm: return "qsm";
    case Method::pm: return "pm";
    case Method::pam: return "pam";
  }
  return "?";
}

double WaveState::parseval_norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<double> WaveState::frequencies() const {
  std::vector<double> beta(coeffs.size(), 0.0);
  if (backend == Method::pam) {
    const long long D = 2LL * L * M;
    const long long half = L * static_cast<long long>(M);
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
      const long long h = static_cast<long long>(s) < half ? static_cast<long long>(s)
                                                           : static_cast<long long>(s) - D;
      beta[s] = static_cast<double>(h) / static_cast<double>(L);
    }
    return beta;
  }
  const DiscreteCoefficients shape = DiscreteCoefficients::zeros(P, N);
  for (std::size_t s = 0; s < coeffs.size(); ++s) beta[s] = P.frequency_scalar(shape.index_of(s));
  return beta;
}

namespace {

long long step_count(const TqseProblem& pb) {
  const double ratio = pb.t_final / pb.tau;
  const auto steps = static_cast<long long>(std::llround(ratio));
  if (steps < 1 || std::abs(static_cast<double>(steps) * pb.tau - pb.t_final) > 1e-9 * pb.t_final)
    throw std::invalid_argument("tqse: tau does not divide t_final");
  return steps;
}

void check_problem(const TqseProblem& pb) {
  if (pb.P.physical_dim() != 1) throw std::invalid_argument("tqse: requires d = 1");
  if (!(pb.potential.projection() == pb.P) || !(pb.initial.projection() == pb.P))
    throw std::invalid_argument("tqse: potential and initial data must share the problem P");
  if (!(pb.tau > 0.0) || !(pb.t_final > 0.0)) throw std::invalid_argument("tqse: need tau, T > 0");
  step_count(pb);
}

// Supercell grid of the PAM: D = 2 M L points x_j = j pi / M on [0, 2 pi L).
std::vector<std::vector<double>> pam_grid_points(long long L, int M) {
  const auto D = static_cast<std::size_t>(2LL * L * M);
  std::vector<std::vector<double>> pts(D);
  const double h = std::numbers::pi / static_cast<double>(M);
  for (std::size_t j = 0; j < D; ++j) pts[j] = {static_cast<double>(j) * h};
  return pts;
}

// One RK4 step of d phi/dt = -i v .* phi on pointwise values.
void rk4_pointwise(cplx* phi, const cplx* v, std::size_t D, double tau, cplx* stage, cplx* acc) {
  const cplx mi(0.0, -1.0);
  for (std::size_t j = 0; j < D; ++j) {
    const cplx k1 = mi * v[j] * phi[j];
    acc[j] = k1;
    stage[j] = phi[j] + (tau / 2.0) * k1;
  }
  for (std::size_t j = 0; j < D; ++j) {
    const cplx k2 = mi * v[j] * stage[j];
    acc[j] += 2.0 * k2;
    stage[j] = phi[j] + (tau / 2.0) * k2;
  }
  for (std::size_t j = 0; j < D; ++j) {
    const cplx k3 = mi * v[j] * stage[j];
    acc[j] += 2.0 * k3;
    stage[j] = phi[j] + tau * k3;
  }
  for (std::size_t j = 0; j < D; ++j) {
    const cplx k4 = mi * v[j] * stage[j];
    phi[j] += (tau / 6.0) * (acc[j] + k4);
  }
}

// One RK4 step of d c/dt = -i (v * c) in reciprocal space; conv applies the
// raw convolution and the -i factors are folded into the combination
// constants.
void rk4_convolution(std::vector<cplx>& c, const DirectConvolver& conv, double tau, std::vector<cplx>& u,
                     std::vector<cplx>& stage, std::vector<cplx>& acc) {
  const std::size_t D = c.size();
  const cplx mi(0.0, -1.0);
  conv.apply(c.data(), u.data());  // u1
  for (std::size_t j = 0; j < D; ++j) {
    acc[j] = mi * u[j];
    stage[j] = c[j] + (tau / 2.0) * (mi * u[j]);
  }
  conv.apply(stage.data(), u.data());  // u2
  for (std::size_t j = 0; j < D; ++j) {
    acc[j] += 2.0 * (mi * u[j]);
    stage[j] = c[j] + (tau / 2.0) * (mi * u[j]);
  }
  conv.apply(stage.data(), u.data());  // u3
  for (std::size_t j = 0; j < D; ++j) {
    acc[j] += 2.0 * (mi * u[j]);
    stage[j] = c[j] + tau * (mi * u[j]);
  }
  conv.apply(stage.data(), u.data());  // u4
  for (std::size_t j = 0; j < D; ++j) c[j] += (tau / 6.0) * (acc[j] + mi * u[j]);
}

// Per-run stepping resources: precomputed kinetic phases, the potential in
// the shape the backend consumes, FFT plans and aligned scratch.
class Os2Stepper {
public:
  Os2Stepper(const TqseProblem& pb, const WaveState& s) : backend_(s.backend), tau_(pb.tau) {
    const auto beta = s.frequencies();
    half_kinetic_.resize(beta.size());
    for (std::size_t j = 0; j < beta.size(); ++j)
      half_kinetic_[j] = std::polar(1.0, -beta[j] * beta[j] * tau_ / 4.0);

    const std::size_t D = s.coeffs.size();
    if (backend_ == Method::qsm) {
      conv_.emplace(pb.potential, s.N);
      u_.resize(D);
      stage_.resize(D);
      acc_.resize(D);
      return;
    }
    std::vector<int> dims;
    if (backend_ == Method::pm) {
      dims.assign(static_cast<std::size_t>(pb.P.embed_dim()), 2 * s.N);
      vphys_ = sample_on_collocation(pb.potential, s.N).values();
    } else {
      dims.assign(1, static_cast<int>(D));
      // integer modes of the periodized potential, then one inverse FFT
      const PeriodicApproximant u = periodize(pb.potential, s.L);
      const long long half = s.L * static_cast<long long>(s.M);
      std::vector<cplx> bins(D, cplx(0.0));
      for (const auto& [h, a] : u.modes()) {
        if (h < -half || h >= half)
          throw std::invalid_argument("tqse pam: potential mode outside the 2ML window, increase M");
        bins[static_cast<std::size_t>(h < 0 ? h + static_cast<long long>(D) : h)] += a;
      }
      vphys_ = fft_backward(dims, bins);
    }
    fwd_.emplace(dims, FftPlan::Direction::forward);
    bwd_.emplace(dims, FftPlan::Direction::backward);
    io_.emplace(D);
    phi_.emplace(D);
    pstage_.emplace(D);
    pacc_.emplace(D);
  }

  void step(std::vector<cplx>& c) {
    const std::size_t D = c.size();
    for (std::size_t j = 0; j < D; ++j) c[j] *= half_kinetic_[j];
    if (backend_ == Method::qsm) {
      rk4_convolution(c, *conv_, tau_, u_, stage_, acc_);
    } else {
      for (std::size_t j = 0; j < D; ++j) (*io_)[j] = c[j];
      bwd_->execute(io_->data(), phi_->data());
      rk4_pointwise(phi_->data(), vphys_.data(), D, tau_, pstage_->data(), pacc_->data());
      fwd_->execute(phi_->data(), io_->data());
      const double inv = 1.0 / static_cast<double>(D);
      for (std::size_t j = 0; j < D; ++j) c[j] = (*io_)[j] * inv;
    }
    for (std::size_t j = 0; j < D; ++j) c[j] *= half_kinetic_[j];
  }

private:
  Method backend_;
  double tau_;
  std::vector<cplx> half_kinetic_;
  // qsm
  std::optional<DirectConvolver> conv_;
  std::vector<cplx> u_, stage_, acc_;
  // pm / pam
  std::optional<FftPlan> fwd_, bwd_;
  std::optional<FftBuffer> io_, phi_, pstage_, pacc_;
  std::vector<cplx> vphys_;
};

}  // namespace

WaveState make_state(const TqseProblem& problem, Method method, int N, long long L, int M) {
  check_problem(problem);
  WaveState s;
  s.backend = method;
  s.P = problem.P;
  s.t = 0.0;
  if (method == Method::pam) {
    if (L < 1 || M < 1) throw std::invalid_argument("make_state: pam needs L >= 1 and M >= 1");
    s.L = L;
    s.M = M;
    // Sampling psi0 on the supercell grid is what places each quasiperiodic
    // frequency at the nearest representable rational h/L; the Diophantine
    // placement error of the method enters here.
    const auto pts = pam_grid_points(L, M);
    auto samples = evaluate_many(problem.initial, pts);
    const auto D = static_cast<std::size_t>(2LL * L * M);
    auto bins = fft_forward({static_cast<int>(D)}, samples);
    const double inv = 1.0 / static_cast<double>(D);
    for (auto& b : bins) b *= inv;
    s.coeffs = std::move(bins);
    return s;
  }
  if (N < 1) throw std::invalid_argument("make_state: N < 1");
  if (!validate_injectivity(problem.P, N))
    throw std::runtime_error("make_state: projection not injective on the box");
  s.N = N;
  s.coeffs = truncate(problem.initial, N).data();
  return s;
}

void kinetic_half_step(WaveState& s, double tau) {
  const auto beta = s.frequencies();
  for (std::size_t j = 0; j < s.coeffs.size(); ++j)
    s.coeffs[j] *= std::polar(1.0, -beta[j] * beta[j] * tau / 4.0);
}

namespace {
void require_backend(const WaveState& s, Method m, const char* what) {
  if (s.backend != m) throw std::invalid_argument(std::string(what) + ": wrong backend for this state");
}
}  // namespace

void potential_step_qsm(WaveState& s, const QpCoefficientMap& v, double tau) {
  require_backend(s, Method::qsm, "potential_step_qsm");
  const DirectConvolver conv(v, s.N);
  std::vector<cplx> u(s.coeffs.size()), stage(s.coeffs.size()), acc(s.coeffs.size());
  rk4_convolution(s.coeffs, conv, tau, u, stage, acc);
}

void potential_step_pm(WaveState& s, const QpCoefficientMap& v, double tau) {
  require_backend(s, Method::pm, "potential_step_pm");
  const std::size_t D = s.coeffs.size();
  const std::vector<int> dims(static_cast<std::size_t>(s.P.embed_dim()), 2 * s.N);
  auto phi = fft_backward(dims, s.coeffs);
  const auto vphys = sample_on_collocation(v, s.N).values();
  std::vector<cplx> stage(D), acc(D);
  rk4_pointwise(phi.data(), vphys.data(), D, tau, stage.data(), acc.data());
  auto back = fft_forward(dims, phi);
  const double inv = 1.0 / static_cast<double>(D);
  for (std::size_t j = 0; j < D; ++j) s.coeffs[j] = back[j] * inv;
}

void potential_step_pam(WaveState& s, const QpCoefficientMap& v, double tau) {
  require_backend(s, Method::pam, "potential_step_pam");
  const auto D = s.coeffs.size();
  const std::vector<int> dims{static_cast<int>(D)};
  const PeriodicApproximant u = periodize(v, s.L);
  const long long half = s.L * static_cast<long long>(s.M);
  std::vector<cplx> bins(D, cplx(0.0));
  for (const auto& [h, a] : u.modes()) {
    if (h < -half || h >= half)
      throw std::invalid_argument("potential_step_pam: potential mode outside the 2ML window");
    bins[static_cast<std::size_t>(h < 0 ? h + static_cast<long long>(D) : h)] += a;
  }
  const auto vphys = fft_backward(dims, bins);
  auto phi = fft_backward(dims, s.coeffs);
  std::vector<cplx> stage(D), acc(D);
  rk4_pointwise(phi.data(), vphys.data(), D, tau, stage.data(), acc.data());
  auto back = fft_forward(dims, phi);
  const double inv = 1.0 / static_cast<double>(D);
  for (std::size_t j = 0; j < D; ++j) s.coeffs[j] = back[j] * inv;
}

void os2_step(WaveState& s, const TqseProblem& problem) {
  Os2Stepper stepper(problem, s);
  stepper.step(s.coeffs);
  s.t += problem.tau;
}

QpCoefficientMap state_to_map(const WaveState& s) {
  if (s.backend == Method::pam) throw std::invalid_argument("state_to_map: pam states are supercell data");
  const auto shape = DiscreteCoefficients::zeros(s.P, s.N);
  QpCoefficientMap out(s.P);
  for (std::size_t slot = 0; slot < s.coeffs.size(); ++slot) out.set(shape.index_of(slot), s.coeffs[slot]);
  return out;
}

namespace {

double pm_aliasing_report(const WaveState& s) {
  // Resample the final interpolant on the doubled grid and fold the result
  // back onto the original box; for an exact pipeline everything lands in
  // the box and the residual is pure roundoff.
  const auto f = state_to_map(s);
  const auto resampled = interpolate(sample_on_collocation(f, 2 * s.N), s.P);
  const auto parts = aliasing_decompose(resampled, s.N);
  return parseval_l2_norm(parts.aliasing);
}

double state_norm2(const std::vector<cplx>& c) {
  double acc = 0.0;
  for (const cplx& v : c) acc += std::norm(v);
  return acc;
}

}  // namespace

double error_eN(const WaveState& numeric, const QpCoefficientMap& reference) {
  if (numeric.backend == Method::pam) {
    PeriodicApproximant num(numeric.L);
    const long long D = 2LL * numeric.L * numeric.M;
    const long long half = numeric.L * static_cast<long long>(numeric.M);
    for (std::size_t slot = 0; slot < numeric.coeffs.size(); ++slot) {
      const long long h = static_cast<long long>(slot) < half ? static_cast<long long>(slot)
                                                              : static_cast<long long>(slot) - D;
      num.add(h, numeric.coeffs[slot]);
    }
    return pam_error_eM(num, reference, numeric.L, numeric.M);
  }
  if (!(reference.projection() == numeric.P)) throw std::invalid_argument("error_eN: reference P mismatch");
  const auto shape = DiscreteCoefficients::zeros(numeric.P, numeric.N);
  double acc = 0.0;
  for (std::size_t slot = 0; slot < numeric.coeffs.size(); ++slot)
    acc += std::norm(reference.at(shape.index_of(slot)) - numeric.coeffs[slot]);
  return std::sqrt(acc);
}

RunResult run(const TqseProblem& problem, Method method, int N, long long L, int M,
              const QpCoefficientMap* reference) {
  check_problem(problem);
  const long long steps = step_count(problem);
  WaveState state = make_state(problem, method, N, L, M);
  Os2Stepper stepper(problem, state);

  const auto start = std::chrono::steady_clock::now();
  for (long long i = 0; i < steps; ++i) {
    stepper.step(state.coeffs);
    if ((i & 127) == 0 || i + 1 == steps) {
      if (!std::isfinite(state_norm2(state.coeffs)))
        throw std::runtime_error("tqse run: state blew up (non-finite norm) at step " + std::to_string(i + 1));
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  state.t = static_cast<double>(steps) * problem.tau;

  RunReport report;
  report.method = method_name(method);
  report.N = N;
  report.L = L;
  report.M = M;
  report.steps = steps;
  report.wall_seconds = std::chrono::duration<double>(stop - start).count();
  if (reference != nullptr) report.e_N = error_eN(state, *reference);
  if (method == Method::pm) report.aliasing_norm = pm_aliasing_report(state);
  return {std::move(state), std::move(report)};
}

QpCoefficientMap reference_solution(const TqseProblem& problem) {
  nlohmann::json key_doc;
  key_doc["potential"] = to_json(problem.potential);
  key_doc["initial"] = to_json(problem.initial);
  key_doc["t_final"] = problem.t_final;
  key_doc["solver"] = {{"method", "pm"}, {"N", reference_order}, {"tau", reference_tau}};
  const std::string key = sha256_hex(key_doc.dump());
  const auto path = cache_directory() / ("tqse-ref-" + key.substr(0, 16) + ".json.gz");

  if (auto bytes = read_gzip_file(path)) {
    try {
      auto map = coefficient_map_from_json(nlohmann::json::parse(*bytes));
      if (map.projection() == problem.P) return map;
    } catch (const std::exception&) {
      // fall through to recompute
    }
  }

  TqseProblem ref_problem = problem;
  ref_problem.tau = reference_tau;
  const auto result = run(ref_problem, Method::pm, reference_order);
  auto map = state_to_map(result.state);
  write_gzip_file(path, to_json(map).dump());
  return map;
}

}  // namespace qps
