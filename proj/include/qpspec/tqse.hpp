#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qpspec/pam.hpp"
#include "qpspec/qsm.hpp"

namespace qps {

// i psi_t = -1/2 psi_xx + v(x) psi on the line, with quasiperiodic
// potential and initial data sharing one projection matrix.
struct TqseProblem {
  ProjectionMatrix P;
  QpCoefficientMap potential;  // v
  QpCoefficientMap initial;    // psi0
  double t_final = 1e-3;
  double tau = 1e-7;
};

// P = (1, sqrt 5); v with four unit modes at indices (+-1,0), (0,+-1);
// psi0 with coefficients exp(-(|m|+|n|)) over -32 <= m, n <= 31;
// T = 0.001, tau = 1e-7.
TqseProblem default_problem();

enum class Method { qsm, pm, pam };
std::string method_name(Method m);

struct RunReport {
  std::string method;
  int N = 0;        // QSM / PM truncation order (and the N behind M = 4N for PAM)
  long long L = 0;  // PAM supercell
  int M = 0;        // PAM modes per unit cell
  std::optional<double> e_N;
  double wall_seconds = 0.0;
  long long steps = 0;
  std::optional<double> aliasing_norm;  // PM only
};

// Spectral state of one run. The coefficient array is authoritative:
// box slots for QSM/PM, supercell FFT bins (h mod 2ML) for PAM.
struct WaveState {
  Method backend = Method::qsm;
  ProjectionMatrix P = ProjectionMatrix::row({1.0});
  int N = 0;
  long long L = 0;
  int M = 0;
  std::vector<cplx> coeffs;
  double t = 0.0;

  std::size_t size() const { return coeffs.size(); }
  double parseval_norm() const;
  // physical frequency of each slot: lambda_k for QSM/PM, h/L for PAM
  std::vector<double> frequencies() const;
};

// Initial state for the chosen backend. QSM and PM start from the truncated
// exact coefficients; PAM samples psi0 on the 2ML supercell grid points and
// transforms, which is where the Diophantine placement error enters.
WaveState make_state(const TqseProblem& problem, Method method, int N, long long L = 0, int M = 0);

// Multiplies the coefficient at frequency beta by exp(-i beta^2 tau / 4),
// i.e. the exact kinetic flow over a half step tau/2.
void kinetic_half_step(WaveState& s, double tau);

// One RK4 step of size tau on d psi/dt = -i (v * psi) in the chosen
// backend's representation.
void potential_step_qsm(WaveState& s, const QpCoefficientMap& v, double tau);
void potential_step_pm(WaveState& s, const QpCoefficientMap& v, double tau);
void potential_step_pam(WaveState& s, const QpCoefficientMap& v, double tau);

// Strang composition kinetic(tau/2) potential(tau) kinetic(tau/2); advances
// state time by problem.tau.
void os2_step(WaveState& s, const TqseProblem& problem);

struct RunResult {
  WaveState state;
  RunReport report;
};

// Full OS2 run with T/tau steps. Wall clock covers the stepping loop only.
// e_N is filled when a reference is supplied; PM runs also report the
// aliasing residual of the final interpolant (resampled at 2N and folded
// back). Throws std::runtime_error if the state blows up.
RunResult run(const TqseProblem& problem, Method method, int N, long long L = 0, int M = 0,
              const QpCoefficientMap* reference = nullptr);

inline constexpr int reference_order = 128;     // h = pi/128
inline constexpr double reference_tau = 1e-7;

// PM solution at the reference resolution, cached on disk (gzip JSON named
// by the SHA-256 of the canonical problem serialization). A corrupt cache
// entry is recomputed.
QpCoefficientMap reference_solution(const TqseProblem& problem);

// Parseval distance between the numeric state and the reference restricted
// to the numeric method's own frequency set.
double error_eN(const WaveState& numeric, const QpCoefficientMap& reference);

// Final coefficients as a sparse map (QSM/PM backends).
QpCoefficientMap state_to_map(const WaveState& s);

}  // namespace qps
