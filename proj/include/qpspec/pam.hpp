#pragma once

#include <map>

#include "qpspec/coefficient_map.hpp"

namespace qps {

// Continued-fraction convergent p/q of a real number.
struct Convergent {
  long long p = 0;
  long long q = 1;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

// First `count` convergents of alpha; fewer when the expansion terminates.
// Throws for alpha <= 0.
std::vector<Convergent> convergents(double alpha, int count);

// Distance from L alpha to the nearest integer, in [0, 0.5]. Ties round to
// even.
double diophantine_error(double alpha, long long L);

// Periodic stand-in for a quasiperiodic coefficient map on the supercell
// [0, 2pi L): integer mode h carries physical frequency h / L.
class PeriodicApproximant {
public:
  explicit PeriodicApproximant(long long L);

  long long supercell() const { return L_; }
  // Merges colliding images by summing amplitudes.
  void add(long long h, cplx a);
  cplx at(long long h) const;
  const std::map<long long, cplx>& modes() const { return modes_; }
  int collision_count() const { return collisions_; }

private:
  long long L_;
  int collisions_ = 0;
  std::map<long long, cplx> modes_;
};

// Maps each quasiperiodic mode lambda = P k to the integer mode
// h = round(L lambda); colliding images accumulate. Requires d = 1.
PeriodicApproximant periodize(const QpCoefficientMap& f, long long L);

// Parseval distance over the PAM index window -LM <= h < LM; the reference
// map is sent through periodize first.
double pam_error_eM(const PeriodicApproximant& numeric, const QpCoefficientMap& reference, long long L, int M);

}  // namespace qps
