#pragma once

#include <iosfwd>
#include <string>

#include "qpspec/coefficient_map.hpp"

namespace qps {

// Uniform (2N)^n grid on [0, 2pi)^n with spacing h = pi/N. Nodes are
// ordered row-major in (j_1, ..., j_n) with j_n fastest.
struct TorusGrid {
  int n = 1;
  int N = 1;

  double spacing() const;  // pi / N
  int points_per_axis() const { return 2 * N; }
  std::size_t size() const;  // (2N)^n
  std::vector<double> node(std::size_t flat) const;

  bool operator==(const TorusGrid&) const = default;
};

// Complex values of a parent function on the torus grid.
class TorusField {
public:
  TorusField(TorusGrid grid, std::vector<cplx> values);
  static TorusField zeros(TorusGrid grid);

  const TorusGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

private:
  TorusGrid grid_;
  std::vector<cplx> values_;
};

// Dense coefficients over the index box -N <= k_j < N. Frequency k_j is
// stored at array slot (k_j mod 2N), row-major, i.e. standard FFT bin
// order, which makes the array directly transformable.
class DiscreteCoefficients {
public:
  DiscreteCoefficients(ProjectionMatrix P, int N, std::vector<cplx> coeffs);
  static DiscreteCoefficients zeros(ProjectionMatrix P, int N);

  const ProjectionMatrix& projection() const { return P_; }
  int truncation_order() const { return N_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<cplx>& data() const { return coeffs_; }
  std::vector<cplx>& data() { return coeffs_; }

  // flat slot of an in-box index
  std::size_t slot(const FrequencyIndex& k) const;
  // signed in-box index of a flat slot (inverse of slot())
  FrequencyIndex index_of(std::size_t slot) const;
  cplx at(const FrequencyIndex& k) const;
  void set(const FrequencyIndex& k, cplx a);

private:
  ProjectionMatrix P_;
  int N_;
  std::vector<cplx> coeffs_;
};

// (2N)^{-n} sum_j F(y_j) conj(G(y_j)); the normalization makes the discrete
// self-product of a grid exponential exactly 1.
cplx discrete_inner_product(const TorusField& F, const TorusField& G);

// Discrete coefficients of the sampled parent via n-dimensional FFT,
// O(D log D) with D = (2N)^n.
DiscreteCoefficients forward_dft(const TorusField& F, const ProjectionMatrix& P);
TorusField inverse_dft(const DiscreteCoefficients& c);

// Collocation points x_j = P y_j in grid order.
std::vector<std::vector<double>> collocation_points(const ProjectionMatrix& P, int N);

// Parent values F(y_j) on the torus grid, the grid data the projection
// method transforms. Computed exactly by folding the support onto box slots
// (the aliasing path when support(f) exceeds the box) and one inverse FFT.
TorusField sample_on_collocation(const QpCoefficientMap& f, int N);

// Trigonometric interpolation I_N f from collocation samples; support lies
// inside the box and I_N f reproduces the samples at every x_j.
QpCoefficientMap interpolate(const TorusField& samples, const ProjectionMatrix& P);

struct AliasingParts {
  QpCoefficientMap truncation;  // P_N f: in-box part of f
  QpCoefficientMap aliasing;    // R_N f: out-of-box content folded onto the box
};

// Splits I_N f = P_N f + R_N f exactly for finite-support f.
AliasingParts aliasing_decompose(const QpCoefficientMap& f, int N);

// Binary dump: header (n, N) as little-endian int64, then re/im as 64-bit
// floats, row-major grid order.
void write_torus_field(const TorusField& F, std::ostream& out);
TorusField read_torus_field(std::istream& in);
void write_torus_field_file(const TorusField& F, const std::string& path);
TorusField read_torus_field_file(const std::string& path);

}  // namespace qps
