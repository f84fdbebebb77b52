#include "qpspec/pm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qpspec/fft.hpp"

namespace qps {

double TorusGrid::spacing() const { return std::numbers::pi / static_cast<double>(N); }

std::size_t TorusGrid::size() const {
  std::size_t s = 1;
  for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(2 * N);
  return s;
}

std::vector<double> TorusGrid::node(std::size_t flat) const {
  std::vector<double> y(static_cast<std::size_t>(n));
  const auto per = static_cast<std::size_t>(2 * N);
  const double h = spacing();
  for (int a = n - 1; a >= 0; --a) {
    y[static_cast<std::size_t>(a)] = static_cast<double>(flat % per) * h;
    flat /= per;
  }
  return y;
}

TorusField::TorusField(TorusGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("TorusField: value count != (2N)^n");
}

TorusField TorusField::zeros(TorusGrid grid) {
  std::vector<cplx> v(grid.size(), cplx(0.0));
  return TorusField(grid, std::move(v));
}

DiscreteCoefficients::DiscreteCoefficients(ProjectionMatrix P, int N, std::vector<cplx> coeffs)
    : P_(std::move(P)), N_(N), coeffs_(std::move(coeffs)) {
  if (N_ < 1) throw std::invalid_argument("DiscreteCoefficients: N < 1");
  const TorusGrid g{P_.embed_dim(), N_};
  if (coeffs_.size() != g.size()) throw std::invalid_argument("DiscreteCoefficients: value count != (2N)^n");
}

DiscreteCoefficients DiscreteCoefficients::zeros(ProjectionMatrix P, int N) {
  const TorusGrid g{P.embed_dim(), N};
  std::vector<cplx> c(g.size(), cplx(0.0));
  return DiscreteCoefficients(std::move(P), N, std::move(c));
}

std::size_t DiscreteCoefficients::slot(const FrequencyIndex& k) const {
  if (static_cast<int>(k.size()) != P_.embed_dim())
    throw std::invalid_argument("DiscreteCoefficients: index length != n");
  const int per = 2 * N_;
  std::size_t s = 0;
  for (int kj : k) {
    if (kj < -N_ || kj >= N_) throw std::out_of_range("DiscreteCoefficients: index outside the box");
    const int wrapped = kj < 0 ? kj + per : kj;
    s = s * static_cast<std::size_t>(per) + static_cast<std::size_t>(wrapped);
  }
  return s;
}

FrequencyIndex DiscreteCoefficients::index_of(std::size_t slot) const {
  const int n = P_.embed_dim();
  const auto per = static_cast<std::size_t>(2 * N_);
  FrequencyIndex k(static_cast<std::size_t>(n));
  for (int a = n - 1; a >= 0; --a) {
    const int wrapped = static_cast<int>(slot % per);
    k[static_cast<std::size_t>(a)] = wrapped >= N_ ? wrapped - 2 * N_ : wrapped;
    slot /= per;
  }
  return k;
}

cplx DiscreteCoefficients::at(const FrequencyIndex& k) const { return coeffs_[slot(k)]; }

void DiscreteCoefficients::set(const FrequencyIndex& k, cplx a) { coeffs_[slot(k)] = a; }

cplx discrete_inner_product(const TorusField& F, const TorusField& G) {
  if (!(F.grid() == G.grid())) throw std::invalid_argument("discrete_inner_product: grid mismatch");
  cplx acc(0.0);
  const auto& fv = F.values();
  const auto& gv = G.values();
  for (std::size_t i = 0; i < fv.size(); ++i) acc += fv[i] * std::conj(gv[i]);
  return acc / static_cast<double>(fv.size());
}

namespace {
std::vector<int> grid_dims(int n, int N) { return std::vector<int>(static_cast<std::size_t>(n), 2 * N); }
}  // namespace

DiscreteCoefficients forward_dft(const TorusField& F, const ProjectionMatrix& P) {
  const auto& g = F.grid();
  if (P.embed_dim() != g.n) throw std::invalid_argument("forward_dft: P embed dim != grid dim");
  auto c = fft_forward(grid_dims(g.n, g.N), F.values());
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv;
  return DiscreteCoefficients(P, g.N, std::move(c));
}

TorusField inverse_dft(const DiscreteCoefficients& c) {
  const TorusGrid g{c.projection().embed_dim(), c.truncation_order()};
  auto v = fft_backward(grid_dims(g.n, g.N), c.data());
  return TorusField(g, std::move(v));
}

std::vector<std::vector<double>> collocation_points(const ProjectionMatrix& P, int N) {
  const TorusGrid g{P.embed_dim(), N};
  const int d = P.physical_dim();
  std::vector<std::vector<double>> pts;
  pts.reserve(g.size());
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    const auto y = g.node(flat);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (int j = 0; j < g.n; ++j) acc += P.entry(i, j) * y[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = acc;
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

TorusField sample_on_collocation(const QpCoefficientMap& f, int N) {
  // lambda_k^T x_j = k^T y_j mod 2pi, so sampling f at the collocation
  // points equals sampling the parent at the grid nodes: fold the support
  // onto box slots, then one inverse FFT.
  const auto& P = f.projection();
  const int per = 2 * N;
  auto folded = DiscreteCoefficients::zeros(P, N);
  for (const auto& [k, a] : f.coeffs()) {
    std::size_t s = 0;
    for (int kj : k) {
      int w = kj % per;
      if (w < 0) w += per;
      s = s * static_cast<std::size_t>(per) + static_cast<std::size_t>(w);
    }
    folded.data()[s] += a;
  }
  return inverse_dft(folded);
}

QpCoefficientMap interpolate(const TorusField& samples, const ProjectionMatrix& P) {
  const auto c = forward_dft(samples, P);
  QpCoefficientMap out(P);
  for (std::size_t s = 0; s < c.size(); ++s) out.set(c.index_of(s), c.data()[s]);
  return out;
}

AliasingParts aliasing_decompose(const QpCoefficientMap& f, int N) {
  const auto& P = f.projection();
  const int per = 2 * N;
  QpCoefficientMap trunc(P), alias(P);
  for (const auto& [k, a] : f.coeffs()) {
    bool inside = true;
    FrequencyIndex folded(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
      const int kj = k[j];
      if (kj < -N || kj >= N) inside = false;
      int w = kj % per;
      if (w < 0) w += per;
      folded[j] = w >= N ? w - per : w;
    }
    if (inside)
      trunc.add(k, a);
    else
      alias.add(folded, a);
  }
  return {std::move(trunc), std::move(alias)};
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_torus_field(const TorusField& F, std::ostream& out) {
  put_u64(out, static_cast<std::uint64_t>(F.grid().n));
  put_u64(out, static_cast<std::uint64_t>(F.grid().N));
  for (const cplx& v : F.values()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw std::runtime_error("write_torus_field: write failed");
}

TorusField read_torus_field(std::istream& in) {
  const auto n = static_cast<int>(get_u64(in));
  const auto N = static_cast<int>(get_u64(in));
  if (!in || n < 1 || N < 1) throw std::runtime_error("read_torus_field: bad header");
  const TorusGrid g{n, N};
  std::vector<cplx> vals(g.size());
  for (auto& v : vals) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = cplx(re, im);
  }
  if (!in) throw std::runtime_error("read_torus_field: truncated payload");
  return TorusField(g, std::move(vals));
}

void write_torus_field_file(const TorusField& F, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_torus_field_file: cannot open " + path);
  write_torus_field(F, out);
}

TorusField read_torus_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_torus_field_file: cannot open " + path);
  return read_torus_field(in);
}

}  // namespace qps
