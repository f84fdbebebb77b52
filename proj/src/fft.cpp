#include "qpspec/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace qps {

namespace {
// The FFTW planner mutates global state; creation and destruction of plans
// must be serialized.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftBuffer::FftBuffer(std::size_t size) : size_(size) {
  data_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * size));
  if (data_ == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < size; ++i) data_[i] = cplx(0.0);
}

FftBuffer::~FftBuffer() {
  if (data_ != nullptr) fftw_free(data_);
}

FftBuffer::FftBuffer(FftBuffer&& other) noexcept : data_(other.data_), size_(other.size_) {
  other.data_ = nullptr;
  other.size_ = 0;
}

FftBuffer& FftBuffer::operator=(FftBuffer&& other) noexcept {
  if (this != &other) {
    if (data_ != nullptr) fftw_free(data_);
    data_ = other.data_;
    size_ = other.size_;
    other.data_ = nullptr;
    other.size_ = 0;
  }
  return *this;
}

FftPlan::FftPlan(std::vector<int> dims, Direction dir) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("FftPlan: empty dims");
  size_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("FftPlan: dimension < 1");
    size_ *= static_cast<std::size_t>(d);
  }
  FftBuffer in(size_), out(size_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps planning deterministic (no timing-dependent
  // algorithm choice), which the byte-identical output tests rely on.
  plan_ = fftw_plan_dft(static_cast<int>(dims_.size()), dims_.data(),
                        reinterpret_cast<fftw_complex*>(in.data()),
                        reinterpret_cast<fftw_complex*>(out.data()),
                        dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: planner failed");
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void FftPlan::execute(const cplx* in, cplx* out) const {
  if (in == out) throw std::invalid_argument("FftPlan::execute: in-place not supported");
  fftw_execute_dft(static_cast<fftw_plan>(plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

namespace {
std::vector<cplx> run_once(const std::vector<int>& dims, const std::vector<cplx>& in, FftPlan::Direction dir) {
  FftPlan plan(dims, dir);
  if (in.size() != plan.size()) throw std::invalid_argument("fft: value count != prod(dims)");
  FftBuffer a(plan.size()), b(plan.size());
  for (std::size_t i = 0; i < in.size(); ++i) a[i] = in[i];
  plan.execute(a.data(), b.data());
  return std::vector<cplx>(b.data(), b.data() + plan.size());
}
}  // namespace

std::vector<cplx> fft_forward(const std::vector<int>& dims, const std::vector<cplx>& in) {
  return run_once(dims, in, FftPlan::Direction::forward);
}

std::vector<cplx> fft_backward(const std::vector<int>& dims, const std::vector<cplx>& in) {
  return run_once(dims, in, FftPlan::Direction::backward);
}

}  // namespace qps
