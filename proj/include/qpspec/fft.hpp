#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qpspec/types.hpp"

namespace qps {

// Complex work buffer allocated through FFTW so plans can rely on SIMD
// alignment.
class FftBuffer {
public:
  explicit FftBuffer(std::size_t size);
  ~FftBuffer();
  FftBuffer(FftBuffer&&) noexcept;
  FftBuffer& operator=(FftBuffer&&) noexcept;
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  cplx* data() { return data_; }
  const cplx* data() const { return data_; }
  std::size_t size() const { return size_; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

private:
  cplx* data_ = nullptr;
  std::size_t size_ = 0;
};

// RAII wrapper over an FFTW complex-to-complex plan of arbitrary rank and
// (mixed-radix) sizes. Plan creation is serialized internally; executing
// distinct plans on distinct buffers from several threads is safe.
//
// forward applies exp(-i k y) (FFTW_FORWARD); neither direction normalizes.
class FftPlan {
public:
  enum class Direction { forward, backward };

  FftPlan(std::vector<int> dims, Direction dir);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // in and out must each hold size() values and come from FftBuffer storage
  // (plans are created against fftw_malloc alignment); in == out is not
  // supported.
  void execute(const cplx* in, cplx* out) const;
  std::size_t size() const { return size_; }
  const std::vector<int>& dims() const { return dims_; }

private:
  std::vector<int> dims_;
  std::size_t size_;
  void* plan_;  // fftw_plan
};

// One-shot transforms (plan plus execute), unnormalized like FFTW itself.
std::vector<cplx> fft_forward(const std::vector<int>& dims, const std::vector<cplx>& in);
std::vector<cplx> fft_backward(const std::vector<int>& dims, const std::vector<cplx>& in);

}  // namespace qps
