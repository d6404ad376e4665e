#include <atomic>

#include "densfp/simd/kernels.hpp"

namespace densfp::simd {
namespace {

const Kernels* detect() noexcept {
#if defined(DENSFP_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
  return &scalar_kernels();
}

std::atomic<const Kernels*>& current() noexcept {
  static std::atomic<const Kernels*> k{detect()};
  return k;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DENSFP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const Kernels& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
  if (!isa_supported(isa)) return false;
#if defined(DENSFP_HAVE_AVX2)
  if (isa == Isa::avx2) {
    current().store(&avx2_kernels());
    return true;
  }
#endif
  current().store(&scalar_kernels());
  return true;
}

void reset_isa() noexcept { current().store(detect()); }

void PointBuffer::reserve(std::size_t n) {
  x_.reserve(n);
  y_.reserve(n);
  z_.reserve(n);
}

void PointBuffer::clear() {
  x_.clear();
  y_.clear();
  z_.clear();
}

void PointBuffer::push_back(double x, double y, double z) {
  x_.push_back(x);
  y_.push_back(y);
  z_.push_back(z);
}

void PlaneBuffer::clear() {
  nx_.clear();
  ny_.clear();
  nz_.clear();
  c_.clear();
}

void PlaneBuffer::push_back(double nx, double ny, double nz, double c) {
  nx_.push_back(nx);
  ny_.push_back(ny);
  nz_.push_back(nz);
  c_.push_back(c);
}

}  // namespace densfp::simd
