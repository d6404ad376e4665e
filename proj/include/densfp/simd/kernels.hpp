#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version selected at runtime. Both produce bitwise
// identical results: no fused multiply-adds, identical operation order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace densfp::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Structure-of-arrays view over 3D points; unused coordinates are zero.
struct PointsView {
  const double* x = nullptr;
  const double* y = nullptr;
  const double* z = nullptr;
  std::size_t size = 0;
};

/// Halfspaces {p : nx*px + ny*py + nz*pz <= c}, also structure-of-arrays.
struct PlanesView {
  const double* nx = nullptr;
  const double* ny = nullptr;
  const double* nz = nullptr;
  const double* c = nullptr;
  std::size_t size = 0;
};

struct Kernels {
  Isa isa;
  /// out[i] = |p_i - q|^2
  void (*squared_distances)(PointsView pts, const double q[3], double* out);
  /// number of i with |p_i - q|^2 <= r2
  std::size_t (*count_within)(PointsView pts, const double q[3], double r2);
  /// min_i |p_i - q|^2, +inf when empty
  double (*min_squared_distance)(PointsView pts, const double q[3]);
  /// mask[i] = 1 iff sample i satisfies every plane within slack; returns the count
  std::size_t (*inside_all)(PointsView samples, PlanesView planes, double slack, std::uint8_t* mask);
};

const Kernels& scalar_kernels() noexcept;
#if defined(DENSFP_HAVE_AVX2)
const Kernels& avx2_kernels() noexcept;
#endif

bool isa_supported(Isa isa) noexcept;

/// Kernels for the best ISA the host supports, unless overridden.
const Kernels& active() noexcept;

/// Force a particular ISA (tests, benchmarking). Returns false if unsupported.
bool force_isa(Isa isa) noexcept;
void reset_isa() noexcept;

/// Owning structure-of-arrays point buffer.
class PointBuffer {
 public:
  void reserve(std::size_t n);
  void clear();
  void push_back(double x, double y, double z);
  std::size_t size() const noexcept { return x_.size(); }
  bool empty() const noexcept { return x_.empty(); }
  PointsView view() const noexcept { return {x_.data(), y_.data(), z_.data(), x_.size()}; }
  double x(std::size_t i) const { return x_[i]; }
  double y(std::size_t i) const { return y_[i]; }
  double z(std::size_t i) const { return z_[i]; }

 private:
  std::vector<double> x_, y_, z_;
};

class PlaneBuffer {
 public:
  void clear();
  void push_back(double nx, double ny, double nz, double c);
  std::size_t size() const noexcept { return c_.size(); }
  PlanesView view() const noexcept { return {nx_.data(), ny_.data(), nz_.data(), c_.data(), c_.size()}; }

 private:
  std::vector<double> nx_, ny_, nz_, c_;
};

}  // namespace densfp::simd
