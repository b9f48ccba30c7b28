#pragma once

#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "kglab/grid.hpp"

namespace kglab {

/// Allocator returning 64-byte aligned storage so FFTW can use SIMD plans.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), alignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using CVector = std::vector<Complex, AlignedAllocator<Complex>>;

// Forward transform: c_k = N^{-d} sum_j f_j exp(-2 pi i j.k / N), so c_k are
// Fourier coefficients with respect to the origin at x_0 = -L. Inverse is the
// unnormalized sum, making inverse(forward(f)) = f. Plans are created once per
// (d, N) under a lock and reused from any thread.
void fft_forward(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out);
void fft_inverse(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out);

}  // namespace kglab
