#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace kglab {

using Complex = std::complex<double>;

/// Spatial or frequency vector; components beyond the grid dimension are zero.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

/// Japanese bracket sqrt(1 + |xi|^2).
inline double bracket(const Vec& xi) { return std::sqrt(1.0 + norm_sq(xi)); }

/// Periodic box [-L, L)^d sampled with N points per axis.
///
/// Points are x_j = -L + j h with h = 2L/N. The frequency lattice is
/// (pi/L) * {-N/2, ..., N/2 - 1}^d, stored in FFT order along each axis
/// (index i carries wavenumber i for i < N/2 and i - N otherwise). Flat indices
/// are row-major with axis 0 slowest.
///
/// Memory: a complex field holds 16 N^d bytes, i.e. 16 KiB at (1, 1024),
/// 4 MiB at (2, 512), 32 MiB at (3, 128).
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(int dim, int points_per_axis, double half_width);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  double box_volume() const { return std::pow(2.0 * half_width_, dim_); }
  std::size_t size() const { return size_; }

  double coordinate(int index) const { return -half_width_ + index * spacing(); }
  int wavenumber_index(int index) const { return index < n_ / 2 ? index : index - n_; }
  double wavenumber(int index) const { return frequency_step() * wavenumber_index(index); }
  double frequency_step() const { return M_PI / half_width_; }
  /// Largest |xi| component on the lattice (the Nyquist row).
  double nyquist() const { return frequency_step() * (n_ / 2); }

  /// Multi-index of a flat index; unused axes are zero.
  std::array<int, 3> unflatten(std::size_t flat) const;

  Vec point(std::size_t flat) const;
  Vec frequency(std::size_t flat) const;

  /// Flat index of the lattice point with the given integer wavenumbers, or -1.
  long lattice_index(const std::array<int, 3>& wavenumbers) const;

  bool operator==(const GridSpec& other) const = default;

 private:
  int dim_ = 1;
  int n_ = 8;
  double half_width_ = M_PI;
  std::size_t size_ = 8;
};

/// Validates and builds a grid. Limits: d in {1,2,3}; N a power of two with
/// 8 <= N <= 1024 (d=1), 512 (d=2), 128 (d=3); L > 0.
GridSpec make_grid(int dim, int points_per_axis, double half_width);

bool is_power_of_two(long n);

/// Calls fn(flat, x) for every grid point.
template <class Fn>
void for_each_point(const GridSpec& grid, Fn&& fn) {
  for (std::size_t i = 0; i < grid.size(); ++i) fn(i, grid.point(i));
}

/// Calls fn(flat, xi) for every lattice frequency.
template <class Fn>
void for_each_frequency(const GridSpec& grid, Fn&& fn) {
  for (std::size_t i = 0; i < grid.size(); ++i) fn(i, grid.frequency(i));
}

/// |xi|^2 for every lattice point, FFT order.
std::vector<double> frequency_norms_sq(const GridSpec& grid);

/// 2/3-rule mask: 1 where every |k_a| < N/3, else 0.
std::vector<double> dealias_mask(const GridSpec& grid);

}  // namespace kglab
