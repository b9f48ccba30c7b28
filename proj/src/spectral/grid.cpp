#include "kglab/grid.hpp"

#include <string>

#include "kglab/log.hpp"

namespace kglab {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

GridSpec::GridSpec(int dim, int points_per_axis, double half_width)
    : dim_(dim), n_(points_per_axis), half_width_(half_width) {
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
}

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

Vec GridSpec::point(std::size_t flat) const {
  auto idx = unflatten(flat);
  Vec x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = coordinate(idx[a]);
  return x;
}

Vec GridSpec::frequency(std::size_t flat) const {
  auto idx = unflatten(flat);
  Vec xi{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) xi[a] = wavenumber(idx[a]);
  return xi;
}

long GridSpec::lattice_index(const std::array<int, 3>& k) const {
  long flat = 0;
  for (int a = 0; a < dim_; ++a) {
    if (k[a] < -n_ / 2 || k[a] >= n_ / 2) return -1;
    int i = k[a] < 0 ? k[a] + n_ : k[a];
    flat = flat * n_ + i;
  }
  return flat;
}

GridSpec make_grid(int dim, int points_per_axis, double half_width) {
  if (dim < 1 || dim > 3) throw Error("make_grid: dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (!is_power_of_two(points_per_axis))
    throw Error("make_grid: points per axis must be a power of two, got " + std::to_string(points_per_axis));
  const int max_n = dim == 1 ? 1024 : dim == 2 ? 512 : 128;
  if (points_per_axis < 8 || points_per_axis > max_n)
    throw Error("make_grid: points per axis must lie in [8, " + std::to_string(max_n) + "] for d=" +
                std::to_string(dim));
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw Error("make_grid: half width must be positive");
  return GridSpec(dim, points_per_axis, half_width);
}

std::vector<double> frequency_norms_sq(const GridSpec& grid) {
  std::vector<double> out(grid.size());
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) { out[i] = norm_sq(xi); });
  return out;
}

std::vector<double> dealias_mask(const GridSpec& grid) {
  std::vector<double> mask(grid.size(), 1.0);
  const int n = grid.n();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.unflatten(i);
    for (int a = 0; a < grid.dim(); ++a) {
      int k = grid.wavenumber_index(idx[a]);
      if (3 * std::abs(k) >= n) {
        mask[i] = 0.0;
        break;
      }
    }
  }
  return mask;
}

}  // namespace kglab
