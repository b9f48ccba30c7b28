#include "kglab/tube_partition.hpp"

#include <cmath>

#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/projectors.hpp"

namespace kglab {

double tube_bump(double r) { return smooth_step(2.0 - r); }

namespace {

// Largest count m with chord 2 rho sin(pi/m) >= 1/N on a circle of radius rho.
int ring_count(double rho, int scale) {
  const double ratio = 1.0 / (2.0 * scale * rho);
  if (ratio >= 1.0) return 1;
  return std::max(1, static_cast<int>(std::floor(M_PI / std::asin(ratio))));
}

}  // namespace

TubePartition::TubePartition(int dim, int scale) : dim_(dim), scale_(scale) {
  if (dim < 1 || dim > 3) throw Error("tube_partition: dimension must be 1, 2 or 3");
  if (scale < 2 || !is_power_of_two(scale)) throw Error("tube_partition: N must be a power of two >= 2");
  if (dim == 1) {
    centers_.push_back({1.0, 0.0, 0.0});
    return;
  }
  if (dim == 2) {
    const int m = ring_count(1.0, scale);
    for (int k = 0; k < m; ++k) {
      const double t = 2.0 * M_PI * k / m;
      centers_.push_back({std::cos(t), std::sin(t), 0.0});
    }
    return;
  }
  const int rings = std::max(1, static_cast<int>(std::floor(M_PI / (2.0 * std::asin(1.0 / (2.0 * scale))))));
  for (int j = 0; j <= rings; ++j) {
    const double polar = M_PI * j / rings;
    const double rho = std::sin(polar);
    const int m = (j == 0 || j == rings) ? 1 : ring_count(rho, scale);
    for (int k = 0; k < m; ++k) {
      const double az = 2.0 * M_PI * k / m;
      centers_.push_back({rho * std::cos(az), rho * std::sin(az), std::cos(polar)});
    }
  }
}

double TubePartition::eta(std::size_t k, const Vec& xi) const {
  const double r = norm(xi);
  if (r == 0.0) return 0.0;
  if (dim_ == 1) return 1.0;
  const Vec& c = centers_.at(k);
  Vec diff{xi[0] / r - c[0], xi[1] / r - c[1], xi[2] / r - c[2]};
  return tube_bump(scale_ * norm(diff));
}

std::vector<double> TubePartition::chi_all(const Vec& xi) const {
  std::vector<double> out(centers_.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    out[k] = eta(k, xi);
    total += out[k];
  }
  if (total > 0.0)
    for (auto& v : out) v /= total;
  return out;
}

double TubePartition::chi(std::size_t k, const Vec& xi) const { return chi_all(xi).at(k); }

TubePartition tube_partition(int dim, int scale) { return TubePartition(dim, scale); }

SpectralField tube_project(const SpectralField& field, const TubePartition& partition, std::size_t k) {
  if (partition.dim() != field.grid().dim()) throw Error("tube_project: dimension mismatch");
  std::vector<double> table(field.grid().size());
  for_each_frequency(field.grid(), [&](std::size_t i, const Vec& xi) { table[i] = partition.chi(k, xi); });
  return apply_table(field, table);
}

}  // namespace kglab
