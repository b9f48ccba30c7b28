#pragma once

#include <vector>

#include "kglab/field.hpp"

namespace kglab {

/// Angular partition of the dyadic annulus at scale N.
///
/// Centers are unit vectors with pairwise separation >= 1/N whose 1/N-balls
/// cover the sphere. eta_k(xi) = b(N (xi/|xi| - center_k)) with b = 1 on the
/// unit ball and 0 outside radius 2; chi_k = eta_k / sum_j eta_j.
class TubePartition {
 public:
  TubePartition(int dim, int scale);

  int dim() const { return dim_; }
  int scale() const { return scale_; }
  std::size_t count() const { return centers_.size(); }
  const std::vector<Vec>& centers() const { return centers_; }

  double eta(std::size_t k, const Vec& xi) const;
  double chi(std::size_t k, const Vec& xi) const;
  /// All chi_k at xi; zero vector at xi = 0.
  std::vector<double> chi_all(const Vec& xi) const;

 private:
  int dim_;
  int scale_;
  std::vector<Vec> centers_;
};

/// Radial bump: 1 for r <= 1, 0 for r >= 2.
double tube_bump(double r);

TubePartition tube_partition(int dim, int scale);

/// Applies the chi_k multiplier to a field.
SpectralField tube_project(const SpectralField& field, const TubePartition& partition, std::size_t k);

}  // namespace kglab
