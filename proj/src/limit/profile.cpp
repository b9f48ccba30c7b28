#include <cmath>
#include <sstream>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"
#include "kglab/projectors.hpp"
#include "kglab/symmetry.hpp"

namespace kglab {

ClosedForm gaussian(double amplitude, double sigma) {
  if (!(sigma > 0.0)) throw Error("gaussian: sigma must be positive");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return [amplitude, inv](const Vec& x) { return Complex(amplitude * std::exp(-norm_sq(x) * inv), 0.0); };
}

double gaussian_l2(double amplitude, double sigma, int dim) {
  // int exp(-|x|^2 / sigma^2) dx = (sqrt(pi) sigma)^d
  return std::abs(amplitude) * std::pow(std::sqrt(M_PI) * sigma, 0.5 * dim);
}

SpectralField build_profile(const ClosedForm& phi, double lambda, double theta, const GridSpec& grid, bool strict) {
  if (!(lambda >= 1.0)) throw Error("build_profile: lambda must be >= 1");
  SpectralField dilated;
  if (strict) {
    WarningCapture capture;
    dilated = dilate_closed_form(phi, lambda, grid);
    if (!capture.messages().empty()) throw Error("build_profile (strict): " + capture.messages().front());
  } else {
    dilated = dilate_closed_form(phi, lambda, grid);
  }
  return low_pass(dilated, std::pow(lambda, theta - 1.0)).to_physical();
}

GridSpec kg_grid_for(const GridSpec& nls_grid, double lambda) {
  return GridSpec(nls_grid.dim(), nls_grid.n(), lambda * nls_grid.half_width());
}

SpectralField dilate_to_kg(const SpectralField& f, double lambda) {
  const GridSpec kg = kg_grid_for(f.grid(), lambda);
  CVector values(f.data());
  const double amp = std::pow(lambda, -0.5 * kg.dim());
  for (auto& c : values) c *= amp;
  return SpectralField(kg, std::move(values), f.representation());
}

SpectralField undilate_from_kg(const SpectralField& f, const GridSpec& nls_grid, double lambda) {
  if (f.grid().n() != nls_grid.n() || f.grid().dim() != nls_grid.dim() ||
      std::abs(f.grid().half_width() - lambda * nls_grid.half_width()) > 1e-12 * f.grid().half_width())
    throw Error("undilate_from_kg: grids are not paired by lambda");
  CVector values(f.data());
  const double amp = std::pow(lambda, 0.5 * nls_grid.dim());
  for (auto& c : values) c *= amp;
  return SpectralField(nls_grid, std::move(values), f.representation());
}

}  // namespace kglab
