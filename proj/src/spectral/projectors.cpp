#include "kglab/projectors.hpp"

#include <cmath>

#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"

namespace kglab {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double lp_cutoff(double r) {
  constexpr double outer = 99.0 / 98.0;
  if (r <= 1.0) return 1.0;
  if (r >= outer) return 0.0;
  return smooth_step((outer - r) / (outer - 1.0));
}

bool is_dyadic(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) return false;
  int e = 0;
  return std::frexp(n, &e) == 0.5;
}

std::vector<double> low_pass_table(const GridSpec& grid, double cutoff) {
  if (!(cutoff > 0.0)) throw Error("low_pass: cutoff must be positive");
  std::vector<double> table(grid.size());
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) { table[i] = lp_cutoff(norm(xi) / cutoff); });
  return table;
}

SpectralField low_pass(const SpectralField& field, double cutoff) {
  return apply_table(field, low_pass_table(field.grid(), cutoff));
}

SpectralField littlewood_paley(const SpectralField& field, double dyadic, LPKind kind) {
  if (!is_dyadic(dyadic)) throw Error("littlewood_paley: N must be a power of two >= 1");
  if (kind == LPKind::Ball || dyadic == 1.0) return low_pass(field, dyadic);
  std::vector<double> table(field.grid().size());
  for_each_frequency(field.grid(), [&](std::size_t i, const Vec& xi) {
    const double r = norm(xi) / dyadic;
    table[i] = lp_cutoff(r) - lp_cutoff(2.0 * r);
  });
  return apply_table(field, table);
}

}  // namespace kglab
