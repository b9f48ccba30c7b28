#include <cmath>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/projectors.hpp"

namespace kglab {

std::vector<PropagatorPoint> propagator_convergence(const ClosedForm& g, const std::vector<double>& lambdas,
                                                    double theta, const std::vector<double>& times,
                                                    const GridSpec& grid) {
  if (times.empty()) throw Error("propagator_convergence: empty time list");
  for (double t : times)
    if (!(std::abs(t) <= 1.0)) throw Error("propagator_convergence: times must lie in [-1, 1]");
  const SpectralField g_hat = SpectralField::sample(grid, g).to_frequency();
  std::vector<double> xi_sq(grid.size());
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) { xi_sq[i] = norm_sq(xi); });

  std::vector<PropagatorPoint> out;
  for (double lambda : lambdas) {
    if (!(lambda >= 1.0)) throw Error("propagator_convergence: lambda must be >= 1");
    const std::vector<double> proj = low_pass_table(grid, std::pow(lambda, theta));
    PropagatorPoint pt;
    pt.lambda = lambda;
    for (double t : times) {
      double sum = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Complex kg = std::polar(proj[i], -t * scaled_kg_phase(xi_sq[i], lambda));
        const Complex nls = std::polar(1.0, -0.5 * t * xi_sq[i]);
        sum += std::norm((kg - nls) * g_hat[i]);
      }
      const double err = std::sqrt(sum * grid.box_volume());
      if (err > pt.error || t == times.front()) {
        pt.error = err;
        pt.worst_t = t;
      }
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace kglab
