#include <cmath>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"

namespace kglab {
namespace {

// Gaussian with the peak and the L2 mass of Q.
SpectralField matched_gaussian(const RadialProfile& q, const GridSpec& grid, double amplitude) {
  const double sigma = std::pow(q.norms().mass / (q.q0 * q.q0), 1.0 / grid.dim()) / std::sqrt(M_PI);
  return SpectralField::sample(grid, gaussian(amplitude * q.q0, sigma));
}

}  // namespace

std::vector<DichotomyRow> dichotomy_scan(const std::vector<double>& amplitudes, DichotomyShape shape,
                                         const DichotomyConfig& config, const RadialProfile& q) {
  const GridSpec& g = config.grid;
  if (q.dim != g.dim()) throw Error("dichotomy_scan: ground state and grid dimensions differ");
  const NonlinearityParams params = make_nonlinearity(g.dim(), -1);
  const double e_q = threshold_energy(q);

  StepperConfig stepper;
  stepper.scheme = Scheme::LawsonRK4;
  stepper.dt = config.dt;
  stepper.dealias = config.dealias;
  stepper.blowup_threshold = config.blowup_threshold;
  Monitors monitors;
  monitors.stride = config.stride;

  std::vector<DichotomyRow> rows;
  for (double a : amplitudes) {
    const SpectralField u0 =
        shape == DichotomyShape::GroundState ? embed_profile(q, g, a) : matched_gaussian(q, g, a);
    DichotomyRow row;
    row.amplitude = a;
    const double e = energy(u0, SpectralField::zeros(g), params).total;
    row.energy_ratio = e / e_q;
    row.k0 = k0(u0, params);
    // Data within 1e-6 of the threshold (Q itself) count as on it.
    row.in_scope = row.energy_ratio < 1.0 - 1e-6;
    row.predicted_blowup = row.k0 < 0.0;
    if (!row.in_scope) {
      rows.push_back(row);
      continue;
    }
    const TrajectoryRecord rec = evolve(u0, config.T, stepper, params, monitors);
    row.observed_blowup = rec.flagged();
    row.blowup_time = rec.blowup ? rec.blowup_time : rec.nan_time;
    row.concave = rec.times.size() >= 3 && concavity_diagnostic(rec, g.dim()).all_negative;
    row.agree = row.predicted_blowup == row.observed_blowup && (!row.predicted_blowup || row.concave);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kglab
