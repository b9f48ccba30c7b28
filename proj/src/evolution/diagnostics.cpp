#include <cmath>

#include "kglab/evolution.hpp"
#include "kglab/log.hpp"

namespace kglab {

ConcavityReport concavity_diagnostic(const TrajectoryRecord& traj, int dim) {
  if (traj.real_l2.size() < 3) throw Error("concavity_diagnostic: needs at least three snapshots");
  std::vector<double> y;
  std::vector<double> t;
  for (std::size_t i = 0; i < traj.real_l2.size(); ++i) {
    if (!std::isfinite(traj.real_l2[i])) break;
    y.push_back(std::pow(traj.real_l2[i], -2.0 / dim));
    t.push_back(traj.times[i]);
  }
  ConcavityReport out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    // Divided second difference (uneven spacing at a halt), rescaled to h0 * h1.
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    const double dd = 2.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0) / (h0 + h1);
    const double second = dd * h0 * h1;
    out.second_differences.push_back(second);
    if (second > 1e-10) out.all_negative = false;
  }
  return out;
}

double exterior_energy(const SpectralField& v, double radius) {
  const RealPair pair = split_first_order(v);
  const GridSpec& g = v.grid();
  const SpectralField u_hat = pair.u.to_frequency();
  std::vector<SpectralField> grads;
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField d = u_hat;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int idx = g.unflatten(i)[a];
      const double k = (idx == g.n() / 2) ? 0.0 : g.wavenumber(idx);
      d[i] *= Complex(0.0, k);
    }
    grads.push_back(d.to_physical());
  }
  double sum = 0.0;
  for_each_point(g, [&](std::size_t i, const Vec& x) {
    if (norm(x) <= radius) return;
    double e = std::norm(pair.u[i]) + std::norm(pair.u_t[i]);
    for (const auto& d : grads) e += std::norm(d[i]);
    sum += e;
  });
  return sum * g.cell_volume();
}

std::vector<double> exterior_mass(const TrajectoryRecord& traj, double radius) {
  if (traj.fields.size() != traj.times.size()) throw Error("exterior_mass: trajectory has no stored fields");
  std::vector<double> out;
  out.reserve(traj.fields.size());
  for (const auto& f : traj.fields) out.push_back(exterior_energy(f, radius));
  return out;
}

}  // namespace kglab
