#include <cmath>
#include <ostream>
#include <sstream>

#include "kglab/evolution.hpp"
#include "kglab/log.hpp"

namespace kglab {
namespace {

bool all_finite(std::span<const Complex> values) {
  for (const auto& c : values)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double h1_from_frequency(std::span<const Complex> c, const std::vector<double>& weight, double volume) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += weight[i] * std::norm(c[i]);
  return std::sqrt(sum * volume);
}

class Recorder {
 public:
  Recorder(TrajectoryRecord& rec, const NonlinearityParams& params, const Monitors& monitors)
      : rec_(rec), params_(params), monitors_(monitors) {}

  void record(double t, const SpectralField& field) {
    rec_.times.push_back(t);
    if (monitors_.store_fields) rec_.fields.push_back(field);
    if (rec_.scheme == Scheme::LawsonRK4) {
      const SpectralField u = real_part(field);
      if (field.finite()) {
        rec_.reports.push_back(energy(field, params_));
      } else {
        rec_.reports.push_back(EnergyReport{NAN, NAN, NAN, NAN, NAN, {NAN, NAN, NAN}});
      }
      rec_.mass.push_back(u.l2_norm_sq());
      rec_.real_l2.push_back(u.l2_norm());
      rec_.potential_integral.push_back(potential_integral(u));
    } else {
      rec_.mass.push_back(field.l2_norm_sq());
      rec_.real_l2.push_back(field.l2_norm());
      rec_.potential_integral.push_back(potential_integral(field));
    }
    rec_.h1_norm.push_back(sobolev_norm(field, 1.0));
    if (monitors_.exterior_radius) {
      rec_.exterior.push_back(rec_.scheme == Scheme::LawsonRK4 ? exterior_energy(field, *monitors_.exterior_radius)
                                                               : NAN);
    }
  }

 private:
  TrajectoryRecord& rec_;
  const NonlinearityParams& params_;
  const Monitors& monitors_;
};

}  // namespace

TrajectoryRecord evolve(const SpectralField& v0, double T, const StepperConfig& config,
                        const NonlinearityParams& params, const Monitors& monitors) {
  validate(config);
  if (!(T > 0.0)) throw Error("evolve: T must be positive");
  const long steps = std::lround(T / config.dt);
  if (steps < 1 || std::abs(steps * config.dt - T) > 1e-9 * T)
    throw Error("evolve: T must be an integer multiple of dt");
  if (monitors.stride < 1 || steps % monitors.stride != 0)
    throw Error("evolve: snapshot stride must divide the step count");
  if (params.dim != v0.grid().dim()) throw Error("evolve: nonlinearity and grid dimensions differ");

  const GridSpec& g = v0.grid();
  TrajectoryRecord rec;
  rec.dim = g.dim();
  rec.scheme = config.scheme;
  Recorder recorder(rec, params, monitors);

  std::vector<double> weight(g.size());
  for_each_frequency(g, [&](std::size_t i, const Vec& xi) { weight[i] = 1.0 + norm_sq(xi); });

  const bool lawson = config.scheme == Scheme::LawsonRK4;
  SpectralField state = lawson ? v0.to_frequency() : v0.to_physical();
  recorder.record(0.0, state);
  const double h1_initial = rec.h1_norm.front();
  const double limit = config.blowup_threshold * h1_initial;

  std::optional<NlkgStepper> kg;
  std::optional<NlsStepper> nls;
  if (lawson) {
    kg.emplace(g, params, config.dt, config.dealias, config.linear);
  } else {
    nls.emplace(g, params, config.dt, config.linear);
  }

  for (long n = 1; n <= steps; ++n) {
    if (lawson) {
      kg->step(state.values());
    } else {
      nls->step(state.values());
    }
    const double t = n * config.dt;
    bool halt = false;
    if (!all_finite(state.values())) {
      rec.nan = true;
      rec.nan_time = t;
      halt = true;
    } else if (h1_initial > 0.0) {
      const bool check = lawson || n % monitors.stride == 0;
      if (check) {
        const double h1 = lawson ? h1_from_frequency(state.values(), weight, g.box_volume())
                                 : sobolev_norm(state, 1.0);
        if (h1 > limit) {
          rec.blowup = true;
          rec.blowup_time = t;
          halt = true;
        }
      }
    }
    if (halt || n % monitors.stride == 0) recorder.record(t, state);
    if (halt) break;
  }
  return rec;
}

void TrajectoryRecord::write_csv(std::ostream& os) const {
  const bool kg = scheme == Scheme::LawsonRK4;
  os << "t,mass";
  if (kg) os << ',' << EnergyReport::csv_header(dim);
  os << ",h1,potential_integral,flags\n";
  os.precision(17);
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << times[i] << ',' << mass[i];
    if (kg) os << ',' << reports[i].csv_row(dim);
    os << ',' << h1_norm[i] << ',' << potential_integral[i] << ',';
    const bool last = i + 1 == times.size();
    if (last && nan) {
      os << "nan";
    } else if (last && blowup) {
      os << "blowup";
    }
    os << '\n';
  }
}

double scattering_size(const TrajectoryRecord& traj) {
  double s = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double dt = traj.times[i] - traj.times[i - 1];
    if (!(dt > 0.0)) throw Error("scattering_size: snapshot times must increase");
    s += 0.5 * dt * (traj.potential_integral[i] + traj.potential_integral[i - 1]);
  }
  return s;
}

}  // namespace kglab
