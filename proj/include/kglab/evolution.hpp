#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kglab/field.hpp"
#include "kglab/functionals.hpp"
#include "kglab/nonlinearity.hpp"

namespace kglab {

enum class Scheme { LawsonRK4, Strang };

struct StepperConfig {
  Scheme scheme = Scheme::LawsonRK4;
  double dt = 1e-3;
  /// 2/3-rule mask on every nonlinearity evaluation (Lawson only).
  bool dealias = true;
  /// Flag blow-up once the H1 norm exceeds this multiple of its initial value.
  double blowup_threshold = 10.0;
  /// Drop the nonlinear term.
  bool linear = false;
};

void validate(const StepperConfig& config);

/// Lawson-RK4 for i v_t - <grad> v = mu <grad>^{-1} |Re v|^{4/d} Re v, acting on
/// frequency coefficients in place. Tables are built once per (grid, dt).
class NlkgStepper {
 public:
  NlkgStepper(const GridSpec& grid, const NonlinearityParams& params, double dt, bool dealias, bool linear = false);

  void step(std::span<Complex> v_hat);
  double dt() const { return dt_; }
  const GridSpec& grid() const { return grid_; }

 private:
  void nonlinear(std::span<const Complex> v_hat, std::span<Complex> out);

  GridSpec grid_;
  NonlinearityParams params_;
  double dt_;
  bool linear_;
  std::vector<Complex> half_;   // exp(-i dt/2 <xi>)
  std::vector<Complex> full_;   // exp(-i dt <xi>)
  std::vector<Complex> force_;  // -i mu <xi>^{-1} * mask
  CVector phys_, k1_, k2_, k3_, k4_, tmp_;
};

/// Strang splitting for i w_t + (1/2) Lap w = mu C_d |w|^{4/d} w on physical samples.
/// Each substep preserves |w| or is unitary, so the discrete mass is conserved.
class NlsStepper {
 public:
  NlsStepper(const GridSpec& grid, const NonlinearityParams& params, double dt, bool linear = false);

  void step(std::span<Complex> w);
  double dt() const { return dt_; }

 private:
  void nonlinear_half(std::span<Complex> w) const;

  GridSpec grid_;
  NonlinearityParams params_;
  double dt_;
  double coupling_;  // mu C_d
  bool linear_;
  std::vector<Complex> linear_phase_;
  CVector freq_;
};

/// One step of each scheme on a field (builds the tables; use the stepper
/// classes in loops).
SpectralField step_nlkg(const SpectralField& v, double dt, const NonlinearityParams& params, bool dealias = true,
                        bool linear = false);
SpectralField step_nls(const SpectralField& w, double dt, const NonlinearityParams& params, bool linear = false);

/// Time series produced by evolve. Scalar series have one entry per snapshot.
struct TrajectoryRecord {
  int dim = 1;
  Scheme scheme = Scheme::LawsonRK4;
  std::vector<double> times;
  /// Snapshot fields, filled only when requested.
  std::vector<SpectralField> fields;
  /// Klein-Gordon energy reports (Lawson runs only).
  std::vector<EnergyReport> reports;
  /// ||u||^2 with u = Re v for Klein-Gordon, ||w||^2 for Schroedinger.
  std::vector<double> mass;
  /// ||Re v||_{L2} (Klein-Gordon) or ||w||_{L2}.
  std::vector<double> real_l2;
  std::vector<double> h1_norm;
  /// int |Re v|^{2(d+2)/d} (Klein-Gordon) or int |w|^{2(d+2)/d}.
  std::vector<double> potential_integral;
  /// Exterior energy beyond the monitored radius, when requested.
  std::vector<double> exterior;
  bool blowup = false;
  double blowup_time = 0.0;
  bool nan = false;
  double nan_time = 0.0;

  bool flagged() const { return blowup || nan; }
  void write_csv(std::ostream& os) const;
};

struct Monitors {
  /// Snapshot every `stride` steps; must divide the step count.
  int stride = 1;
  bool store_fields = false;
  std::optional<double> exterior_radius;
};

/// Fixed-step march to T with monitors at snapshots. Halts early on the
/// blow-up or NaN flag; the record is complete up to the halt.
TrajectoryRecord evolve(const SpectralField& v0, double T, const StepperConfig& config,
                        const NonlinearityParams& params, const Monitors& monitors = {});

/// Time trapezoid of the snapshot potential integrals.
double scattering_size(const TrajectoryRecord& traj);

struct ConcavityReport {
  std::vector<double> second_differences;
  bool all_negative = true;
};

/// Second differences of y(t_i) = ||Re v(t_i)||^{-2/d}; all_negative allows 1e-10 slack.
ConcavityReport concavity_diagnostic(const TrajectoryRecord& traj, int dim);

/// Integral of |u_t|^2 + |grad u|^2 + |u|^2 over |x| > R for a first-order field.
double exterior_energy(const SpectralField& v, double radius);
/// Per-snapshot exterior energy; needs stored fields.
std::vector<double> exterior_mass(const TrajectoryRecord& traj, double radius);

}  // namespace kglab
