#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kglab/evolution.hpp"
#include "kglab/field.hpp"
#include "kglab/ground_state.hpp"
#include "kglab/nonlinearity.hpp"

namespace kglab {

// ---------------------------------------------------------------------------
// Rate fitting

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
};

/// Least-squares line through (log x, log y). Needs >= 3 points, all positive.
RateFit rate_fit(const std::vector<double>& xs, const std::vector<double>& ys);

// ---------------------------------------------------------------------------
// Profiles

/// Gaussian exp(-|x|^2 / (2 sigma^2)) scaled to the given amplitude.
ClosedForm gaussian(double amplitude, double sigma);
/// L2 norm of the Gaussian above in dimension d, in closed form.
double gaussian_l2(double amplitude, double sigma, int dim);

/// D_lambda P_{<=lambda^theta} phi sampled on `grid`. Since D_lambda carries
/// frequency xi to xi/lambda, this is the cutoff lambda^{theta-1} applied to
/// the exact dilation samples. In strict mode the boundary-layer warning of
/// the dilation becomes an error.
SpectralField build_profile(const ClosedForm& phi, double lambda, double theta, const GridSpec& grid,
                            bool strict = false);

// ---------------------------------------------------------------------------
// Grid pairing for the limit

/// The Klein-Gordon grid for scale lambda is the Schroedinger grid dilated by
/// lambda with the same N. D_lambda then maps samples to samples with the
/// factor lambda^{-d/2}, and lattice index k carries xi on the Schroedinger
/// grid and xi/lambda on the Klein-Gordon grid.
GridSpec kg_grid_for(const GridSpec& nls_grid, double lambda);
/// D_lambda of a Schroedinger-grid field as a Klein-Gordon-grid field.
SpectralField dilate_to_kg(const SpectralField& f, double lambda);
/// Inverse of dilate_to_kg.
SpectralField undilate_from_kg(const SpectralField& f, const GridSpec& nls_grid, double lambda);

// ---------------------------------------------------------------------------
// Stored NLS solution and the approximate solution built from it

/// NLS snapshots on [-T, T] at uniform spacing, times increasing.
struct NlsWindow {
  GridSpec grid;
  std::vector<double> times;
  std::vector<SpectralField> fields;
};

/// Solves the limit equation forward and backward from w0 over [-T, T] with
/// step dt, keeping every `stride`-th state.
NlsWindow solve_nls_window(const SpectralField& w0, double T, double dt, const NonlinearityParams& params,
                           int stride = 1, bool linear = false);

/// v~(t) = e^{-it} D_lambda (P_{<=lambda^{2 theta}} w)(t / lambda^2) for |t| <= T lambda^2,
/// glued to the free Klein-Gordon flow from the seams outside. Snapshots of w
/// are interpolated linearly in time; `interpolation_bound` reports the largest
/// half-difference of neighbouring snapshots, which bounds that error.
class ApproximateSolution {
 public:
  ApproximateSolution(const NlsWindow& window, double lambda, double theta, double t_mid,
                      double window_factor = 2.0);

  SpectralField operator()(double t) const;
  double seam_time() const { return t_mid_ * lambda_ * lambda_; }
  double window() const { return window_factor_ * seam_time(); }
  const GridSpec& kg_grid() const { return kg_grid_; }
  double interpolation_bound() const { return interpolation_bound_; }

 private:
  SpectralField middle(double t) const;

  std::vector<double> times_;
  std::vector<SpectralField> projected_;  // P_{<=lambda^{2 theta}} w, frequency side
  GridSpec nls_grid_;
  GridSpec kg_grid_;
  double lambda_;
  double t_mid_;
  double window_factor_;
  double interpolation_bound_ = 0.0;
};

// ---------------------------------------------------------------------------
// Error ledger

struct LedgerValues {
  double e1 = 0.0;       // L1_t H^{1/2}_x
  double e21 = 0.0;      // <grad> e_{2,1} in L^{2(d+2)/(d+4)}_{t,x}
  double e22 = 0.0;
  double e23 = 0.0;
  double e3_sup = 0.0;   // Duhamel term in L^inf_t H^{1/2}_x
  double e3_lp = 0.0;    // Duhamel term in L^{2(d+2)/d}_{t,x}
  double e3() const { return e3_sup + e3_lp; }
};

struct ErrorLedger {
  std::vector<double> lambdas;
  std::vector<LedgerValues> values;
  /// Fitted log-lambda slopes; absent when fewer than three scales were run.
  std::optional<LedgerValues> slopes;
};

/// Streams samples (tau, w(tau)) outward from tau = 0 in one time direction and
/// accumulates the ledger norms and the space-time comparison norms. Norms are
/// evaluated in Schroedinger coordinates, where all of them are scale invariant.
class LedgerAccumulator {
 public:
  /// With `linear` set the nonlinear ledger terms are identically zero.
  LedgerAccumulator(const GridSpec& nls_grid, const NonlinearityParams& params, double lambda, double theta,
                    bool ledger, bool linear = false);

  /// First call must be at tau = 0; later calls advance by a constant step.
  /// `kg` is the Klein-Gordon state as a Klein-Gordon-grid field, if available.
  void add(double tau, const SpectralField& w, const SpectralField* kg);

  /// Results combined over the directions accumulated into the two objects.
  static LedgerValues ledger(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd);
  static double eps_sup(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd);
  static double eps_lp(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd);
  double boundary_fraction() const { return boundary_fraction_; }

 private:
  struct Sample {
    double eps_lp_density = 0.0;
    double e1_density = 0.0;
    double e21_density = 0.0;
    double e22_density = 0.0;
    double e23_density = 0.0;
    double e3_lp_density = 0.0;
  };
  void integrate(const Sample& s, double step);

  GridSpec grid_;
  NonlinearityParams params_;
  double lambda_;
  double theta_;
  bool ledger_;
  bool linear_;
  double cd_;
  double p_;
  double p_dual_;
  std::vector<double> bracket_;      // <xi/lambda>
  std::vector<double> kg_phase_;     // lambda^2 (<xi/lambda> - 1)
  std::vector<double> e1_symbol_;    // <xi/lambda>^{1/2} |<xi/lambda> - 1 - |xi|^2/(2 lambda^2)| lambda^2
  std::vector<double> projector_;    // phi(xi / lambda^{2 theta})
  CVector duhamel_;                  // G^ in Schroedinger coordinates
  CVector previous_integrand_;
  bool started_ = false;
  double last_tau_ = 0.0;
  Sample previous_;
  double eps_sup_ = 0.0;
  double e3_sup_ = 0.0;
  double boundary_fraction_ = 0.0;
  // Running trapezoid sums.
  double eps_lp_ = 0.0, e1_ = 0.0, e21_ = 0.0, e22_ = 0.0, e23_ = 0.0, e3_lp_ = 0.0;
};

/// Ledger at every scale from one NLS solve on [-T, T], streamed rather than
/// stored. The step is dt_kg / lambda_max^2 and scale lambda is sampled every
/// (lambda_max / lambda)^2 steps, which is the Klein-Gordon step dt_kg.
ErrorLedger ledger_sweep(const SpectralField& w0, const std::vector<double>& lambdas, double theta, double t_mid,
                         double dt_kg, const NonlinearityParams& params, bool linear = false);

/// Ledger of a stored NLS solution at one scale.
/// The window must contain tau = 0 and be uniformly spaced.
LedgerValues error_ledger(const NlsWindow& window, double lambda, double theta, const NonlinearityParams& params,
                          bool linear = false);

// ---------------------------------------------------------------------------
// Limit harness

struct LimitRunConfig {
  ClosedForm phi;
  std::string datum = "gaussian";
  double theta = 1.0 / 16.0;
  std::vector<double> lambdas{4.0, 8.0, 16.0};
  double t_mid = 1.0;
  int mu = 1;
  GridSpec nls_grid;
  /// Klein-Gordon step; the Schroedinger step is dt_kg / lambda^2 so the two
  /// solvers advance in lockstep.
  double dt_kg = 0.01;
  /// Sample every `stride` steps; the certificate compares with 2 * stride.
  int stride = 1;
  bool dealias = true;
  double blowup_threshold = 10.0;
  bool linear = false;
  bool ledger = true;
  bool strict = false;
  /// Worker threads for independent scales.
  int jobs = 1;
};

/// Checks the run configuration; needs Q for the focusing mass condition.
void validate(const LimitRunConfig& config, const RadialProfile* q);

struct LimitPoint {
  double lambda = 0.0;
  bool flagged = false;
  std::string flag;
  double eps_sup = 0.0;  // sup_t ||Re(v - v~)||_{L2}
  double eps_lp = 0.0;   // ||Re(v - v~)||_{L^{2(d+2)/d}_{t,x}}
  LedgerValues ledger;
  /// Largest relative change of any reported norm when the sampling stride doubles.
  double stride_certificate = 0.0;
  /// Largest boundary-layer mass fraction seen in either solution.
  double boundary_fraction = 0.0;
  /// ||D_lambda P phi - D_lambda phi|| / ||phi|| for the initial datum.
  double projector_defect = 0.0;
};

struct LimitReport {
  std::vector<LimitPoint> points;
  std::optional<RateFit> eps_sup_fit;
  std::optional<RateFit> eps_lp_fit;
  std::optional<LedgerValues> ledger_slopes;
  double datum_mass = 0.0;   // ||phi||_{L2} on the Schroedinger grid
  double mass_bound = 0.0;   // (2 C_d)^{-d/4} ||Q||, focusing runs only
};

/// Runs the Klein-Gordon and limit solutions at one scale.
LimitPoint run_limit_point(const LimitRunConfig& config, double lambda);
/// Every configured scale, fits included. `q` is needed for focusing runs.
LimitReport nls_limit_error(const LimitRunConfig& config, const RadialProfile* q);

// ---------------------------------------------------------------------------
// Propagator convergence

struct PropagatorPoint {
  double lambda = 0.0;
  double error = 0.0;  // max over t of the L2 difference
  double worst_t = 0.0;
};

/// For each lambda, max over t of ||(e^{-i lambda^2 t (<xi/lambda> - 1)} P_{<=lambda^theta} - e^{-it|xi|^2/2}) g||.
std::vector<PropagatorPoint> propagator_convergence(const ClosedForm& g, const std::vector<double>& lambdas,
                                                    double theta, const std::vector<double>& times,
                                                    const GridSpec& grid);

// ---------------------------------------------------------------------------
// Focusing dichotomy

enum class DichotomyShape { GroundState, Gaussian };

struct DichotomyRow {
  double amplitude = 0.0;
  double energy_ratio = 0.0;  // E / E(Q, 0)
  double k0 = 0.0;
  bool in_scope = false;
  bool predicted_blowup = false;
  bool observed_blowup = false;
  double blowup_time = 0.0;
  bool concave = false;
  bool agree = true;
};

struct DichotomyConfig {
  GridSpec grid;
  double T = 20.0;
  double dt = 1e-3;
  int stride = 100;
  double blowup_threshold = 10.0;
  bool dealias = true;
};

/// Data a * shape with zero velocity. Rows with E >= E(Q, 0) are out of scope.
/// In scope, K_0 >= 0 must not flag; K_0 < 0 must flag with a concave
/// ||u||^{-2/d} up to the halt.
std::vector<DichotomyRow> dichotomy_scan(const std::vector<double>& amplitudes, DichotomyShape shape,
                                         const DichotomyConfig& config, const RadialProfile& q);

}  // namespace kglab
