#include <algorithm>
#include <cmath>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/projectors.hpp"

namespace kglab {

NlsWindow solve_nls_window(const SpectralField& w0, double T, double dt, const NonlinearityParams& params,
                           int stride, bool linear) {
  if (!(T > 0.0) || !(dt > 0.0)) throw Error("solve_nls_window: T and dt must be positive");
  const long steps = std::lround(T / dt);
  if (std::abs(steps * dt - T) > 1e-9 * T) throw Error("solve_nls_window: T must be a multiple of dt");
  if (stride < 1 || steps % stride) throw Error("solve_nls_window: stride must divide the step count");

  NlsWindow out;
  out.grid = w0.grid();
  std::vector<double> back_times;
  std::vector<SpectralField> back_fields;
  for (int dir : {-1, 1}) {
    NlsStepper stepper(w0.grid(), params, dir * dt, linear);
    SpectralField w = w0.to_physical();
    auto& times = dir < 0 ? back_times : out.times;
    auto& fields = dir < 0 ? back_fields : out.fields;
    if (dir > 0) {
      times.push_back(0.0);
      fields.push_back(w);
    }
    for (long n = 1; n <= steps; ++n) {
      stepper.step(w.values());
      if (n % stride == 0) {
        times.push_back(dir * n * dt);
        fields.push_back(w);
      }
    }
  }
  std::reverse(back_times.begin(), back_times.end());
  std::reverse(back_fields.begin(), back_fields.end());
  back_times.insert(back_times.end(), out.times.begin(), out.times.end());
  back_fields.insert(back_fields.end(), out.fields.begin(), out.fields.end());
  out.times = std::move(back_times);
  out.fields = std::move(back_fields);
  return out;
}

ApproximateSolution::ApproximateSolution(const NlsWindow& window, double lambda, double theta, double t_mid,
                                         double window_factor)
    : times_(window.times),
      nls_grid_(window.grid),
      kg_grid_(kg_grid_for(window.grid, lambda)),
      lambda_(lambda),
      t_mid_(t_mid),
      window_factor_(window_factor) {
  if (times_.size() < 2) throw Error("ApproximateSolution: needs at least two snapshots");
  if (times_.front() > -t_mid * (1 - 1e-12) || times_.back() < t_mid * (1 - 1e-12))
    throw Error("ApproximateSolution: snapshots must cover [-T, T]");
  if (!(window_factor >= 1.0)) throw Error("ApproximateSolution: window factor must be >= 1");
  const double cutoff = std::pow(lambda, 2.0 * theta);
  for (const auto& f : window.fields) projected_.push_back(low_pass(f, cutoff));
  for (std::size_t i = 1; i < projected_.size(); ++i)
    interpolation_bound_ = std::max(interpolation_bound_, 0.5 * (projected_[i] - projected_[i - 1]).l2_norm());
}

SpectralField ApproximateSolution::middle(double t) const {
  const double tau = t / (lambda_ * lambda_);
  auto it = std::upper_bound(times_.begin(), times_.end(), tau);
  std::size_t hi = static_cast<std::size_t>(std::clamp<long>(it - times_.begin(), 1, times_.size() - 1));
  const std::size_t lo = hi - 1;
  const double s = std::clamp((tau - times_[lo]) / (times_[hi] - times_[lo]), 0.0, 1.0);
  SpectralField w = projected_[lo];
  if (s > 0.0) {
    w *= Complex(1.0 - s, 0.0);
    w += Complex(s, 0.0) * projected_[hi];
  }
  return std::polar(1.0, -t) * dilate_to_kg(w, lambda_);
}

SpectralField ApproximateSolution::operator()(double t) const {
  const double seam = seam_time();
  if (std::abs(t) > window() * (1 + 1e-12)) throw Error("ApproximateSolution: time outside the harness window");
  if (std::abs(t) <= seam) return middle(t);
  const double edge = t > 0.0 ? seam : -seam;
  return free_propagate(middle(edge), t - edge, {PropagatorKind::KleinGordon, 1.0});
}

}  // namespace kglab
