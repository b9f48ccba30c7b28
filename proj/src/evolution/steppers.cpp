#include <cmath>

#include "kglab/evolution.hpp"
#include "kglab/log.hpp"

namespace kglab {

void validate(const StepperConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw Error("stepper: dt must be positive");
  if (!(config.blowup_threshold > 1.0)) throw Error("stepper: blow-up threshold must exceed 1");
}

NlkgStepper::NlkgStepper(const GridSpec& grid, const NonlinearityParams& params, double dt, bool dealias,
                         bool linear)
    : grid_(grid),
      params_(params),
      dt_(dt),
      linear_(linear),
      half_(grid.size()),
      full_(grid.size()),
      force_(grid.size()),
      phys_(grid.size()),
      k1_(grid.size()),
      k2_(grid.size()),
      k3_(grid.size()),
      k4_(grid.size()),
      tmp_(grid.size()) {
  const std::vector<double> mask = dealias ? dealias_mask(grid) : std::vector<double>(grid.size(), 1.0);
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) {
    const double b = bracket(xi);
    half_[i] = std::polar(1.0, -0.5 * dt * b);
    full_[i] = std::polar(1.0, -dt * b);
    force_[i] = Complex(0.0, -params.mu * mask[i] / b);
  });
}

void NlkgStepper::nonlinear(std::span<const Complex> v_hat, std::span<Complex> out) {
  fft_inverse(grid_, v_hat, phys_);
  const int d = params_.dim;
  for (auto& c : phys_) c = Complex(f_real_scalar(c.real(), d), 0.0);
  fft_forward(grid_, phys_, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= force_[i];
}

void NlkgStepper::step(std::span<Complex> v) {
  const std::size_t n = v.size();
  if (linear_) {
    for (std::size_t i = 0; i < n; ++i) v[i] *= full_[i];
    return;
  }
  const double h = dt_;
  nonlinear(v, k1_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = half_[i] * (v[i] + 0.5 * h * k1_[i]);
  nonlinear(tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = half_[i] * v[i] + 0.5 * h * k2_[i];
  nonlinear(tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = full_[i] * v[i] + h * half_[i] * k3_[i];
  nonlinear(tmp_, k4_);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = full_[i] * v[i] +
           h / 6.0 * (full_[i] * k1_[i] + 2.0 * half_[i] * (k2_[i] + k3_[i]) + k4_[i]);
  }
}

NlsStepper::NlsStepper(const GridSpec& grid, const NonlinearityParams& params, double dt, bool linear)
    : grid_(grid),
      params_(params),
      dt_(dt),
      coupling_(params.mu * c_d_gamma(params.dim)),
      linear_(linear),
      linear_phase_(grid.size()),
      freq_(grid.size()) {
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) { linear_phase_[i] = std::polar(1.0, -0.5 * dt * norm_sq(xi)); });
}

void NlsStepper::nonlinear_half(std::span<Complex> w) const {
  const double p = 2.0 / params_.dim;
  const double tau = 0.5 * dt_ * coupling_;
  for (auto& c : w) {
    const double m2 = std::norm(c);
    if (m2 == 0.0) continue;
    c *= std::polar(1.0, -tau * std::pow(m2, p));
  }
}

void NlsStepper::step(std::span<Complex> w) {
  if (!linear_) nonlinear_half(w);
  fft_forward(grid_, w, freq_);
  for (std::size_t i = 0; i < freq_.size(); ++i) freq_[i] *= linear_phase_[i];
  fft_inverse(grid_, freq_, w);
  if (!linear_) nonlinear_half(w);
}

SpectralField step_nlkg(const SpectralField& v, double dt, const NonlinearityParams& params, bool dealias,
                        bool linear) {
  NlkgStepper stepper(v.grid(), params, dt, dealias, linear);
  SpectralField out = v.to_frequency();
  stepper.step(out.values());
  return out;
}

SpectralField step_nls(const SpectralField& w, double dt, const NonlinearityParams& params, bool linear) {
  NlsStepper stepper(w.grid(), params, dt, linear);
  SpectralField out = w.to_physical();
  stepper.step(out.values());
  return out;
}

}  // namespace kglab
