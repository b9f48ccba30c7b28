#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/projectors.hpp"
#include "kglab/symmetry.hpp"

namespace kglab {
namespace {

double power_sum(std::span<const Complex> values, double p, double cell) {
  double s = 0.0;
  for (const auto& c : values) s += std::pow(std::abs(c), p);
  return s * cell;
}

// Relative change between two reported values; tiny pairs are skipped.
double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-10) return 0.0;
  return std::abs(a - b) / scale;
}

double certificate(const LedgerAccumulator& ff, const LedgerAccumulator& fb, const LedgerAccumulator& cf,
                   const LedgerAccumulator& cb, bool ledger) {
  double worst = std::max(
      relative_change(LedgerAccumulator::eps_sup(ff, fb), LedgerAccumulator::eps_sup(cf, cb)),
      relative_change(LedgerAccumulator::eps_lp(ff, fb), LedgerAccumulator::eps_lp(cf, cb)));
  if (ledger) {
    const LedgerValues a = LedgerAccumulator::ledger(ff, fb);
    const LedgerValues b = LedgerAccumulator::ledger(cf, cb);
    for (auto [x, y] : {std::pair{a.e1, b.e1}, {a.e21, b.e21}, {a.e22, b.e22}, {a.e23, b.e23},
                        {a.e3_sup, b.e3_sup}, {a.e3_lp, b.e3_lp}})
      worst = std::max(worst, relative_change(x, y));
  }
  return worst;
}

}  // namespace

LedgerAccumulator::LedgerAccumulator(const GridSpec& nls_grid, const NonlinearityParams& params, double lambda,
                                     double theta, bool ledger, bool linear)
    : grid_(nls_grid),
      params_(params),
      lambda_(lambda),
      theta_(theta),
      ledger_(ledger),
      linear_(linear),
      cd_(c_d_gamma(params.dim)),
      p_(params.potential_exponent()),
      p_dual_(2.0 * (params.dim + 2) / (params.dim + 4)),
      bracket_(nls_grid.size()),
      kg_phase_(nls_grid.size()),
      e1_symbol_(nls_grid.size()),
      projector_(low_pass_table(nls_grid, std::pow(lambda, 2.0 * theta))),
      duhamel_(nls_grid.size()),
      previous_integrand_(nls_grid.size()) {
  if (params.dim != nls_grid.dim()) throw Error("LedgerAccumulator: dimension mismatch");
  const double l2 = lambda * lambda;
  for_each_frequency(nls_grid, [&](std::size_t i, const Vec& xi) {
    const double s = norm_sq(xi);
    const double u = s / l2;
    bracket_[i] = std::sqrt(1.0 + u);
    kg_phase_[i] = scaled_kg_phase(s, lambda);
    const double root = std::sqrt(1.0 + u) + 1.0;
    e1_symbol_[i] = std::sqrt(bracket_[i]) * s * u / (2.0 * root * root);
  });
}

void LedgerAccumulator::add(double tau, const SpectralField& w, const SpectralField* kg) {
  if (!started_ && tau != 0.0) throw Error("LedgerAccumulator: first sample must be at tau = 0");
  if (started_ && !(std::abs(tau) > std::abs(last_tau_))) throw Error("LedgerAccumulator: samples must move outward");
  if (w.grid() != grid_) throw Error("LedgerAccumulator: sample is not on the Schroedinger grid");

  const std::size_t n = grid_.size();
  const double cell = grid_.cell_volume();
  const double box = grid_.box_volume();
  const double s = lambda_ * lambda_ * tau;
  const Complex rot = std::polar(1.0, -s);

  const SpectralField w_phys = w.to_physical();
  SpectralField w_proj = w.to_frequency();
  for (std::size_t i = 0; i < n; ++i) w_proj[i] *= projector_[i];
  const SpectralField w_proj_phys = w_proj.to_physical();

  Sample smp;
  boundary_fraction_ = std::max(boundary_fraction_, boundary_mass_fraction(w_phys));
  if (kg) {
    const SpectralField v = undilate_from_kg(*kg, grid_, lambda_).to_physical();
    boundary_fraction_ = std::max(boundary_fraction_, boundary_mass_fraction(v));
    CVector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = Complex((v[i] - rot * w_proj_phys[i]).real(), 0.0);
    eps_sup_ = std::max(eps_sup_, std::sqrt(power_sum(diff, 2.0, cell)));
    smp.eps_lp_density = power_sum(diff, p_, cell);
  }

  if (ledger_) {
    double e1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) e1 += e1_symbol_[i] * e1_symbol_[i] * std::norm(w_proj[i]);
    smp.e1_density = std::sqrt(e1 * box);

    if (!linear_) {
      const int d = params_.dim;
      CVector fw(n), fw_hat(n), tmp(n), phys(n);
      for (std::size_t i = 0; i < n; ++i) fw[i] = f_complex(w_phys[i], d);
      fft_forward(grid_, fw, fw_hat);

      for (std::size_t i = 0; i < n; ++i) tmp[i] = (bracket_[i] - 1.0) * projector_[i] * fw_hat[i];
      fft_inverse(grid_, tmp, phys);
      smp.e21_density = std::pow(cd_, p_dual_) * power_sum(phys, p_dual_, cell);

      for (std::size_t i = 0; i < n; ++i) tmp[i] = (projector_[i] - 1.0) * fw_hat[i];
      fft_inverse(grid_, tmp, phys);
      smp.e22_density = std::pow(cd_, p_dual_) * power_sum(phys, p_dual_, cell);

      // Resonant remainder R = f(Re(e^{-is} W)) - e^{-is} C_d f(W) with W = P w.
      for (std::size_t i = 0; i < n; ++i) {
        const Complex fW = f_complex(w_proj_phys[i], d);
        tmp[i] = cd_ * (fw[i] - fW);
        phys[i] = f_real(rot * w_proj_phys[i], d) - rot * cd_ * fW;
      }
      smp.e23_density = power_sum(tmp, p_dual_, cell);

      CVector r_hat(n);
      fft_forward(grid_, phys, r_hat);
      CVector integrand(n);
      for (std::size_t i = 0; i < n; ++i)
        integrand[i] = static_cast<double>(params_.mu) * std::polar(1.0, s + tau * kg_phase_[i]) / bracket_[i] *
                       r_hat[i];
      if (started_) {
        const double dsigma = tau - last_tau_;
        for (std::size_t i = 0; i < n; ++i)
          duhamel_[i] += 0.5 * dsigma * (previous_integrand_[i] + integrand[i]);
      }
      previous_integrand_ = std::move(integrand);

      double sup = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sup += bracket_[i] * std::norm(duhamel_[i]);
        tmp[i] = std::polar(1.0, -s - tau * kg_phase_[i]) * duhamel_[i];
      }
      e3_sup_ = std::max(e3_sup_, std::sqrt(sup * box));
      fft_inverse(grid_, tmp, phys);
      smp.e3_lp_density = power_sum(phys, p_, cell);
    }
  }
  integrate(smp, tau - last_tau_);
  last_tau_ = tau;
  started_ = true;
}

void LedgerAccumulator::integrate(const Sample& s, double step) {
  if (started_) {
    const double h = 0.5 * std::abs(step);
    eps_lp_ += h * (previous_.eps_lp_density + s.eps_lp_density);
    e1_ += h * (previous_.e1_density + s.e1_density);
    e21_ += h * (previous_.e21_density + s.e21_density);
    e22_ += h * (previous_.e22_density + s.e22_density);
    e23_ += h * (previous_.e23_density + s.e23_density);
    e3_lp_ += h * (previous_.e3_lp_density + s.e3_lp_density);
  }
  previous_ = s;
}

LedgerValues LedgerAccumulator::ledger(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd) {
  const double pd = 1.0 / fwd.p_dual_;
  LedgerValues out;
  out.e1 = fwd.e1_ + bwd.e1_;
  out.e21 = std::pow(fwd.e21_ + bwd.e21_, pd);
  out.e22 = std::pow(fwd.e22_ + bwd.e22_, pd);
  out.e23 = std::pow(fwd.e23_ + bwd.e23_, pd);
  out.e3_sup = std::max(fwd.e3_sup_, bwd.e3_sup_);
  out.e3_lp = std::pow(fwd.e3_lp_ + bwd.e3_lp_, 1.0 / fwd.p_);
  return out;
}

double LedgerAccumulator::eps_sup(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd) {
  return std::max(fwd.eps_sup_, bwd.eps_sup_);
}

double LedgerAccumulator::eps_lp(const LedgerAccumulator& fwd, const LedgerAccumulator& bwd) {
  return std::pow(fwd.eps_lp_ + bwd.eps_lp_, 1.0 / fwd.p_);
}

LedgerValues error_ledger(const NlsWindow& window, double lambda, double theta, const NonlinearityParams& params,
                          bool linear) {
  const auto zero = std::find(window.times.begin(), window.times.end(), 0.0);
  if (zero == window.times.end()) throw Error("error_ledger: window has no sample at tau = 0");
  const std::size_t i0 = static_cast<std::size_t>(zero - window.times.begin());
  LedgerAccumulator fwd(window.grid, params, lambda, theta, true, linear);
  LedgerAccumulator bwd(window.grid, params, lambda, theta, true, linear);
  for (std::size_t i = i0; i < window.times.size(); ++i) fwd.add(window.times[i], window.fields[i], nullptr);
  for (std::size_t i = i0 + 1; i-- > 0;) bwd.add(window.times[i], window.fields[i], nullptr);
  return LedgerAccumulator::ledger(fwd, bwd);
}

ErrorLedger ledger_sweep(const SpectralField& w0, const std::vector<double>& lambdas, double theta, double t_mid,
                         double dt_kg, const NonlinearityParams& params, bool linear) {
  if (lambdas.empty()) throw Error("ledger_sweep: empty lambda list");
  const double top = *std::max_element(lambdas.begin(), lambdas.end());
  std::vector<long> every;
  for (double l : lambdas) {
    const double r = top / l;
    const long k = std::lround(r * r);
    if (!is_dyadic(l) || std::abs(k - r * r) > 1e-9) throw Error("ledger_sweep: lambda values must be dyadic");
    every.push_back(k);
  }
  const double dt = dt_kg / (top * top);
  const long steps = std::lround(t_mid / dt);
  if (std::abs(steps * dt - t_mid) > 1e-9 * t_mid) throw Error("ledger_sweep: t_mid * lambda^2 must be a multiple of dt_kg");
  if (steps % every.front() || steps % every.back()) throw Error("ledger_sweep: sampling does not divide the step count");

  std::vector<LedgerAccumulator> fwd, bwd;
  for (double l : lambdas) {
    fwd.emplace_back(w0.grid(), params, l, theta, true, linear);
    bwd.emplace_back(w0.grid(), params, l, theta, true, linear);
  }
  for (int dir : {1, -1}) {
    auto& acc = dir > 0 ? fwd : bwd;
    NlsStepper nls(w0.grid(), params, dir * dt, linear);
    SpectralField w = w0.to_physical();
    for (auto& a : acc) a.add(0.0, w, nullptr);
    for (long n = 1; n <= steps; ++n) {
      nls.step(w.values());
      if (!w.finite()) throw Error("ledger_sweep: NLS solution is not finite at tau = " + std::to_string(dir * n * dt));
      for (std::size_t j = 0; j < acc.size(); ++j)
        if (n % every[j] == 0) acc[j].add(dir * n * dt, w, nullptr);
    }
  }
  ErrorLedger out;
  out.lambdas = lambdas;
  for (std::size_t j = 0; j < lambdas.size(); ++j) out.values.push_back(LedgerAccumulator::ledger(fwd[j], bwd[j]));
  if (lambdas.size() >= 3) {
    auto slope = [&](double LedgerValues::*m) -> double {
      std::vector<double> ys;
      for (const auto& v : out.values) {
        if (!(v.*m > 0.0)) return NAN;
        ys.push_back(v.*m);
      }
      return rate_fit(lambdas, ys).slope;
    };
    LedgerValues s;
    s.e1 = slope(&LedgerValues::e1);
    s.e21 = slope(&LedgerValues::e21);
    s.e22 = slope(&LedgerValues::e22);
    s.e23 = slope(&LedgerValues::e23);
    s.e3_sup = slope(&LedgerValues::e3_sup);
    s.e3_lp = slope(&LedgerValues::e3_lp);
    out.slopes = s;
  }
  return out;
}

void validate(const LimitRunConfig& c, const RadialProfile* q) {
  if (!c.phi) throw Error("limit: no datum");
  if (!(c.theta > 0.0 && c.theta <= 1.0 / 16.0))
    throw Error("limit: theta must lie in (0, 1/16], got " + std::to_string(c.theta));
  if (c.lambdas.empty()) throw Error("limit: lambda list is empty");
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    const double l = c.lambdas[i];
    if (!is_dyadic(l)) throw Error("limit: lambda values must be dyadic, got " + std::to_string(l));
    if (i && !(l > c.lambdas[i - 1])) throw Error("limit: lambda list must be increasing");
    if (!(std::pow(l, 2.0 * c.theta) < c.nls_grid.nyquist()))
      throw Error("limit: projector cutoff lambda^{2 theta} reaches the grid Nyquist for lambda = " +
                  std::to_string(l));
  }
  if (!(c.t_mid > 0.0)) throw Error("limit: t_mid must be positive");
  if (c.mu != 1 && c.mu != -1) throw Error("limit: mu must be +1 or -1");
  if (!(c.dt_kg > 0.0)) throw Error("limit: dt_kg must be positive");
  if (c.stride < 1) throw Error("limit: stride must be >= 1");
  if (c.jobs < 1) throw Error("limit: jobs must be >= 1");
  if (!(c.blowup_threshold > 1.0)) throw Error("limit: blow-up threshold must exceed 1");
  if (c.mu == -1) {
    if (!q) throw Error("limit: focusing runs need the ground state");
    const double bound = nls_ground_mass(*q);
    const double mass = SpectralField::sample(c.nls_grid, c.phi).l2_norm();
    if (!(mass < bound))
      throw Error("limit: focusing datum violates the mass bound (" + std::to_string(mass) +
                  " >= " + std::to_string(bound) + ")");
  }
}

LimitPoint run_limit_point(const LimitRunConfig& c, double lambda) {
  const GridSpec& ng = c.nls_grid;
  const GridSpec kg_grid = kg_grid_for(ng, lambda);
  const NonlinearityParams params = make_nonlinearity(ng.dim(), c.mu);
  LimitPoint out;
  out.lambda = lambda;

  const SpectralField v0 = build_profile(c.phi, lambda, c.theta, kg_grid, c.strict);
  const SpectralField w0 = SpectralField::sample(ng, c.phi);
  const SpectralField exact = dilate_closed_form(c.phi, lambda, kg_grid);
  out.projector_defect = (v0 - exact).l2_norm() / w0.l2_norm();

  const double dt_nls = c.dt_kg / (lambda * lambda);
  const long steps = std::lround(c.t_mid / dt_nls);
  if (std::abs(steps * dt_nls - c.t_mid) > 1e-9 * c.t_mid)
    throw Error("limit: t_mid * lambda^2 must be a multiple of dt_kg");
  if (steps % (2L * c.stride)) throw Error("limit: twice the stride must divide the step count");

  const double kg_h1 = sobolev_norm(v0, 1.0);
  const double nls_h1 = sobolev_norm(w0, 1.0);

  std::array<LedgerAccumulator, 4> acc{
      LedgerAccumulator(ng, params, lambda, c.theta, c.ledger, c.linear),
      LedgerAccumulator(ng, params, lambda, c.theta, c.ledger, c.linear),
      LedgerAccumulator(ng, params, lambda, c.theta, c.ledger, c.linear),
      LedgerAccumulator(ng, params, lambda, c.theta, c.ledger, c.linear)};
  for (int dir : {1, -1}) {
    LedgerAccumulator& fine = acc[dir > 0 ? 0 : 1];
    LedgerAccumulator& coarse = acc[dir > 0 ? 2 : 3];
    NlkgStepper kg(kg_grid, params, dir * c.dt_kg, c.dealias, c.linear);
    NlsStepper nls(ng, params, dir * dt_nls, c.linear);
    SpectralField v = v0.to_frequency();
    SpectralField w = w0.to_physical();
    fine.add(0.0, w, &v);
    coarse.add(0.0, w, &v);
    for (long n = 1; n <= steps; ++n) {
      kg.step(v.values());
      nls.step(w.values());
      if (n % c.stride) continue;
      const double tau = dir * n * dt_nls;
      std::string flag;
      if (!v.finite() || !w.finite()) {
        flag = "nan";
      } else if (sobolev_norm(v, 1.0) > c.blowup_threshold * kg_h1) {
        flag = "blowup-kg";
      } else if (sobolev_norm(w, 1.0) > c.blowup_threshold * nls_h1) {
        flag = "blowup-nls";
      }
      if (!flag.empty()) {
        out.flagged = true;
        out.flag = flag + " at tau = " + std::to_string(tau);
        return out;
      }
      fine.add(tau, w, &v);
      if (n % (2L * c.stride) == 0) coarse.add(tau, w, &v);
    }
  }
  out.eps_sup = LedgerAccumulator::eps_sup(acc[0], acc[1]);
  out.eps_lp = LedgerAccumulator::eps_lp(acc[0], acc[1]);
  if (c.ledger) out.ledger = LedgerAccumulator::ledger(acc[0], acc[1]);
  out.stride_certificate = certificate(acc[0], acc[1], acc[2], acc[3], c.ledger);
  out.boundary_fraction = std::max(acc[0].boundary_fraction(), acc[1].boundary_fraction());
  return out;
}

LimitReport nls_limit_error(const LimitRunConfig& c, const RadialProfile* q) {
  validate(c, q);
  LimitReport report;
  report.datum_mass = SpectralField::sample(c.nls_grid, c.phi).l2_norm();
  if (c.mu == -1) report.mass_bound = nls_ground_mass(*q);

  report.points.resize(c.lambdas.size());
  std::vector<std::string> errors(c.lambdas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < c.lambdas.size();) {
      try {
        report.points[i] = run_limit_point(c, c.lambdas[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int jobs = std::min<int>(c.jobs, static_cast<int>(c.lambdas.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);

  const bool any_flag = std::any_of(report.points.begin(), report.points.end(), [](const auto& p) { return p.flagged; });
  if (report.points.size() < 3 || any_flag) return report;

  std::vector<double> ls;
  for (const auto& p : report.points) ls.push_back(p.lambda);
  auto fit = [&](auto get) -> std::optional<RateFit> {
    std::vector<double> ys;
    for (const auto& p : report.points) {
      const double y = get(p);
      if (!(y > 0.0) || !std::isfinite(y)) return std::nullopt;
      ys.push_back(y);
    }
    return rate_fit(ls, ys);
  };
  report.eps_sup_fit = fit([](const LimitPoint& p) { return p.eps_sup; });
  report.eps_lp_fit = fit([](const LimitPoint& p) { return p.eps_lp; });
  if (c.ledger) {
    auto slope = [&](double LedgerValues::*m) -> double {
      const auto f = fit([m](const LimitPoint& p) { return p.ledger.*m; });
      return f ? f->slope : NAN;
    };
    LedgerValues s;
    s.e1 = slope(&LedgerValues::e1);
    s.e21 = slope(&LedgerValues::e21);
    s.e22 = slope(&LedgerValues::e22);
    s.e23 = slope(&LedgerValues::e23);
    s.e3_sup = slope(&LedgerValues::e3_sup);
    s.e3_lp = slope(&LedgerValues::e3_lp);
    report.ledger_slopes = s;
  }
  return report;
}

}  // namespace kglab
