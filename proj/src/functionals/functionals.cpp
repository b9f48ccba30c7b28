#include "kglab/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"

namespace kglab {
namespace {

SpectralField imag_part(const SpectralField& f) {
  SpectralField out = f.to_physical();
  for (auto& c : out.values()) c = Complex(c.imag(), 0.0);
  return out;
}

void require_real(const SpectralField& f, const char* what) {
  const SpectralField p = f.to_physical();
  for (const auto& c : p.values()) {
    if (std::abs(c.imag()) > 1e-10) throw Error(std::string(what) + ": field is not real-valued");
  }
}

// Spectral partial derivative along one axis; the Nyquist row is dropped so real
// fields have real derivatives.
SpectralField partial(const SpectralField& f, int axis) {
  const GridSpec& g = f.grid();
  SpectralField out = f.to_frequency();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int idx = g.unflatten(i)[axis];
    const double k = (idx == g.n() / 2) ? 0.0 : g.wavenumber(idx);
    out[i] *= Complex(0.0, k);
  }
  return out.to_physical();
}

double integral_of_power(const SpectralField& f, double p) {
  const SpectralField phys = f.to_physical();
  double sum = 0.0;
  for (const auto& c : phys.values()) sum += std::pow(std::abs(c), p);
  return sum * f.grid().cell_volume();
}

}  // namespace

std::string EnergyReport::csv_header(int dim) {
  std::string h = "kinetic,gradient,mass,potential,total";
  for (int a = 0; a < dim; ++a) h += ",P" + std::to_string(a);
  return h;
}

std::string EnergyReport::csv_row(int dim) const {
  std::ostringstream os;
  os.precision(17);
  os << kinetic << ',' << gradient << ',' << mass << ',' << potential << ',' << total;
  for (int a = 0; a < dim; ++a) os << ',' << momentum[a];
  return os.str();
}

RealPair split_first_order(const SpectralField& v) {
  SpectralField u = real_part(v);
  SpectralField u_t = real_part(apply_multiplier(imag_part(v), bracket_power(1.0)).to_physical());
  return {std::move(u), std::move(u_t)};
}

SpectralField join_first_order(const SpectralField& u, const SpectralField& u_t) {
  SpectralField w = apply_multiplier(u_t, bracket_power(-1.0)).to_physical();
  SpectralField v = u.to_physical();
  for (std::size_t i = 0; i < v.grid().size(); ++i) v[i] = Complex(v[i].real(), w[i].real());
  return v;
}

double potential_integral(const SpectralField& f) {
  const int d = f.grid().dim();
  return integral_of_power(f, 2.0 * (d + 2) / d);
}

Vec momentum(const SpectralField& u, const SpectralField& u_t) {
  require_real(u, "momentum");
  require_real(u_t, "momentum");
  const GridSpec& g = u.grid();
  const SpectralField ut = u_t.to_physical();
  Vec p{0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim(); ++a) {
    const SpectralField du = partial(u, a);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += ut[i].real() * du[i].real();
    p[a] = sum * g.cell_volume();
  }
  return p;
}

EnergyReport energy(const SpectralField& u, const SpectralField& u_t, const NonlinearityParams& params) {
  const int d = u.grid().dim();
  EnergyReport r;
  r.kinetic = 0.5 * u_t.l2_norm_sq();
  r.gradient = 0.5 * gradient_norm_sq(u);
  r.mass = 0.5 * u.l2_norm_sq();
  r.potential = params.mu * d / (2.0 * (d + 2)) * potential_integral(u);
  r.total = r.kinetic + r.gradient + r.mass + r.potential;
  r.momentum = momentum(u, u_t);
  return r;
}

EnergyReport energy(const SpectralField& v, const NonlinearityParams& params) {
  const RealPair pair = split_first_order(v);
  return energy(pair.u, pair.u_t, params);
}

double energy_first_order(const SpectralField& v, const NonlinearityParams& params) {
  const int d = v.grid().dim();
  const double s1 = sobolev_norm(v, 1.0);
  return 0.5 * s1 * s1 + params.mu * d / (2.0 * (d + 2)) * potential_integral(real_part(v));
}

double k_functional(const RadialNorms& n, int dim, double alpha, double beta, int mu) {
  const double a = 2 * alpha - (dim - 2) * beta;
  const double b = 2 * alpha - dim * beta;
  if (a < 0.0 || b < 0.0 || (alpha == 0.0 && beta == 0.0))
    throw Error("k_functional: (alpha, beta) outside the admissible parameter domain");
  const double c = alpha - dim * dim * beta / (2.0 * (dim + 2));
  return 0.5 * a * n.gradient + 0.5 * b * n.mass + mu * c * n.potential;
}

double k_functional(const SpectralField& phi, double alpha, double beta, const NonlinearityParams& params) {
  RadialNorms n;
  n.gradient = gradient_norm_sq(phi);
  n.mass = phi.l2_norm_sq();
  n.potential = potential_integral(phi);
  return k_functional(n, phi.grid().dim(), alpha, beta, params.mu);
}

double k0(const SpectralField& phi, const NonlinearityParams& params) { return k_functional(phi, 1.0, 0.0, params); }

double k1(const SpectralField& phi, const NonlinearityParams& params) {
  return k_functional(phi, phi.grid().dim(), 2.0, params);
}

double threshold_energy(const RadialProfile& q) {
  const RadialNorms n = q.norms();
  return 0.5 * n.gradient + 0.5 * n.mass - q.dim / (2.0 * (q.dim + 2)) * n.potential;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

ThresholdReport threshold_predicates(const SpectralField& u0, const SpectralField& u1, const RadialProfile& q,
                                     const NonlinearityParams& params) {
  if (params.mu != -1) throw Error("threshold_predicates: defined for the focusing sign only");
  ThresholdReport r;
  r.energy = energy(u0, u1, params).total;
  r.threshold = threshold_energy(q);
  r.k0 = k0(u0, params);
  r.mass = u0.l2_norm_sq();
  r.q_mass = q.norms().mass;
  r.below_energy = r.energy < r.threshold;
  r.k0_sign = r.k0 > 0.0 ? 1 : (r.k0 < 0.0 ? -1 : 0);
  r.mass_below = r.mass < r.q_mass;
  if (!r.below_energy) {
    r.consistent = Verdict::Pass;
  } else if (r.mass_below == (r.k0 >= 0.0)) {
    r.consistent = Verdict::Pass;
  } else if (std::abs(r.k0) <= 1e-6 || std::abs(r.mass - r.q_mass) <= 1e-6) {
    r.consistent = Verdict::Indeterminate;
  } else {
    r.consistent = Verdict::Fail;
  }
  return r;
}

bool is_admissible(double q, double r, int dim, bool sharp) {
  if (!(q >= 2.0) || !(r >= 2.0)) return false;
  if (q == 2.0 && std::isinf(r) && dim == 2) return false;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  const double upper = 0.5 * dim * (0.5 - inv_r);
  constexpr double tol = 1e-12;
  if (sharp) return std::abs(inv_q - upper) <= tol;
  const double lower = 0.5 * (dim - 1) * (0.5 - inv_r);
  return inv_q >= lower - tol && inv_q <= upper + tol;
}

}  // namespace kglab
