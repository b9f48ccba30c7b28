#include "kglab/ground_state.hpp"

#include <cmath>
#include <sstream>

#include "kglab/log.hpp"
#include "kglab/nonlinearity.hpp"

namespace kglab {
namespace {

enum class Outcome { CrossesZero, TurnsUp, Survives };

struct Shot {
  Outcome outcome = Outcome::Survives;
  std::vector<double> q;
  std::vector<double> dq;
};

double source(double q, int dim) {
  // Q - |Q|^{4/d} Q
  return q - f_real_scalar(q, dim);
}

Shot shoot(double q0, int dim, double h, std::size_t steps, bool store) {
  Shot shot;
  if (store) {
    shot.q.reserve(steps + 1);
    shot.dq.reserve(steps + 1);
    shot.q.push_back(q0);
    shot.dq.push_back(0.0);
  }
  // Series start at r = h: Q'' + (d-1)/r Q' = Q - Q^{1+4/d} gives Q''(0) = (Q0 - Q0^{1+4/d}) / d.
  const double c = source(q0, dim) / dim;
  double q = q0 + 0.5 * c * h * h;
  double p = c * h;
  if (store) {
    shot.q.push_back(q);
    shot.dq.push_back(p);
  }
  const double dm1 = dim - 1.0;
  auto rhs = [&](double r, double y, double z, double& dy, double& dz) {
    dy = z;
    dz = -dm1 / r * z + source(y, dim);
  };
  for (std::size_t i = 1; i < steps; ++i) {
    const double r = i * h;
    double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
    rhs(r, q, p, k1q, k1p);
    rhs(r + 0.5 * h, q + 0.5 * h * k1q, p + 0.5 * h * k1p, k2q, k2p);
    rhs(r + 0.5 * h, q + 0.5 * h * k2q, p + 0.5 * h * k2p, k3q, k3p);
    rhs(r + h, q + h * k3q, p + h * k3p, k4q, k4p);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (store) {
      shot.q.push_back(q);
      shot.dq.push_back(p);
    }
    if (q < 0.0) {
      shot.outcome = Outcome::CrossesZero;
      return shot;
    }
    if (p > 0.0) {
      shot.outcome = Outcome::TurnsUp;
      return shot;
    }
  }
  shot.outcome = Outcome::Survives;
  return shot;
}

bool too_big(Outcome o) { return o == Outcome::CrossesZero; }

// Decaying solution of g'' + (d-1)/r g' = g and its derivative.
double tail_shape(double r, int dim) {
  switch (dim) {
    case 1:
      return std::exp(-r);
    case 2:
      return std::cyl_bessel_k(0.0, r);
    default:
      return std::exp(-r) / r;
  }
}

double tail_slope(double r, int dim) {
  switch (dim) {
    case 1:
      return -std::exp(-r);
    case 2:
      return -std::cyl_bessel_k(1.0, r);
    default:
      return -std::exp(-r) * (1.0 / r + 1.0 / (r * r));
  }
}

double sphere_area(int dim) {
  switch (dim) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * M_PI;
    default:
      return 4.0 * M_PI;
  }
}

}  // namespace

double RadialProfile::value(double radius) const {
  radius = std::abs(radius);
  if (radius >= match_radius) {
    const std::size_t m = static_cast<std::size_t>(std::llround(match_radius / step));
    return q[m] * tail_shape(radius, dim) / tail_shape(match_radius, dim);
  }
  const std::size_t i = std::min(static_cast<std::size_t>(radius / step), r.size() - 2);
  const double t = (radius - r[i]) / step;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * q[i] + h10 * step * dq[i] + h01 * q[i + 1] + h11 * step * dq[i + 1];
}

double RadialProfile::derivative(double radius) const {
  const double sign = radius < 0.0 ? -1.0 : 1.0;
  radius = std::abs(radius);
  if (radius >= match_radius) {
    const std::size_t m = static_cast<std::size_t>(std::llround(match_radius / step));
    return sign * q[m] * tail_slope(radius, dim) / tail_shape(match_radius, dim);
  }
  const std::size_t i = std::min(static_cast<std::size_t>(radius / step), r.size() - 2);
  const double t = (radius - r[i]) / step;
  const double t2 = t * t;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1, d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  return sign * ((d00 * q[i] + d01 * q[i + 1]) / step + d10 * dq[i] + d11 * dq[i + 1]);
}

RadialNorms RadialProfile::norms() const {
  // Composite Simpson on an even number of intervals.
  const std::size_t intervals = (r.size() - 1) & ~std::size_t{1};
  const double p = 2.0 * (dim + 2) / dim;
  RadialNorms out;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double jac = std::pow(r[i], dim - 1);
    out.mass += w * jac * q[i] * q[i];
    out.gradient += w * jac * dq[i] * dq[i];
    out.potential += w * jac * std::pow(std::abs(q[i]), p);
  }
  const double scale = sphere_area(dim) * step / 3.0;
  out.mass *= scale;
  out.gradient *= scale;
  out.potential *= scale;
  return out;
}

double RadialProfile::ode_residual() const {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    const double second = (q[i + 1] - 2.0 * q[i] + q[i - 1]) / (step * step);
    const double first = (q[i + 1] - q[i - 1]) / (2.0 * step);
    const double res = second + (dim - 1.0) / r[i] * first - q[i] + f_real_scalar(q[i], dim);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

RadialProfile solve_ground_state(int dim, double step, double r_max) {
  if (dim < 1 || dim > 3) throw Error("solve_ground_state: dimension must be 1, 2 or 3");
  if (!(r_max >= 15.0)) throw Error("solve_ground_state: R_max must be >= 15");
  if (!(step > 0.0) || step > 1e-3 * r_max) throw Error("solve_ground_state: need 0 < h <= 1e-3 R_max");

  std::size_t steps = static_cast<std::size_t>(std::llround(r_max / step));
  if (steps % 2) ++steps;

  double lo = 1.0, hi = 10.0;
  if (too_big(shoot(lo, dim, step, steps, false).outcome) || !too_big(shoot(hi, dim, step, steps, false).outcome))
    throw Error("solve_ground_state: bisection bracket [1, 10] does not straddle the ground state");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (too_big(shoot(mid, dim, step, steps, false).outcome) ? hi : lo) = mid;
  }

  Shot below = shoot(lo, dim, step, steps, true);
  Shot above = shoot(hi, dim, step, steps, true);

  // Both bracketing shots track the ground state until the growing mode takes
  // over; match the linear tail where Q has decayed to 1e-5 Q0.
  const double level = 1e-5 * lo;
  std::size_t m = 0;
  const std::size_t common = std::min(below.q.size(), above.q.size());
  while (m < common && below.q[m] > level) ++m;
  if (m >= common) {
    std::ostringstream msg;
    msg << "solve_ground_state: profile did not decay to " << level << " before R_max = " << r_max
        << "; increase R_max";
    throw Error(msg.str());
  }
  if (std::abs(below.q[m] - above.q[m]) > 1e-9 * lo)
    throw Error("solve_ground_state: bracketing shots disagree at the match radius; reduce h");

  RadialProfile out;
  out.dim = dim;
  out.step = step;
  out.r_max = steps * step;
  out.q0 = lo;
  out.match_radius = m * step;
  out.r.resize(steps + 1);
  out.q.resize(steps + 1);
  out.dq.resize(steps + 1);
  const double anchor = below.q[m] / tail_shape(out.match_radius, dim);
  for (std::size_t i = 0; i <= steps; ++i) {
    out.r[i] = i * step;
    if (i <= m) {
      out.q[i] = below.q[i];
      out.dq[i] = below.dq[i];
    } else {
      out.q[i] = anchor * tail_shape(out.r[i], dim);
      out.dq[i] = anchor * tail_slope(out.r[i], dim);
    }
  }
  out.boundary_residual = std::abs(out.q.back());
  return out;
}

SpectralField embed_profile(const RadialProfile& q, const GridSpec& grid, double amplitude, double scale) {
  if (q.dim != grid.dim()) throw Error("embed_profile: profile and grid dimensions differ");
  return SpectralField::sample(grid, [&](const Vec& x) { return Complex(amplitude * q.value(scale * norm(x)), 0.0); });
}

double gn_ratio(const RadialNorms& f, int dim, double q_mass) {
  if (f.mass <= 0.0 || f.gradient <= 0.0) throw Error("gn_ratio: zero field");
  const double rhs = (dim + 2.0) / dim * std::pow(f.mass / q_mass, 2.0 / dim) * f.gradient;
  return f.potential / rhs;
}

double gn_ratio(const SpectralField& f, const RadialProfile& q) {
  const GridSpec& g = f.grid();
  if (g.dim() != q.dim) throw Error("gn_ratio: dimension mismatch");
  RadialNorms n;
  n.mass = f.l2_norm_sq();
  n.gradient = gradient_norm_sq(f);
  n.potential = std::pow(lp_norm(f, 2.0 * (g.dim() + 2) / g.dim()), 2.0 * (g.dim() + 2) / g.dim());
  return gn_ratio(n, g.dim(), q.norms().mass);
}

SpectralField nls_ground_profile(const RadialProfile& q, const GridSpec& grid, double t) {
  const double amp = std::pow(c_d_gamma(q.dim), -0.25 * q.dim);
  SpectralField w = embed_profile(q, grid, amp, std::sqrt(2.0));
  return std::polar(1.0, t) * std::move(w);
}

double nls_ground_mass(const RadialProfile& q) {
  return std::pow(2.0 * c_d_gamma(q.dim), -0.25 * q.dim) * std::sqrt(q.norms().mass);
}

}  // namespace kglab
