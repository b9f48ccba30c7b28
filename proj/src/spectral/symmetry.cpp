#include "kglab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"

namespace kglab {

ClosedForm dilated(ClosedForm phi, double lambda, int dim) {
  if (!(lambda > 0.0)) throw Error("dilate: lambda must be positive");
  const double amp = std::pow(lambda, -0.5 * dim);
  return [phi = std::move(phi), lambda, amp](const Vec& x) {
    return amp * phi(Vec{x[0] / lambda, x[1] / lambda, x[2] / lambda});
  };
}

SpectralField dilate_closed_form(const ClosedForm& phi, double lambda, const GridSpec& grid) {
  SpectralField out = SpectralField::sample(grid, dilated(phi, lambda, grid.dim()));
  const double outside = boundary_mass_fraction(out);
  if (outside > 1e-6) {
    std::ostringstream msg;
    msg << "dilation by " << lambda << " leaves " << outside << " of the mass in the boundary layer";
    warn(msg.str());
  }
  return out;
}

SpectralField translate(const SpectralField& field, const Vec& shift) {
  return apply_multiplier(field, {[shift](const Vec& xi) { return std::polar(1.0, -dot(xi, shift)); }, "translate"});
}

Vec lorentz_frequency_map(const Vec& xi, const Vec& nu) {
  const double speed = norm(nu);
  if (speed == 0.0) return xi;
  Vec unit{nu[0] / speed, nu[1] / speed, nu[2] / speed};
  const double par = dot(xi, unit);
  const double gamma = std::sqrt(1.0 + speed * speed);
  const double br = bracket(xi);
  Vec out{};
  for (int a = 0; a < 3; ++a) {
    const double perp = xi[a] - par * unit[a];
    out[a] = perp + gamma * par * unit[a] - nu[a] * br;
  }
  return out;
}

namespace {

// (1/N) sum_{j<N} exp(-i eta x_j) with x_j = -L + j h, eta measured from a lattice point.
Complex dirichlet(double eta, double h, int n) {
  const double theta = eta * h;
  const double half = 0.5 * theta;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-13) return {1.0, 0.0};
  return std::polar(std::sin(n * half) / (n * s), half);
}

// Sign (-1)^k per axis converting between origin-at-x_0 and centered coefficients.
double parity(const std::array<int, 3>& k, int dim) {
  int total = 0;
  for (int a = 0; a < dim; ++a) total += k[a];
  return (total % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

BoostResult lorentz_boost(const SpectralField& field, const Vec& nu) {
  const GridSpec& g = field.grid();
  const int d = g.dim();
  if (d > 2 || g.n() > 256) throw Error("lorentz_boost: supported for d <= 2 and N <= 256 only");
  for (int a = d; a < 3; ++a)
    if (nu[a] != 0.0) throw Error("lorentz_boost: velocity has components beyond the grid dimension");

  const SpectralField in = field.to_frequency();

  // Centered coefficients on the input support.
  struct Mode {
    Vec xi;
    Complex a;
  };
  std::vector<Mode> support;
  double peak = 0.0;
  for (const auto& c : in.values()) peak = std::max(peak, std::abs(c));
  const double limit = g.nyquist() - 0.5 * g.frequency_step();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(in[i]) <= 1e-14 * peak) continue;
    auto idx = g.unflatten(i);
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < d; ++a) k[a] = g.wavenumber_index(idx[a]);
    const Vec xi = g.frequency(i);
    const Vec image = lorentz_frequency_map(xi, nu);
    for (int a = 0; a < d; ++a) {
      if (std::abs(image[a]) > limit) {
        std::ostringstream msg;
        msg << "lorentz_boost: image of frequency (" << xi[0] << ", " << xi[1] << ") leaves the lattice";
        throw Error(msg.str());
      }
    }
    support.push_back({xi, in[i] * parity(k, d)});
  }

  const Vec back{-nu[0], -nu[1], -nu[2]};
  const double h = g.spacing();
  SpectralField out(g, Representation::Frequency);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec target = g.frequency(i);
    const Vec source = lorentz_frequency_map(target, back);
    bool inside = true;
    for (int a = 0; a < d; ++a) inside = inside && std::abs(source[a]) <= g.nyquist();
    if (!inside) continue;
    Complex value{};
    for (const auto& m : support) {
      Complex kernel = dirichlet(source[0] - m.xi[0], h, g.n());
      if (d == 2) kernel *= dirichlet(source[1] - m.xi[1], h, g.n());
      value += m.a * kernel;
    }
    auto idx = g.unflatten(i);
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < d; ++a) k[a] = g.wavenumber_index(idx[a]);
    out[i] = value * (bracket(source) / bracket(target)) * parity(k, d);
  }

  const double before = sobolev_norm(in, 0.5);
  const double after = sobolev_norm(out, 0.5);
  BoostResult result{std::move(out), before > 0.0 ? std::abs(after - before) / before : 0.0};
  if (result.residual > 1e-6) {
    std::ostringstream msg;
    msg << "lorentz_boost: interpolation residual " << result.residual << " exceeds 1e-6";
    warn(msg.str());
  }
  return result;
}

SpectralField lorentz_boost_fourier(const SpectralField& field, const Vec& nu) {
  return lorentz_boost(field, nu).field;
}

}  // namespace kglab
