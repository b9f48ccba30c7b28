#pragma once

#include <vector>

#include "kglab/field.hpp"

namespace kglab {

/// Radial integrals of a profile: omega_d int r^{d-1} (...) dr, with omega_1 = 2
/// so that d = 1 integrals are over the full line.
struct RadialNorms {
  double mass = 0.0;       // ||Q||_2^2
  double gradient = 0.0;   // ||grad Q||_2^2
  double potential = 0.0;  // int |Q|^{2(d+2)/d}
};

/// Radial ground state Q of Q'' + (d-1)/r Q' - Q + Q^{1+4/d} = 0.
///
/// Samples are uniform on [0, R_max]. Beyond the match radius the profile is
/// the decaying solution of the linearized equation, scaled to agree with the
/// shooting solution there.
struct RadialProfile {
  int dim = 1;
  double step = 0.0;
  double r_max = 0.0;
  double q0 = 0.0;
  double match_radius = 0.0;
  double boundary_residual = 0.0;
  std::vector<double> r;
  std::vector<double> q;
  std::vector<double> dq;

  /// Q(r) by cubic Hermite interpolation; the linear tail beyond R_max.
  double value(double radius) const;
  double derivative(double radius) const;

  RadialNorms norms() const;
  /// Max over interior nodes of |centered-difference ODE residual|.
  double ode_residual() const;
};

/// Shooting on Q(0) in [1, 10] with RK4 steps of size h and bisection.
/// Requires d in {1,2,3}, h <= 1e-3 R_max and R_max >= 15.
RadialProfile solve_ground_state(int dim, double step = 2.5e-4, double r_max = 32.0);

/// Samples amplitude * Q(scale * |x|) on the grid.
SpectralField embed_profile(const RadialProfile& q, const GridSpec& grid, double amplitude = 1.0,
                            double scale = 1.0);

/// Ratio ||f||_p^p / ((d+2)/d (||f||/||Q||)^{4/d} ||grad f||^2), p = 2(d+2)/d.
/// At most 1 by the sharp Gagliardo-Nirenberg inequality, with equality at Q.
double gn_ratio(const SpectralField& f, const RadialProfile& q);
double gn_ratio(const RadialNorms& f, int dim, double q_mass);

/// w_Q(t, x) = e^{it} C_d^{-d/4} Q(sqrt(2) x), the standing wave of the focusing
/// limit equation i w_t + (1/2) Lap w = -C_d |w|^{4/d} w.
SpectralField nls_ground_profile(const RadialProfile& q, const GridSpec& grid, double t = 0.0);

/// Predicted L2 norm of w_Q: (2 C_d)^{-d/4} ||Q||.
double nls_ground_mass(const RadialProfile& q);

}  // namespace kglab
