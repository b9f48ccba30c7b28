#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kglab/field.hpp"
#include "kglab/ground_state.hpp"
#include "kglab/nonlinearity.hpp"

namespace kglab {

/// Energy split into parts, in grid-quadrature units.
struct EnergyReport {
  double kinetic = 0.0;    // (1/2) ||u_t||^2
  double gradient = 0.0;   // (1/2) ||grad u||^2
  double mass = 0.0;       // (1/2) ||u||^2
  double potential = 0.0;  // mu d/(2(d+2)) int |u|^{2(d+2)/d}
  double total = 0.0;
  Vec momentum{0.0, 0.0, 0.0};

  static std::string csv_header(int dim);
  std::string csv_row(int dim) const;
};

/// Splits v = u + i <grad>^{-1} u_t into (u, u_t), both real.
struct RealPair {
  SpectralField u;
  SpectralField u_t;
};
RealPair split_first_order(const SpectralField& v);
/// v = u + i <grad>^{-1} u_t.
SpectralField join_first_order(const SpectralField& u, const SpectralField& u_t);

/// Energy and momentum of the first-order field v.
EnergyReport energy(const SpectralField& v, const NonlinearityParams& params);
/// Energy and momentum of the pair (u, u_t).
EnergyReport energy(const SpectralField& u, const SpectralField& u_t, const NonlinearityParams& params);
/// (1/2)||<grad> v||^2 + potential(Re v), computed without splitting.
double energy_first_order(const SpectralField& v, const NonlinearityParams& params);

/// P = int u_t grad u. Throws if u or u_t has an imaginary part above 1e-10.
Vec momentum(const SpectralField& u, const SpectralField& u_t);

/// int |f|^{2(d+2)/d}.
double potential_integral(const SpectralField& f);

/// K_{alpha,beta}(phi) = (2a-(d-2)b)/2 ||grad phi||^2 + (2a-db)/2 ||phi||^2
///                      + mu (a - d^2 b/(2(d+2))) int |phi|^{2(d+2)/d}.
/// Requires 2a - db >= 0, 2a - (d-2)b >= 0 and (a, b) != (0, 0).
double k_functional(const SpectralField& phi, double alpha, double beta, const NonlinearityParams& params);
double k_functional(const RadialNorms& norms, int dim, double alpha, double beta, int mu);
/// K_0 = K_{1,0} and K_1 = K_{d,2}.
double k0(const SpectralField& phi, const NonlinearityParams& params);
double k1(const SpectralField& phi, const NonlinearityParams& params);

/// E(Q, 0) from the radial integrals of the profile (focusing sign).
double threshold_energy(const RadialProfile& q);

enum class Verdict { Pass, Fail, Indeterminate };
std::string to_string(Verdict v);

struct ThresholdReport {
  double energy = 0.0;
  double threshold = 0.0;
  double k0 = 0.0;
  double mass = 0.0;       // ||u0||^2
  double q_mass = 0.0;     // ||Q||^2
  bool below_energy = false;
  int k0_sign = 0;
  bool mass_below = false;
  /// Pass when the energy is not below threshold (vacuous) or the equivalence
  /// "mass below iff K_0 >= 0" holds. A violation within 1e-6 of either
  /// boundary is Indeterminate rather than Fail.
  Verdict consistent = Verdict::Pass;
};

ThresholdReport threshold_predicates(const SpectralField& u0, const SpectralField& u1, const RadialProfile& q,
                                     const NonlinearityParams& params);

/// Klein-Gordon admissibility of (q, r) in dimension d. Use infinity for q or r = inf.
bool is_admissible(double q, double r, int dim, bool sharp = false);

}  // namespace kglab
