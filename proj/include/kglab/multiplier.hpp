#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kglab/field.hpp"

namespace kglab {

/// Fourier multiplier xi -> m(xi) with a label for diagnostics.
struct MultiplierSymbol {
  std::function<Complex(const Vec&)> eval;
  std::string label;
};

/// Multiplies the spectrum by m(xi). Output is in the frequency representation.
/// Throws if m evaluates to NaN or Inf, naming the lattice point.
SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& m);

/// Same, with the symbol pre-tabulated on the lattice in FFT order.
SpectralField apply_table(const SpectralField& field, const std::vector<Complex>& table);
SpectralField apply_table(const SpectralField& field, const std::vector<double>& table);

/// Tabulates a symbol on the lattice of a grid.
std::vector<Complex> tabulate(const GridSpec& grid, const MultiplierSymbol& m);

MultiplierSymbol identity_symbol();
/// <xi>^s.
MultiplierSymbol bracket_power(double s);

enum class PropagatorKind { KleinGordon, ScaledKleinGordon, Schroedinger };

struct Propagator {
  PropagatorKind kind = PropagatorKind::KleinGordon;
  /// Scale lambda; used by ScaledKleinGordon only.
  double lambda = 1.0;
};

/// Symbol of the free flow at time t:
///   KleinGordon        exp(-i t <xi>)
///   ScaledKleinGordon  exp(-i lambda^2 t (<xi/lambda> - 1))
///   Schroedinger       exp(-i t |xi|^2 / 2)
MultiplierSymbol propagator_symbol(Propagator kind, double t);

/// Phase lambda^2 (<xi/lambda> - 1) evaluated without cancellation.
double scaled_kg_phase(double xi_sq, double lambda);

SpectralField free_propagate(const SpectralField& field, double t, Propagator kind);

/// max over lattice |xi| <= K of |lambda^2 (<xi/lambda> - 1) - |xi|^2/2|.
double dispersion_gap(double lambda, double cutoff, const GridSpec& grid);

}  // namespace kglab
