#include "kglab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kglab/log.hpp"

namespace kglab {

std::vector<Complex> tabulate(const GridSpec& grid, const MultiplierSymbol& m) {
  std::vector<Complex> table(grid.size());
  for_each_frequency(grid, [&](std::size_t i, const Vec& xi) {
    const Complex v = m.eval(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "multiplier '" << m.label << "' is not finite at xi = (" << xi[0] << ", " << xi[1] << ", " << xi[2]
          << ")";
      throw Error(msg.str());
    }
    table[i] = v;
  });
  return table;
}

SpectralField apply_table(const SpectralField& field, const std::vector<Complex>& table) {
  SpectralField out = field.to_frequency();
  if (table.size() != out.grid().size()) throw Error("apply_table: table size does not match grid");
  for (std::size_t i = 0; i < table.size(); ++i) out[i] *= table[i];
  return out;
}

SpectralField apply_table(const SpectralField& field, const std::vector<double>& table) {
  SpectralField out = field.to_frequency();
  if (table.size() != out.grid().size()) throw Error("apply_table: table size does not match grid");
  for (std::size_t i = 0; i < table.size(); ++i) out[i] *= table[i];
  return out;
}

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& m) {
  return apply_table(field, tabulate(field.grid(), m));
}

MultiplierSymbol identity_symbol() {
  return {[](const Vec&) { return Complex(1.0, 0.0); }, "1"};
}

MultiplierSymbol bracket_power(double s) {
  return {[s](const Vec& xi) { return Complex(std::pow(1.0 + norm_sq(xi), 0.5 * s), 0.0); },
          "<xi>^" + std::to_string(s)};
}

double scaled_kg_phase(double xi_sq, double lambda) {
  // lambda^2 (sqrt(1 + s) - 1) = lambda^2 s / (sqrt(1 + s) + 1), s = |xi|^2 / lambda^2.
  const double s = xi_sq / (lambda * lambda);
  return xi_sq / (std::sqrt(1.0 + s) + 1.0);
}

MultiplierSymbol propagator_symbol(Propagator kind, double t) {
  switch (kind.kind) {
    case PropagatorKind::KleinGordon:
      return {[t](const Vec& xi) { return std::polar(1.0, -t * bracket(xi)); }, "exp(-it<xi>)"};
    case PropagatorKind::ScaledKleinGordon: {
      const double lambda = kind.lambda;
      if (!(lambda > 0.0)) throw Error("propagator_symbol: lambda must be positive");
      return {[t, lambda](const Vec& xi) { return std::polar(1.0, -t * scaled_kg_phase(norm_sq(xi), lambda)); },
              "exp(-i lambda^2 t (<xi/lambda> - 1))"};
    }
    case PropagatorKind::Schroedinger:
      return {[t](const Vec& xi) { return std::polar(1.0, -0.5 * t * norm_sq(xi)); }, "exp(-it|xi|^2/2)"};
  }
  throw Error("propagator_symbol: unknown kind");
}

SpectralField free_propagate(const SpectralField& field, double t, Propagator kind) {
  return apply_multiplier(field, propagator_symbol(kind, t));
}

double dispersion_gap(double lambda, double cutoff, const GridSpec& grid) {
  if (!(lambda > 0.0) || !(cutoff > 0.0)) throw Error("dispersion_gap: lambda and K must be positive");
  double gap = 0.0;
  for_each_frequency(grid, [&](std::size_t, const Vec& xi) {
    const double s = norm_sq(xi);
    if (s > cutoff * cutoff) return;
    // Difference written as s u / (2 (sqrt(1 + u) + 1)^2), u = s / lambda^2, to avoid cancellation.
    const double u = s / (lambda * lambda);
    const double root = std::sqrt(1.0 + u) + 1.0;
    gap = std::max(gap, s * u / (2.0 * root * root));
  });
  return gap;
}

}  // namespace kglab
