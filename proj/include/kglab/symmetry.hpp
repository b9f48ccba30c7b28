#pragma once

#include "kglab/field.hpp"

namespace kglab {

/// Samples D_lambda phi(x) = lambda^{-d/2} phi(x / lambda) directly from the
/// closed form. Warns when more than 1e-6 of the sampled mass sits in the
/// outer tenth of the box.
SpectralField dilate_closed_form(const ClosedForm& phi, double lambda, const GridSpec& grid);

/// D_lambda as a closed form, so dilations compose without sampling.
ClosedForm dilated(ClosedForm phi, double lambda, int dim);

/// f(x - a) via the symbol exp(-i xi.a); exact for band-limited fields.
SpectralField translate(const SpectralField& field, const Vec& shift);

/// l_nu(xi) = xi_perp + <nu> xi_par - nu <xi>.
Vec lorentz_frequency_map(const Vec& xi, const Vec& nu);

struct BoostResult {
  SpectralField field;
  /// Relative change of the H^{1/2} norm, which the exact boost preserves.
  double residual = 0.0;
};

/// Fourier action of L_nu^{-1}: the output spectrum at xi~ = l_nu(xi) is
/// (<xi>/<xi~>) f^(xi). For each lattice point xi~ the source xi = l_{-nu}(xi~)
/// is evaluated by Dirichlet-kernel interpolation over the input support.
/// Restricted to d <= 2 and N <= 256; throws if l_nu maps the input support
/// off the lattice. Warns when the residual exceeds 1e-6.
BoostResult lorentz_boost(const SpectralField& field, const Vec& nu);
SpectralField lorentz_boost_fourier(const SpectralField& field, const Vec& nu);

}  // namespace kglab
