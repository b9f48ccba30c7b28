#pragma once

#include <vector>

#include "kglab/field.hpp"

namespace kglab {

/// Radial cutoff: 1 for r <= 1, 0 for r >= 99/98, smooth ramp in between.
double lp_cutoff(double r);

/// Smooth step s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}), clamped to [0, 1].
double smooth_step(double t);

enum class LPKind { Annulus, Ball };

/// Littlewood-Paley projector. Ball is P_{<=N}, symbol phi(xi/N). Annulus is
/// P_N, symbol phi(xi/N) - phi(2 xi/N) for N >= 2 and phi(xi) for N = 1.
/// N must be a power of two >= 1.
SpectralField littlewood_paley(const SpectralField& field, double dyadic, LPKind kind);

/// P_{<=c} for any cutoff c > 0 (symbol phi(xi/c)); used for lambda^theta cutoffs.
SpectralField low_pass(const SpectralField& field, double cutoff);
std::vector<double> low_pass_table(const GridSpec& grid, double cutoff);

bool is_dyadic(double n);

}  // namespace kglab
