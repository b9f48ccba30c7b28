#pragma once

#include <functional>
#include <span>

#include "kglab/fft.hpp"
#include "kglab/grid.hpp"

namespace kglab {

enum class Representation { Physical = 0, Frequency = 1 };

/// Closed-form datum x -> value, used wherever sampling must avoid resampling.
using ClosedForm = std::function<Complex(const Vec&)>;

/// Complex scalar field on a periodic grid, stored in one representation.
///
/// Frequency values are c_k = N^{-d} sum_j f_j e^{-2 pi i j.k/N}. With this
/// normalization the discrete L2 norms agree:
///   h^d sum_j |f_j|^2 = (2L)^d sum_k |c_k|^2.
/// Operations return new fields; a field is never modified behind a caller's back.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridSpec grid, Representation rep);
  SpectralField(GridSpec grid, CVector values, Representation rep);

  static SpectralField zeros(const GridSpec& grid, Representation rep = Representation::Physical);
  static SpectralField sample(const GridSpec& grid, const ClosedForm& fn);

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::Physical; }

  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  const CVector& data() const { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  SpectralField to_frequency() const;
  SpectralField to_physical() const;
  SpectralField in(Representation rep) const { return rep == Representation::Physical ? to_physical() : to_frequency(); }

  double l2_norm_sq() const;
  double l2_norm() const;

  /// True if every value is finite.
  bool finite() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex s);

 private:
  void require_compatible(const SpectralField& other) const;

  GridSpec grid_;
  CVector values_;
  Representation rep_ = Representation::Physical;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex s, SpectralField a);

/// Pointwise real part in physical space.
SpectralField real_part(const SpectralField& f);

/// Discrete L^p norm of the physical samples, h^d sum |f|^p to the 1/p.
double lp_norm(const SpectralField& f, double p);

/// Sobolev norm (2L)^d sum <xi>^{2s} |c|^2, square-rooted.
double sobolev_norm(const SpectralField& f, double s);

/// (2L)^d sum |xi|^2 |c|^2, the squared L2 norm of the gradient.
double gradient_norm_sq(const SpectralField& f);

/// Fraction of the L2 mass in the outer layer max_a |x_a| > (1 - width) L.
double boundary_mass_fraction(const SpectralField& f, double width = 0.1);

}  // namespace kglab
