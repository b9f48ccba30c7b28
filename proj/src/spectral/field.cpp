#include "kglab/field.hpp"

#include <cmath>

#include "kglab/log.hpp"

namespace kglab {

SpectralField::SpectralField(GridSpec grid, Representation rep)
    : grid_(grid), values_(grid.size(), Complex{}), rep_(rep) {}

SpectralField::SpectralField(GridSpec grid, CVector values, Representation rep)
    : grid_(grid), values_(std::move(values)), rep_(rep) {
  if (values_.size() != grid_.size()) throw Error("SpectralField: value count does not match grid size");
}

SpectralField SpectralField::zeros(const GridSpec& grid, Representation rep) { return SpectralField(grid, rep); }

SpectralField SpectralField::sample(const GridSpec& grid, const ClosedForm& fn) {
  SpectralField out(grid, Representation::Physical);
  for_each_point(grid, [&](std::size_t i, const Vec& x) { out.values_[i] = fn(x); });
  return out;
}

SpectralField SpectralField::to_frequency() const {
  if (rep_ == Representation::Frequency) return *this;
  SpectralField out(grid_, Representation::Frequency);
  fft_forward(grid_, values_, out.values_);
  return out;
}

SpectralField SpectralField::to_physical() const {
  if (rep_ == Representation::Physical) return *this;
  SpectralField out(grid_, Representation::Physical);
  fft_inverse(grid_, values_, out.values_);
  return out;
}

double SpectralField::l2_norm_sq() const {
  double sum = 0.0;
  for (const auto& c : values_) sum += std::norm(c);
  return sum * (rep_ == Representation::Physical ? grid_.cell_volume() : grid_.box_volume());
}

double SpectralField::l2_norm() const { return std::sqrt(l2_norm_sq()); }

bool SpectralField::finite() const {
  for (const auto& c : values_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw Error("SpectralField: grids differ");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  const SpectralField rhs = other.in(rep_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  const SpectralField rhs = other.in(rep_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& c : values_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

SpectralField real_part(const SpectralField& f) {
  SpectralField out = f.to_physical();
  for (auto& c : out.values()) c = Complex(c.real(), 0.0);
  return out;
}

double lp_norm(const SpectralField& f, double p) {
  const SpectralField phys = f.to_physical();
  double sum = 0.0;
  for (const auto& c : phys.values()) sum += std::pow(std::abs(c), p);
  return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

double sobolev_norm(const SpectralField& f, double s) {
  const SpectralField freq = f.to_frequency();
  const GridSpec& g = f.grid();
  double sum = 0.0;
  for_each_frequency(g, [&](std::size_t i, const Vec& xi) {
    sum += std::pow(1.0 + norm_sq(xi), s) * std::norm(freq[i]);
  });
  return std::sqrt(sum * g.box_volume());
}

double gradient_norm_sq(const SpectralField& f) {
  const SpectralField freq = f.to_frequency();
  double sum = 0.0;
  for_each_frequency(f.grid(), [&](std::size_t i, const Vec& xi) { sum += norm_sq(xi) * std::norm(freq[i]); });
  return sum * f.grid().box_volume();
}

double boundary_mass_fraction(const SpectralField& f, double width) {
  const SpectralField phys = f.to_physical();
  const GridSpec& g = f.grid();
  const double edge = (1.0 - width) * g.half_width();
  double outer = 0.0, total = 0.0;
  for_each_point(g, [&](std::size_t i, const Vec& x) {
    const double m = std::norm(phys[i]);
    total += m;
    for (int a = 0; a < g.dim(); ++a) {
      if (std::abs(x[a]) > edge) {
        outer += m;
        break;
      }
    }
  });
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace kglab
