#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kglab/field.hpp"
#include "kglab/log.hpp"

using namespace kglab;

namespace {

SpectralField random_field(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  SpectralField f(g, Representation::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = Complex(n01(rng), n01(rng));
  return f;
}

}  // namespace

TEST(Grid, OneDimensionalLatticeIsIntegerWavenumbers) {
  const GridSpec g = make_grid(1, 8, M_PI);
  EXPECT_DOUBLE_EQ(g.spacing(), 2 * M_PI / 8);
  std::vector<double> xi;
  for (std::size_t i = 0; i < g.size(); ++i) xi.push_back(g.frequency(i)[0]);
  std::sort(xi.begin(), xi.end());
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(xi[k], k - 4, 1e-15);
}

TEST(Grid, SizesAndSpacing) {
  const GridSpec g2 = make_grid(2, 16, 8);
  EXPECT_EQ(g2.size(), 256u);
  EXPECT_DOUBLE_EQ(g2.spacing(), 1.0);
  EXPECT_EQ(make_grid(3, 64, 16).size(), 262144u);
}

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(make_grid(1, 12, 1.0), Error);
  EXPECT_THROW(make_grid(4, 8, 1.0), Error);
  EXPECT_THROW(make_grid(0, 8, 1.0), Error);
  EXPECT_THROW(make_grid(1, 8, 0.0), Error);
  EXPECT_THROW(make_grid(1, 8, -2.0), Error);
  EXPECT_THROW(make_grid(1, 4, 1.0), Error);
  EXPECT_THROW(make_grid(1, 2048, 1.0), Error);
  EXPECT_THROW(make_grid(2, 1024, 1.0), Error);
  EXPECT_THROW(make_grid(3, 256, 1.0), Error);
  EXPECT_NO_THROW(make_grid(3, 128, 1.0));
}

TEST(Grid, LatticeIndexInvertsFrequency) {
  const GridSpec g = make_grid(2, 16, 3.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    const long back = g.lattice_index({g.wavenumber_index(idx[0]), g.wavenumber_index(idx[1]), 0});
    EXPECT_EQ(back, static_cast<long>(i));
  }
  EXPECT_EQ(g.lattice_index({8, 0, 0}), -1);
}

TEST(Fft, RoundTripAndPlancherelOnRandomFields) {
  std::mt19937_64 rng(7);
  const GridSpec grids[] = {make_grid(1, 64, 5.0), make_grid(2, 32, 2.0), make_grid(3, 16, 4.0)};
  for (const auto& g : grids) {
    for (int trial = 0; trial < 100 / 3 + 1; ++trial) {
      const SpectralField f = random_field(g, rng);
      const SpectralField c = f.to_frequency();
      ASSERT_EQ(c.representation(), Representation::Frequency);
      EXPECT_NEAR(c.l2_norm_sq() / f.l2_norm_sq(), 1.0, 1e-12);
      const SpectralField back = c.to_physical();
      EXPECT_LE((back - f).l2_norm() / f.l2_norm(), 1e-12);
    }
  }
}

TEST(Fft, SingleModeLandsOnItsLatticePoint) {
  const GridSpec g = make_grid(1, 32, 3.0);
  const double k = 5 * g.frequency_step();
  const SpectralField f = SpectralField::sample(g, [&](const Vec& x) { return std::exp(Complex(0, k * x[0])); });
  const SpectralField c = f.to_frequency();
  const long at = g.lattice_index({5, 0, 0});
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (static_cast<long>(i) == at)
      EXPECT_NEAR(std::abs(c[i]), 1.0, 1e-12);
    else
      EXPECT_NEAR(std::abs(c[i]), 0.0, 1e-12);
  }
}

TEST(Field, ArithmeticRequiresMatchingGrids) {
  const GridSpec a = make_grid(1, 16, 1.0), b = make_grid(1, 32, 1.0);
  SpectralField f = SpectralField::zeros(a);
  EXPECT_THROW(f += SpectralField::zeros(b), Error);
}

TEST(Field, MixedRepresentationsAreConvertedToTheLeftOperand) {
  std::mt19937_64 rng(3);
  const GridSpec g = make_grid(1, 16, 1.0);
  const SpectralField f = random_field(g, rng);
  const SpectralField sum = f + f.to_frequency();
  EXPECT_TRUE(sum.is_physical());
  EXPECT_LE((sum - 2.0 * f).l2_norm(), 1e-12 * f.l2_norm());
}

TEST(Field, SobolevNormOfConstantIsMass) {
  const GridSpec g = make_grid(2, 16, 2.0);
  const SpectralField one = SpectralField::sample(g, [](const Vec&) { return Complex(1.0); });
  EXPECT_NEAR(sobolev_norm(one, 1.0), std::sqrt(g.box_volume()), 1e-12);
  EXPECT_NEAR(gradient_norm_sq(one), 0.0, 1e-20);
  EXPECT_NEAR(lp_norm(one, 4.0), std::pow(g.box_volume(), 0.25), 1e-12);
}

TEST(Field, BoundaryFractionSeesOnlyTheOuterLayer) {
  const GridSpec g = make_grid(1, 256, 20.0);
  const SpectralField inner = SpectralField::sample(g, [](const Vec& x) { return Complex(std::exp(-x[0] * x[0])); });
  EXPECT_LT(boundary_mass_fraction(inner), 1e-100);
  const SpectralField flat = SpectralField::sample(g, [](const Vec&) { return Complex(1.0); });
  EXPECT_NEAR(boundary_mass_fraction(flat), 0.1, 0.02);
}
