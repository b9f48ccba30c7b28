#include <gtest/gtest.h>

#include <random>

#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/projectors.hpp"

using namespace kglab;

namespace {

SpectralField random_field(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  SpectralField f(g, Representation::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = Complex(n01(rng), n01(rng));
  return f;
}

/// Random spectrum supported on lo <= |xi| <= hi.
SpectralField band_field(const GridSpec& g, double lo, double hi, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  SpectralField c(g, Representation::Frequency);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = norm(g.frequency(i));
    if (r >= lo && r <= hi) c[i] = Complex(n01(rng), n01(rng));
  }
  return c;
}

double rel_diff(const SpectralField& a, const SpectralField& b) { return (a - b).l2_norm() / b.l2_norm(); }

const Propagator kKinds[] = {{PropagatorKind::KleinGordon, 1.0},
                             {PropagatorKind::ScaledKleinGordon, 8.0},
                             {PropagatorKind::Schroedinger, 1.0}};

}  // namespace

TEST(Multiplier, IdentitySymbolIsIdentity) {
  std::mt19937_64 rng(1);
  const GridSpec g = make_grid(2, 16, 3.0);
  const SpectralField f = random_field(g, rng);
  const SpectralField out = apply_multiplier(f, identity_symbol());
  EXPECT_EQ(out.representation(), Representation::Frequency);
  EXPECT_LE(rel_diff(out, f), 1e-13);
  EXPECT_LE(rel_diff(apply_multiplier(f, bracket_power(0.0)), f), 1e-13);
}

TEST(Multiplier, BracketLeavesTheMeanAlone) {
  const GridSpec g = make_grid(1, 32, 4.0);
  SpectralField c(g, Representation::Frequency);
  c[0] = Complex(2.0, -1.0);
  const SpectralField out = apply_multiplier(c, bracket_power(1.0));
  EXPECT_EQ(out[0], c[0]);
}

TEST(Multiplier, NonFiniteSymbolNamesTheFrequency) {
  const GridSpec g = make_grid(1, 8, M_PI);
  const MultiplierSymbol bad{[](const Vec& xi) { return Complex(1.0 / xi[0]); }, "1/xi"};
  try {
    apply_multiplier(SpectralField::zeros(g), bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("xi"), std::string::npos);
  }
}

TEST(Propagator, UnitaryOnRandomFields) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  const GridSpec g = make_grid(2, 16, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralField f = random_field(g, rng);
    const Propagator kind = kKinds[trial % 3];
    const SpectralField out = free_propagate(f, time(rng), kind);
    EXPECT_NEAR(out.l2_norm() / f.l2_norm(), 1.0, 1e-12);
  }
}

TEST(Propagator, GroupLawAndReversibility) {
  std::mt19937_64 rng(3);
  const GridSpec g = make_grid(1, 128, 10.0);
  const SpectralField f = random_field(g, rng);
  for (const auto& kind : kKinds) {
    const SpectralField two_steps = free_propagate(free_propagate(f, 0.7, kind), 1.1, kind);
    EXPECT_LE(rel_diff(two_steps, free_propagate(f, 1.8, kind)), 1e-10);
    EXPECT_LE(rel_diff(free_propagate(free_propagate(f, 2.5, kind), -2.5, kind), f), 1e-10);
    EXPECT_LE(rel_diff(free_propagate(f, 0.0, kind), f), 1e-14);
  }
}

TEST(Propagator, KleinGordonZeroModeRotates) {
  const GridSpec g = make_grid(1, 16, 2.0);
  SpectralField c(g, Representation::Frequency);
  c[0] = 1.0;
  const double t = 0.83;
  const SpectralField out = free_propagate(c, t, {PropagatorKind::KleinGordon, 1.0});
  EXPECT_NEAR(std::abs(out[0] - std::exp(Complex(0, -t))), 0.0, 1e-15);
}

TEST(Propagator, ScaledKleinGordonApproachesSchroedinger) {
  const GridSpec g = make_grid(1, 256, 20.0);
  const SpectralField f = SpectralField::sample(g, [](const Vec& x) { return Complex(std::exp(-x[0] * x[0])); });
  double previous = INFINITY;
  for (double lambda : {4.0, 8.0, 16.0, 32.0}) {
    const SpectralField a = free_propagate(f, 1.0, {PropagatorKind::ScaledKleinGordon, lambda});
    const SpectralField b = free_propagate(f, 1.0, {PropagatorKind::Schroedinger, 1.0});
    const double diff = (a - b).l2_norm();
    EXPECT_LT(diff, previous);
    previous = diff;
  }
}

TEST(Propagator, ScaledPhaseMatchesDirectFormula) {
  for (double lambda : {1.0, 4.0, 64.0})
    for (double s : {0.0, 0.25, 3.0, 100.0}) {
      const double direct = lambda * lambda * (std::sqrt(1.0 + s / (lambda * lambda)) - 1.0);
      EXPECT_NEAR(scaled_kg_phase(s, lambda), direct, 1e-12 * (1.0 + direct));
    }
}

TEST(DispersionGap, QuarticBoundAndQuarterScaling) {
  const GridSpec g = make_grid(1, 512, 40.0);
  for (double lambda : {4.0, 8.0, 16.0, 32.0})
    for (double K : {1.0, 2.0, 4.0}) {
      if (K > lambda) continue;
      const double gap = dispersion_gap(lambda, K, g);
      EXPECT_LE(gap, std::pow(K, 4) / (8.0 * lambda * lambda));
      // Quarter scaling is the leading order; it needs K^2 / lambda^2 small.
      if (2.0 * K > lambda) continue;
      const double ratio = dispersion_gap(2.0 * lambda, K, g) / gap;
      EXPECT_GE(ratio, 0.2);
      EXPECT_LE(ratio, 0.3);
    }
}

TEST(DispersionGap, ZeroFrequencyContributesNothing) {
  const GridSpec g = make_grid(1, 8, 1e3);
  // Only xi = 0 lies below the cutoff.
  EXPECT_EQ(dispersion_gap(4.0, 1e-4, g), 0.0);
}

TEST(LittlewoodPaley, CutoffValues) {
  EXPECT_EQ(lp_cutoff(0.0), 1.0);
  EXPECT_EQ(lp_cutoff(1.0), 1.0);
  EXPECT_EQ(lp_cutoff(99.0 / 98.0), 0.0);
  const double mid = lp_cutoff(1.0 + 0.5 / 98.0);
  EXPECT_NEAR(mid, 0.5, 1e-12);
  double previous = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = lp_cutoff(1.0 + i / (100.0 * 98.0));
    EXPECT_LE(v, previous);
    EXPECT_GE(v, 0.0);
    previous = v;
  }
}

TEST(LittlewoodPaley, BallFixesItsInteriorAndKillsTheOutside) {
  std::mt19937_64 rng(4);
  const GridSpec g = make_grid(2, 64, 8.0);
  const SpectralField inside = band_field(g, 0.0, 4.0, rng);
  EXPECT_LE(rel_diff(littlewood_paley(inside, 4.0, LPKind::Ball), inside), 1e-15);
  const SpectralField outside = band_field(g, 4.0 * 99.0 / 98.0, 100.0, rng);
  EXPECT_EQ(littlewood_paley(outside, 4.0, LPKind::Ball).l2_norm(), 0.0);
}

TEST(LittlewoodPaley, AnnuliTelescopeToBandLimitedField) {
  std::mt19937_64 rng(5);
  const GridSpec g = make_grid(2, 64, 8.0);
  const SpectralField f = band_field(g, 0.0, 8.0, rng);
  SpectralField sum = SpectralField::zeros(g, Representation::Frequency);
  for (double N : {1.0, 2.0, 4.0, 8.0}) sum += littlewood_paley(f, N, LPKind::Annulus);
  EXPECT_LE(rel_diff(sum, f), 1e-10);
}

TEST(LittlewoodPaley, DisjointAnnuliAnnihilate) {
  std::mt19937_64 rng(6);
  const GridSpec g = make_grid(2, 64, 8.0);
  const SpectralField f = band_field(g, 2.0, 3.0, rng);
  const SpectralField out = littlewood_paley(littlewood_paley(f, 1.0, LPKind::Annulus), 4.0, LPKind::Annulus);
  EXPECT_EQ(out.l2_norm(), 0.0);
  const SpectralField g2 = random_field(g, rng);
  EXPECT_EQ(littlewood_paley(littlewood_paley(g2, 1.0, LPKind::Annulus), 4.0, LPKind::Annulus).l2_norm(), 0.0);
}

TEST(LittlewoodPaley, BallIsIdempotentOffTheRampShell) {
  std::mt19937_64 rng(7);
  const GridSpec g = make_grid(2, 64, 8.0);
  const SpectralField f = random_field(g, rng);
  const SpectralField once = littlewood_paley(f, 2.0, LPKind::Ball);
  const SpectralField twice = littlewood_paley(once, 2.0, LPKind::Ball);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = norm(g.frequency(i)) / 2.0;
    if (r <= 1.0 || r >= 99.0 / 98.0) EXPECT_EQ(twice[i], once[i]);
  }
}

TEST(LittlewoodPaley, RejectsNonDyadicScale) {
  const GridSpec g = make_grid(1, 16, 1.0);
  EXPECT_THROW(littlewood_paley(SpectralField::zeros(g), 3.0, LPKind::Ball), Error);
  EXPECT_THROW(littlewood_paley(SpectralField::zeros(g), 0.5, LPKind::Annulus), Error);
  EXPECT_TRUE(is_dyadic(1.0));
  EXPECT_TRUE(is_dyadic(64.0));
  EXPECT_FALSE(is_dyadic(6.0));
}
