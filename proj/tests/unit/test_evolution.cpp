#include <gtest/gtest.h>

#include <sstream>

#include "kglab/evolution.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"

using namespace kglab;

namespace {

SpectralField gaussian_datum(const GridSpec& g, double amp) {
  return SpectralField::sample(g, [amp](const Vec& x) { return Complex(amp * std::exp(-norm_sq(x))); });
}

SpectralField march(const SpectralField& v0, double T, double dt, Scheme scheme, const NonlinearityParams& p) {
  StepperConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  Monitors mon;
  mon.stride = static_cast<int>(std::lround(T / dt));
  mon.store_fields = true;
  return evolve(v0, T, cfg, p, mon).fields.back();
}

double rel(const SpectralField& a, const SpectralField& b) { return (a - b).l2_norm() / b.l2_norm(); }

}  // namespace

TEST(Lawson, LinearStepIsTheFreeFlow) {
  const GridSpec g = make_grid(1, 128, 10.0);
  const SpectralField v = gaussian_datum(g, 0.7);
  const SpectralField stepped = step_nlkg(v, 0.01, make_nonlinearity(1, 1), true, true);
  const SpectralField exact = free_propagate(v, 0.01, {PropagatorKind::KleinGordon, 1.0});
  EXPECT_LE(rel(stepped, exact), 1e-12);
}

TEST(Strang, LinearStepIsTheFreeFlow) {
  const GridSpec g = make_grid(2, 32, 5.0);
  const SpectralField w = gaussian_datum(g, 0.7);
  const SpectralField stepped = step_nls(w, 0.01, make_nonlinearity(2, -1), true);
  const SpectralField exact = free_propagate(w, 0.01, {PropagatorKind::Schroedinger, 1.0});
  EXPECT_LE(rel(stepped, exact), 1e-12);
}

TEST(Strang, MassIsPreservedPerStep) {
  for (int d : {1, 2, 3}) {
    const GridSpec g = make_grid(d, d == 3 ? 16 : 64, 6.0);
    for (int mu : {1, -1}) {
      SpectralField w = gaussian_datum(g, 1.3);
      const double m0 = w.l2_norm_sq();
      NlsStepper s(g, make_nonlinearity(d, mu), 1e-2);
      for (int n = 0; n < 20; ++n) {
        s.step(w.values());
        EXPECT_NEAR(w.l2_norm_sq() / m0, 1.0, 1e-12);
      }
    }
  }
}

TEST(SelfConvergence, LawsonIsFourthOrderAndStrangSecond) {
  const GridSpec g = make_grid(1, 64, 10.0);
  const NonlinearityParams p = make_nonlinearity(1, 1);
  const SpectralField d0 = gaussian_datum(g, 1.0);
  const double dt = 0.05;
  for (Scheme scheme : {Scheme::LawsonRK4, Scheme::Strang}) {
    const SpectralField ref = march(d0, 1.0, dt / 8, scheme, p);
    const double ratio = rel(march(d0, 1.0, dt, scheme, p), ref) / rel(march(d0, 1.0, dt / 2, scheme, p), ref);
    if (scheme == Scheme::LawsonRK4) {
      EXPECT_GE(ratio, 14.0);
      EXPECT_LE(ratio, 18.0);
    } else {
      EXPECT_GE(ratio, 3.5);
      EXPECT_LE(ratio, 4.5);
    }
  }
}

TEST(Evolve, ZeroDataStayZero) {
  const GridSpec g = make_grid(1, 64, 10.0);
  StepperConfig cfg;
  cfg.dt = 0.01;
  Monitors mon;
  mon.stride = 10;
  mon.store_fields = true;
  const TrajectoryRecord rec = evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(1, -1), mon);
  EXPECT_FALSE(rec.flagged());
  ASSERT_EQ(rec.times.size(), 11u);
  for (const auto& f : rec.fields) EXPECT_EQ(f.l2_norm(), 0.0);
  for (std::size_t i = 1; i < rec.times.size(); ++i) EXPECT_GT(rec.times[i], rec.times[i - 1]);
}

TEST(Evolve, SmallDataConserveEnergyTightly) {
  const GridSpec g = make_grid(1, 256, 20.0);
  StepperConfig cfg;
  const TrajectoryRecord rec = evolve(gaussian_datum(g, 1e-3), 1.0, cfg, make_nonlinearity(1, 1), {100});
  const double e0 = rec.reports.front().total;
  for (const auto& r : rec.reports) EXPECT_LE(std::abs(r.total - e0) / e0, 1e-10);
}

TEST(Evolve, DefocusingModerateDataOverFiveUnits) {
  const GridSpec g = make_grid(1, 256, 20.0);
  const SpectralField u0 = gaussian_datum(g, 0.5);
  const SpectralField ut = SpectralField::sample(g, [](const Vec& x) { return Complex(0.6 * x[0] * std::exp(-x[0] * x[0])); });
  const SpectralField v0 = join_first_order(u0, ut);
  ASSERT_LE(sobolev_norm(v0, 1.0), 1.0);
  StepperConfig cfg;
  const TrajectoryRecord rec = evolve(v0, 5.0, cfg, make_nonlinearity(1, 1), {250});
  ASSERT_FALSE(rec.flagged());
  const double e0 = rec.reports.front().total;
  const double p0 = rec.reports.front().momentum[0];
  for (const auto& r : rec.reports) {
    EXPECT_LE(std::abs(r.total - e0) / e0, 1e-6);
    EXPECT_LE(std::abs(r.momentum[0] - p0) / std::abs(p0), 1e-6);
  }
}

TEST(Evolve, RejectsIncompatibleSchedules) {
  const GridSpec g = make_grid(1, 64, 10.0);
  StepperConfig cfg;
  cfg.dt = 0.03;
  EXPECT_THROW(evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(1, 1)), Error);
  cfg.dt = 0.1;
  EXPECT_THROW(evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(1, 1), {3}), Error);
  cfg.blowup_threshold = 1.0;
  EXPECT_THROW(evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(1, 1)), Error);
  cfg.blowup_threshold = 10.0;
  cfg.dt = -0.1;
  EXPECT_THROW(evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(1, 1)), Error);
  cfg.dt = 0.1;
  EXPECT_THROW(evolve(SpectralField::zeros(g), 1.0, cfg, make_nonlinearity(2, 1)), Error);
}

TEST(Evolve, FocusingLargeDataFlagsBlowUp) {
  const GridSpec g = make_grid(1, 1024, 20.0);
  StepperConfig cfg;
  cfg.dt = 1e-4;
  const SpectralField v0 = gaussian_datum(g, 3.0);
  const TrajectoryRecord rec = evolve(v0, 2.0, cfg, make_nonlinearity(1, -1), {100});
  EXPECT_TRUE(rec.flagged());
  EXPECT_TRUE(rec.blowup);
  EXPECT_GT(rec.blowup_time, 0.0);
  EXPECT_EQ(rec.times.back(), rec.blowup_time);
  EXPECT_GT(rec.h1_norm.back(), 10.0 * rec.h1_norm.front());
  std::ostringstream os;
  rec.write_csv(os);
  EXPECT_NE(os.str().find("blowup"), std::string::npos);
}

TEST(Concavity, SingleModeHasFlatNorm) {
  const GridSpec g = make_grid(1, 64, M_PI);
  const SpectralField v = SpectralField::sample(g, [](const Vec& x) { return std::exp(Complex(0, 3.0 * x[0])); });
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.linear = true;
  const TrajectoryRecord rec = evolve(v, 1.0, cfg, make_nonlinearity(1, 1), {10});
  const ConcavityReport c = concavity_diagnostic(rec, 1);
  EXPECT_TRUE(c.all_negative);
  for (double s : c.second_differences) EXPECT_NEAR(s, 0.0, 1e-10);
}

TEST(Concavity, NeedsThreeSnapshots) {
  TrajectoryRecord rec;
  rec.real_l2 = {1.0, 1.0};
  rec.times = {0.0, 1.0};
  EXPECT_THROW(concavity_diagnostic(rec, 1), Error);
}

TEST(ExteriorMass, FiniteSpeedOfPropagation) {
  const GridSpec g = make_grid(2, 128, 16.0);
  const double R = 8.0;
  // Supported to 1e-8 in |x| <= R/2.
  const SpectralField u0 = SpectralField::sample(g, [](const Vec& x) { return Complex(std::exp(-norm_sq(x))); });
  const SpectralField v0 = join_first_order(u0, SpectralField::zeros(g));
  StepperConfig cfg;
  cfg.dt = 0.01;
  Monitors mon;
  mon.stride = 50;
  mon.store_fields = true;
  mon.exterior_radius = R;
  const TrajectoryRecord rec = evolve(v0, R / 4, cfg, make_nonlinearity(2, 1), mon);
  const double total = exterior_energy(v0, 0.0);
  EXPECT_LE(rec.exterior.front(), 1e-8 * total);
  for (double e : rec.exterior) EXPECT_LE(e, 1e-4 * total);
  const auto inner = exterior_mass(rec, R / 2);
  const auto outer = exterior_mass(rec, R);
  for (std::size_t i = 1; i < rec.times.size(); ++i) EXPECT_LT(outer[i], inner[i]);
}
