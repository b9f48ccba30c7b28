#include <gtest/gtest.h>

#include <random>

#include "kglab/ground_state.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/nonlinearity.hpp"
#include "kglab/symmetry.hpp"

using namespace kglab;

namespace {

const RadialProfile& ground(int d) {
  static const RadialProfile q1 = solve_ground_state(1);
  static const RadialProfile q2 = solve_ground_state(2);
  static const RadialProfile q3 = solve_ground_state(3);
  return d == 1 ? q1 : d == 2 ? q2 : q3;
}

}  // namespace

TEST(GroundState, OneDimensionalClosedForm) {
  const RadialProfile& q = ground(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.r.size(); ++i) {
    const double exact = std::pow(3.0, 0.25) / std::sqrt(std::cosh(2.0 * q.r[i]));
    worst = std::max(worst, std::abs(q.q[i] - exact));
  }
  EXPECT_LE(worst, 1e-6);
  EXPECT_NEAR(q.q0, std::pow(3.0, 0.25), 1e-6);
  EXPECT_NEAR(q.norms().mass, std::sqrt(3.0) * M_PI / 2.0, 1e-6);
}

TEST(GroundState, PositiveDecreasingAndSolvesTheOde) {
  for (int d : {1, 2, 3}) {
    const RadialProfile& q = ground(d);
    for (std::size_t i = 1; i < q.q.size(); ++i) {
      if (q.q[i - 1] < 1e-10) break;
      EXPECT_GT(q.q[i], 0.0);
      EXPECT_LT(q.q[i], q.q[i - 1]);
    }
    EXPECT_LE(q.ode_residual(), 1e-6 * q.q0) << "d=" << d;
    EXPECT_GE(q.q0, 1.0);
    EXPECT_LE(q.q0, 10.0);
  }
}

TEST(GroundState, ThreeDimensionalSelfConvergence) {
  const RadialProfile& q = ground(3);
  const RadialProfile fine = solve_ground_state(3, q.step / 2.0, q.r_max);
  EXPECT_LE(std::abs(std::sqrt(fine.norms().mass) - std::sqrt(q.norms().mass)), 1e-7);
}

TEST(GroundState, RejectsBadArguments) {
  EXPECT_THROW(solve_ground_state(4), Error);
  EXPECT_THROW(solve_ground_state(1, 1e-3, 10.0), Error);
  EXPECT_THROW(solve_ground_state(1, 0.1, 20.0), Error);
}

TEST(GagliardoNirenberg, EqualityAtTheGroundState) {
  for (int d : {1, 2, 3}) {
    const RadialProfile& q = ground(d);
    EXPECT_NEAR(gn_ratio(q.norms(), d, q.norms().mass), 1.0, 1e-5) << "d=" << d;
  }
  const GridSpec g = make_grid(1, 1024, 20.0);
  const RadialProfile& q = ground(1);
  EXPECT_NEAR(gn_ratio(embed_profile(q, g), q), 1.0, 1e-5);
  const SpectralField dilated_q =
      dilate_closed_form([&](const Vec& x) { return Complex(q.value(std::abs(x[0]))); }, 2.0, g);
  EXPECT_NEAR(gn_ratio(dilated_q, q), 1.0, 1e-5);
}

TEST(GagliardoNirenberg, RandomSmoothFieldsStayBelowOne) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> centre(-4.0, 4.0), width(0.5, 3.0), amp(-2.0, 2.0);
  const GridSpec g = make_grid(2, 128, 16.0);
  const RadialProfile& q = ground(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::array<double, 4>> bumps(3);
    for (auto& b : bumps) b = {centre(rng), centre(rng), width(rng), amp(rng)};
    const SpectralField f = SpectralField::sample(g, [&](const Vec& x) {
      double v = 0.0;
      for (const auto& b : bumps) {
        const double r2 = (x[0] - b[0]) * (x[0] - b[0]) + (x[1] - b[1]) * (x[1] - b[1]);
        v += b[3] * std::exp(-r2 / (b[2] * b[2]));
      }
      return Complex(v);
    });
    EXPECT_LE(gn_ratio(f, q), 1.0 + 1e-6);
  }
}

TEST(GagliardoNirenberg, ZeroFieldIsAnError) {
  const GridSpec g = make_grid(1, 64, 10.0);
  EXPECT_THROW(gn_ratio(SpectralField::zeros(g), ground(1)), Error);
}

TEST(NlsGroundProfile, MassIdentity) {
  const RadialProfile& q = ground(1);
  const GridSpec g = make_grid(1, 512, 20.0);
  const SpectralField w = nls_ground_profile(q, g);
  const double expected = std::pow(2.0 * c_d_gamma(1), -0.25) * std::sqrt(q.norms().mass);
  EXPECT_NEAR(nls_ground_mass(q), expected, 1e-12);
  EXPECT_NEAR(w.l2_norm() / expected, 1.0, 1e-6);
}

TEST(NlsGroundProfile, SolvesTheFocusingLimitEquation) {
  const RadialProfile& q = ground(1);
  const GridSpec g = make_grid(1, 512, 20.0);
  const SpectralField w = nls_ground_profile(q, g);
  const SpectralField lap =
      apply_multiplier(w, {[](const Vec& xi) { return Complex(-norm_sq(xi)); }, "laplacian"}).to_physical();
  const double cd = c_d_gamma(1);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    // i w_t = -w for the standing wave.
    const Complex residual = -w[i] + 0.5 * lap[i] + cd * f_complex(w[i], 1);
    worst = std::max(worst, std::abs(residual));
    peak = std::max(peak, std::abs(w[i]));
  }
  EXPECT_LE(worst, 1e-5 * peak);
}

TEST(NlsGroundProfile, PhaseIsTwoPiPeriodic) {
  const RadialProfile& q = ground(1);
  const GridSpec g = make_grid(1, 256, 20.0);
  const SpectralField a = nls_ground_profile(q, g, 0.0);
  const SpectralField b = nls_ground_profile(q, g, 2.0 * M_PI);
  EXPECT_LE((a - b).l2_norm(), 1e-13 * a.l2_norm());
}
