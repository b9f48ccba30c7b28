#include <gtest/gtest.h>

#include <random>

#include "kglab/log.hpp"
#include "kglab/tube_partition.hpp"

using namespace kglab;

namespace {

Vec random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> radius(0.01, 100.0);
  Vec v{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) v[a] = n01(rng);
  const double s = radius(rng) / norm(v);
  for (int a = 0; a < d; ++a) v[a] *= s;
  return v;
}

double distance(const Vec& a, const Vec& b) {
  return norm({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

}  // namespace

TEST(TubePartition, OneDimensionHasOneElement) {
  const TubePartition p = tube_partition(1, 8);
  ASSERT_EQ(p.count(), 1u);
  EXPECT_EQ(p.chi(0, {-3.0, 0.0, 0.0}), 1.0);
}

TEST(TubePartition, CoarsestCircleCenters) {
  const TubePartition p = tube_partition(2, 2);
  ASSERT_GE(p.count(), 2u);
  for (std::size_t i = 0; i < p.count(); ++i) {
    EXPECT_NEAR(norm(p.centers()[i]), 1.0, 1e-15);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GE(distance(p.centers()[i], p.centers()[j]), 0.5);
  }
  for (int k = 0; k < 3600; ++k) {
    const double t = 2 * M_PI * k / 3600;
    const Vec u{std::cos(t), std::sin(t), 0.0};
    double best = INFINITY;
    for (const auto& c : p.centers()) best = std::min(best, distance(u, c));
    EXPECT_LE(best, 0.5);
  }
}

TEST(TubePartition, SeparationAndCovering) {
  std::mt19937_64 rng(21);
  for (int d : {2, 3})
    for (int scale : {2, 4, 8, 16}) {
      const TubePartition p = tube_partition(d, scale);
      const auto& cs = p.centers();
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_GE(distance(cs[i], cs[j]), 1.0 / scale - 1e-12);
      for (int trial = 0; trial < 1000; ++trial) {
        Vec u = random_vector(d, rng);
        const double r = norm(u);
        for (auto& x : u) x /= r;
        double best = INFINITY;
        for (const auto& c : cs) best = std::min(best, distance(u, c));
        EXPECT_LT(best, 2.0 / scale) << "d=" << d << " N=" << scale;
      }
    }
}

TEST(TubePartition, PartitionOfUnityAndRange) {
  std::mt19937_64 rng(22);
  for (int d : {2, 3})
    for (int scale : {2, 4, 8}) {
      const TubePartition p = tube_partition(d, scale);
      for (int trial = 0; trial < 1000; ++trial) {
        const Vec xi = random_vector(d, rng);
        double sum = 0.0;
        for (double v : p.chi_all(xi)) {
          EXPECT_GE(v, 0.0);
          EXPECT_LE(v, 1.0);
          sum += v;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
}

TEST(TubePartition, SupportedInTheCone) {
  std::mt19937_64 rng(23);
  const int scale = 8;
  const TubePartition p = tube_partition(2, scale);
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec xi = random_vector(2, rng);
    const double r = norm(xi);
    const Vec u{xi[0] / r, xi[1] / r, 0.0};
    const auto chi = p.chi_all(xi);
    for (std::size_t k = 0; k < p.count(); ++k)
      if (chi[k] > 0.0) EXPECT_LE(distance(u, p.centers()[k]), 2.0 / scale);
  }
}

TEST(TubePartition, OriginIsExcluded) {
  const TubePartition p = tube_partition(2, 4);
  for (double v : p.chi_all({0.0, 0.0, 0.0})) EXPECT_EQ(v, 0.0);
}

TEST(TubePartition, ProjectionsSumToTheFieldOffTheOrigin) {
  const GridSpec g = make_grid(2, 32, 4.0);
  const SpectralField f = SpectralField::sample(g, [](const Vec& x) { return Complex(std::exp(-norm_sq(x))); });
  const TubePartition p = tube_partition(2, 4);
  SpectralField sum = SpectralField::zeros(g, Representation::Frequency);
  for (std::size_t k = 0; k < p.count(); ++k) sum += tube_project(f, p, k);
  SpectralField c = f.to_frequency();
  c[0] = 0.0;
  EXPECT_LE((sum - c).l2_norm(), 1e-12 * c.l2_norm());
}

TEST(TubePartition, RejectsBadScale) {
  EXPECT_THROW(tube_partition(2, 3), Error);
  EXPECT_THROW(tube_partition(2, 1), Error);
  EXPECT_THROW(tube_partition(4, 2), Error);
}
