#include <gtest/gtest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "kglab/field_io.hpp"
#include "kglab/log.hpp"

using namespace kglab;

namespace {

SpectralField random_field(const GridSpec& g, Representation rep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  SpectralField f(g, rep);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = Complex(n01(rng), n01(rng));
  return f;
}

}  // namespace

TEST(FieldIo, BinaryRoundTripIsBitExact) {
  for (auto rep : {Representation::Physical, Representation::Frequency}) {
    const SpectralField f = random_field(make_grid(2, 16, 3.5), rep, 5);
    std::stringstream ss;
    write_field_binary(ss, f);
    const SpectralField g = read_field_binary(ss);
    EXPECT_EQ(g.grid(), f.grid());
    EXPECT_EQ(g.representation(), rep);
    for (std::size_t i = 0; i < f.grid().size(); ++i) EXPECT_EQ(g[i], f[i]);
  }
}

TEST(FieldIo, HeaderLayout) {
  const SpectralField f = random_field(make_grid(1, 8, 2.0), Representation::Frequency, 6);
  std::stringstream ss;
  write_field_binary(ss, f);
  const std::string bytes = ss.str();
  ASSERT_EQ(bytes.size(), 4u + 4u + 8u + 4u + 8u * 16u);
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  EXPECT_EQ(p[0], 1);  // little-endian int32 d
  EXPECT_EQ(p[4], 8);  // N
  double l = 0.0;
  std::memcpy(&l, p + 8, 8);
  EXPECT_EQ(l, 2.0);
  EXPECT_EQ(p[16], 1);  // frequency flag
  double re = 0.0;
  std::memcpy(&re, p + 20, 8);
  EXPECT_EQ(re, f[0].real());
}

TEST(FieldIo, TruncatedInputIsAnError) {
  const SpectralField f = random_field(make_grid(1, 8, 2.0), Representation::Physical, 7);
  std::stringstream ss;
  write_field_binary(ss, f);
  std::string bytes = ss.str();
  bytes.resize(bytes.size() - 3);
  std::stringstream cut(bytes);
  EXPECT_THROW(read_field_binary(cut), Error);
}

TEST(FieldIo, BadRepresentationFlag) {
  const SpectralField f = random_field(make_grid(1, 8, 2.0), Representation::Physical, 8);
  std::stringstream ss;
  write_field_binary(ss, f);
  std::string bytes = ss.str();
  bytes[16] = 7;
  std::stringstream bad(bytes);
  EXPECT_THROW(read_field_binary(bad), Error);
}

TEST(FieldIo, FileRoundTrip) {
  const SpectralField f = random_field(make_grid(3, 8, 1.0), Representation::Physical, 9);
  const auto path = std::filesystem::temp_directory_path() / "kglab_field_io_test.bin";
  save_field(path.string(), f);
  const SpectralField g = load_field(path.string());
  std::filesystem::remove(path);
  for (std::size_t i = 0; i < f.grid().size(); ++i) EXPECT_EQ(g[i], f[i]);
  EXPECT_THROW(load_field((path.parent_path() / "kglab_missing_field.bin").string()), Error);
}

TEST(FieldIo, CsvHasOneRowPerPoint) {
  const GridSpec g = make_grid(2, 8, 1.0);
  const SpectralField f = random_field(g, Representation::Physical, 10);
  std::stringstream ss;
  write_field_csv(ss, f);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "x0,x1,re,im");
  std::size_t rows = 0;
  while (std::getline(ss, line)) ++rows;
  EXPECT_EQ(rows, g.size());
}

TEST(FieldIo, CsvRefusesLargeGrids) {
  std::stringstream ss;
  EXPECT_THROW(write_field_csv(ss, SpectralField::zeros(make_grid(3, 64, 1.0))), Error);
}
