#include "kglab/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "kglab/log.hpp"

namespace kglab {
namespace {

template <class T>
void put(std::ostream& os, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char bytes[sizeof(T)];
  if (!is.read(bytes, sizeof(T))) throw Error("read_field_binary: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_field_binary(std::ostream& os, const SpectralField& field) {
  const GridSpec& g = field.grid();
  put<std::int32_t>(os, g.dim());
  put<std::int32_t>(os, g.n());
  put<double>(os, g.half_width());
  put<std::int32_t>(os, static_cast<std::int32_t>(field.representation()));
  for (const auto& c : field.values()) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }
}

SpectralField read_field_binary(std::istream& is) {
  const int d = get<std::int32_t>(is);
  const int n = get<std::int32_t>(is);
  const double l = get<double>(is);
  const int rep = get<std::int32_t>(is);
  if (rep != 0 && rep != 1) throw Error("read_field_binary: bad representation flag");
  const GridSpec g = make_grid(d, n, l);
  CVector values(g.size());
  for (auto& c : values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    c = Complex(re, im);
  }
  return SpectralField(g, std::move(values), static_cast<Representation>(rep));
}

void save_field(const std::string& path, const SpectralField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("save_field: cannot open " + path);
  write_field_binary(os, field);
}

SpectralField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("load_field: cannot open " + path);
  return read_field_binary(is);
}

void write_field_csv(std::ostream& os, const SpectralField& field) {
  const GridSpec& g = field.grid();
  if (g.size() > 65536) throw Error("write_field_csv: grid too large for CSV, use the binary layout");
  const bool phys = field.is_physical();
  const char* axis = phys ? "x" : "xi";
  for (int a = 0; a < g.dim(); ++a) os << axis << a << ',';
  os << "re,im\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = phys ? g.point(i) : g.frequency(i);
    for (int a = 0; a < g.dim(); ++a) os << p[a] << ',';
    os << field[i].real() << ',' << field[i].imag() << '\n';
  }
}

}  // namespace kglab
