#include "kglab/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "kglab/log.hpp"

namespace kglab {

NonlinearityParams make_nonlinearity(int dim, int mu) {
  if (dim < 1) throw Error("nonlinearity: dimension must be >= 1");
  if (mu != 1 && mu != -1) throw Error("nonlinearity: mu must be +1 or -1");
  return {dim, mu};
}

double f_real_scalar(double x, int dim) {
  switch (dim) {
    case 1: {
      const double x2 = x * x;
      return x2 * x2 * x;
    }
    case 2:
      return x * x * x;
    default:
      return x == 0.0 ? 0.0 : std::pow(std::abs(x), 4.0 / dim) * x;
  }
}

Complex f_real(Complex v, int dim) { return {f_real_scalar(v.real(), dim), 0.0}; }

Complex f_complex(Complex z, int dim) {
  const double m2 = std::norm(z);
  if (m2 == 0.0) return {0.0, 0.0};
  switch (dim) {
    case 1:
      return (m2 * m2) * z;
    case 2:
      return m2 * z;
    default:
      return std::pow(m2, 2.0 / dim) * z;
  }
}

namespace {

void require_real(Complex value, const char* what) {
  if (std::abs(value.imag()) > 1e-12) {
    std::ostringstream msg;
    msg << what << ": imaginary residue " << value.imag() << " exceeds 1e-12";
    throw Error(msg.str());
  }
}

template <class Fn>
Complex angular_mean(int nodes, Fn&& fn) {
  if (nodes < 8) throw Error("angular quadrature needs at least 8 nodes");
  Complex sum{};
  for (int j = 0; j < nodes; ++j) sum += fn(2.0 * M_PI * j / nodes);
  return sum / static_cast<double>(nodes);
}

Complex c_d_raw(int dim, int nodes) {
  const Complex mean = angular_mean(nodes, [dim](double t) { return f_complex(1.0 + std::polar(1.0, t), dim); });
  return std::pow(2.0, -1.0 - 4.0 / dim) * mean;
}

}  // namespace

double c_d_quadrature(int dim, int nodes) {
  if (dim < 1) throw Error("c_d_quadrature: dimension must be >= 1");
  const Complex value = c_d_raw(dim, nodes);
  require_real(value, "c_d_quadrature");
  return value.real();
}

double c_d_doubling_change(int dim, int nodes) {
  return std::abs(c_d_raw(dim, 2 * nodes).real() - c_d_raw(dim, nodes).real());
}

Complex resonant_average(Complex w, int dim, int nodes) {
  if (w == Complex{}) return {};
  const Complex wbar = std::conj(w);
  return angular_mean(nodes, [&](double t) { return f_complex(w + std::polar(1.0, t) * wbar, dim); });
}

double g_coefficient(int k, int dim, int nodes) {
  if (nodes < 8) throw Error("g_coefficient: needs at least 8 nodes");
  const long harmonic = 2L * k - 1;
  const double p = 4.0 / dim;
  Complex sum{};
  for (long j = 0; j < nodes; ++j) {
    const double c = std::cos(2.0 * M_PI * j / nodes);
    // Reduce harmonic * j modulo the node count so large harmonics keep full phase accuracy.
    long r = (harmonic * j) % nodes;
    if (r < 0) r += nodes;
    sum += std::pow(std::abs(c), p) * c * std::polar(1.0, -2.0 * M_PI * r / nodes);
  }
  const Complex value = sum / static_cast<double>(nodes);
  require_real(value, "g_coefficient");
  return value.real();
}

CoefficientTable::CoefficientTable(int dim, int max_index, int nodes)
    : dim_(dim), max_index_(max_index), nodes_(nodes) {
  if (max_index < 1) throw Error("build_table: K must be >= 1");
  positive_.reserve(max_index);
  for (int k = 1; k <= max_index; ++k) positive_.push_back(g_coefficient(k, dim, nodes));
}

double CoefficientTable::g(int k) const {
  const int m = k >= 1 ? k : 1 - k;
  if (m > max_index_) throw Error("CoefficientTable: index outside the table");
  return positive_[m - 1];
}

CoefficientTable build_table(int max_index, int dim) { return CoefficientTable(dim, max_index); }

Complex expansion_partial_sum(Complex u, int max_index, const CoefficientTable& table) {
  if (u == Complex{}) return {};
  if (max_index > table.max_index()) throw Error("expansion_partial_sum: K exceeds the table");
  // Each term is g |u|^{1+4/d} e^{i(2k-1) arg u}; the pair (k, 1-k) gives a cosine.
  const double amplitude = std::pow(std::abs(u), 1.0 + 4.0 / table.dim());
  const double phase = std::arg(u);
  double sum = 0.0;
  for (int k = 1; k <= max_index; ++k) sum += 2.0 * table.g(k) * std::cos((2 * k - 1) * phase);
  return {amplitude * sum, 0.0};
}

}  // namespace kglab
