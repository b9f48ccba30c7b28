#include <array>
#include <cmath>

#include "kglab/nonlinearity.hpp"

namespace kglab {

double lanczos_gamma(double x) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + g + 0.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double c_d_gamma(int dim) {
  const double s = 2.0 / dim;
  return lanczos_gamma(s + 1.5) / (std::sqrt(M_PI) * lanczos_gamma(s + 2.0));
}

}  // namespace kglab
