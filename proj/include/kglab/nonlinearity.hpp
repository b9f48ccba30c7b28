#pragma once

#include <vector>

#include "kglab/grid.hpp"

namespace kglab {

/// Lanczos approximation (g = 7, nine coefficients) with reflection below 1/2.
double lanczos_gamma(double x);

struct NonlinearityParams {
  int dim = 1;
  /// +1 defocusing, -1 focusing.
  int mu = 1;

  double power() const { return 4.0 / dim; }
  /// Lebesgue exponent 2(d+2)/d of the potential energy.
  double potential_exponent() const { return 2.0 * (dim + 2) / dim; }
};

NonlinearityParams make_nonlinearity(int dim, int mu);

/// |z|^{4/d} z.
Complex f_complex(Complex z, int dim);
/// |Re v|^{4/d} Re v, embedded as a real complex number.
Complex f_real(Complex v, int dim);
double f_real_scalar(double x, int dim);

/// Default trapezoid node count for all angular averages.
inline constexpr int kAngularNodes = 1 << 14;

/// C_d = 2^{-1-4/d} * mean over theta of f(1 + e^{i theta}), trapezoid rule.
/// Throws if the imaginary residue exceeds 1e-12.
double c_d_quadrature(int dim, int nodes = kAngularNodes);
/// Change in the quadrature value between `nodes` and 2 * `nodes`.
double c_d_doubling_change(int dim, int nodes = kAngularNodes);

/// Gamma(2/d + 3/2) / (sqrt(pi) Gamma(2/d + 2)).
double c_d_gamma(int dim);

/// mean over theta of f(w + e^{i theta} conj(w)); equals 2^{1+4/d} C_d f(w).
Complex resonant_average(Complex w, int dim, int nodes = kAngularNodes);

/// g_{2k-1} = mean over theta of |cos|^{4/d} cos e^{-i(2k-1) theta}. Real; throws
/// if the imaginary residue exceeds 1e-12. g for k equals g for 1 - k.
double g_coefficient(int k, int dim, int nodes = kAngularNodes);

class CoefficientTable {
 public:
  CoefficientTable(int dim, int max_index, int nodes = kAngularNodes);

  int dim() const { return dim_; }
  int max_index() const { return max_index_; }
  int nodes() const { return nodes_; }
  /// g_{2k-1} for any k with 1 - K <= k <= K.
  double g(int k) const;

 private:
  int dim_;
  int max_index_;
  int nodes_;
  std::vector<double> positive_;  // g for k = 1..K
};

CoefficientTable build_table(int max_index, int dim);

/// Sum of g_{2k-1} |u|^{4/d+2-2k} u^{2k-1} over 1 - K <= k <= K, which pairs each
/// term with its conjugate. Returns 0 at u = 0.
Complex expansion_partial_sum(Complex u, int max_index, const CoefficientTable& table);

}  // namespace kglab
