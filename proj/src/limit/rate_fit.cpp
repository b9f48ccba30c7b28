#include <cmath>

#include "kglab/limit.hpp"
#include "kglab/log.hpp"

namespace kglab {

RateFit rate_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error("rate_fit: x and y lengths differ");
  if (xs.size() < 3) throw Error("rate_fit: needs at least three points");
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(ys[i]))
      throw Error("rate_fit: all values must be positive and finite");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw Error("rate_fit: x values must not all coincide");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace kglab
