#include "kglab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <utility>

#include "kglab/log.hpp"

namespace kglab {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  PlanPair get(int dim, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(dim, n);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    int dims[3] = {n, n, n};
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    CVector a(total), b(total);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair plans;
    plans.forward = fftw_plan_dft(dim, dims, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE);
    plans.inverse = fftw_plan_dft(dim, dims, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plans.forward || !plans.inverse) throw Error("fft: FFTW plan creation failed");
    plans_.emplace(key, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

bool aligned(const void* p) { return reinterpret_cast<std::uintptr_t>(p) % 64 == 0; }

void execute(fftw_plan plan, const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != grid.size() || out.size() != grid.size()) throw Error("fft: buffer size does not match grid");
  // New-array execute requires the same alignment as the planning buffers.
  if (aligned(in.data()) && aligned(out.data()) && in.data() != out.data()) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  CVector src(in.begin(), in.end());
  CVector dst(grid.size());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(src.data()), reinterpret_cast<fftw_complex*>(dst.data()));
  std::copy(dst.begin(), dst.end(), out.begin());
}

}  // namespace

void fft_forward(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out) {
  execute(cache().get(grid.dim(), grid.n()).forward, grid, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
}

void fft_inverse(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out) {
  execute(cache().get(grid.dim(), grid.n()).inverse, grid, in, out);
}

}  // namespace kglab
