// Acceptance driver: `acceptance <n>` runs the experiments behind criterion n
// and prints one "criterion n: PASS|FAIL" line. Exit status 0 on PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "kglab/experiments.hpp"
#include "kglab/field.hpp"
#include "kglab/grid.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/symmetry.hpp"

using namespace kglab;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string what) {
    if (!ok) passed = false;
    notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }
};

RunConfig base(const char* experiment) {
  RunConfig c;
  c.experiment = experiment;
  return c;
}

void run(Outcome& out, const RunConfig& c, const std::string& label = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport r = run_experiment(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string name = label.empty() ? c.experiment : label;
  std::size_t failed = 0;
  for (const auto& ch : r.checks) {
    if (ch.passed) continue;
    ++failed;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s/%s value=%.6g tolerance=%.6g %s", name.c_str(), ch.name.c_str(), ch.value,
                  ch.tolerance, ch.detail.c_str());
    out.notes.push_back(std::string("  FAIL ") + buf);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s: %zu checks, %zu failed (%.1f s)", name.c_str(), r.checks.size(), failed, secs);
  out.require(failed == 0, buf);
}

Outcome c1() {
  Outcome o;
  RunConfig c = base("cd-table");
  c.dims = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  run(o, c);
  return o;
}

Outcome c2() {
  Outcome o;
  RunConfig c = base("g-table");
  c.dims = {1, 2, 3};
  c.max_index = 64;
  run(o, c);
  return o;
}

Outcome c3() {
  Outcome o;
  RunConfig c = base("resonant-identity");
  c.dims = {1, 2, 3};
  c.samples = 20;
  run(o, c);
  return o;
}

Outcome c4() {
  Outcome o;
  RunConfig gs = base("ground-state");
  gs.dims = {1, 3};
  run(o, gs);
  RunConfig sweep = base("gn-sweep");
  sweep.dim = 2;
  sweep.n = 128;
  sweep.half_width = 20.0;
  sweep.samples = 100;
  run(o, sweep);
  return o;
}

Outcome c5() {
  Outcome o;
  run(o, base("conservation"));
  return o;
}

Outcome c6() {
  Outcome o;
  RunConfig gap = base("dispersion-gap");
  gap.lambda_list = {4.0, 8.0, 16.0, 32.0};
  gap.cutoffs = {1.0, 2.0, 4.0};
  run(o, gap);
  RunConfig prop = base("propagator-limit");
  prop.lambda_list = {4.0, 8.0, 16.0, 32.0};
  prop.half_width = 60.0;
  prop.n = 512;
  prop.sigma = 6.0;
  run(o, prop);
  return o;
}

Outcome c7() {
  Outcome o;
  RunConfig def = base("nls-limit");
  def.dim = 1;
  def.n = 512;
  def.half_width = 60.0;
  def.dt_kg = 0.01;
  def.lambda_list = {4.0, 8.0, 16.0};
  def.mu = 1;
  run(o, def, "nls-limit defocusing d=1");

  RunConfig foc = def;
  foc.mu = -1;
  foc.mass_fraction = 0.3;
  run(o, foc, "nls-limit focusing d=1");

  RunConfig d3 = base("nls-limit");
  d3.dim = 3;
  d3.n = 64;
  d3.half_width = 36.0;
  d3.dt_kg = 0.05;
  d3.lambda_list = {4.0, 8.0};
  d3.ledger = false;
  run(o, d3, "nls-limit defocusing d=3");

  RunConfig led = base("error-ledger");
  led.dim = 1;
  led.n = 512;
  led.half_width = 60.0;
  led.lambda_list = {4.0, 8.0, 16.0, 32.0};
  run(o, led);
  return o;
}

Outcome c8() {
  Outcome o;
  RunConfig c = base("dichotomy");
  c.dim = 1;
  c.n = 1024;
  c.half_width = 20.0;
  c.t_final = 20.0;
  c.mu = -1;
  run(o, c);
  return o;
}

Outcome c9() {
  Outcome o;
  RunConfig part = base("partition-check");
  part.dim = 2;
  part.scales = {2, 4, 8, 16, 32};
  run(o, part);

  {
    const GridSpec g = make_grid(2, 64, 64.0 * M_PI);
    const double step = g.frequency_step();
    const Vec xi0{2 * step, 3 * step, 0.0};
    const Vec xi1{-2 * step, 3 * step, 0.0};
    const double m = std::sqrt(1.0 + xi0[1] * xi0[1]);
    const Vec nu{std::sinh(std::asinh(xi0[0] / m) - std::asinh(xi1[0] / m)), 0.0, 0.0};
    const SpectralField wave =
        SpectralField::sample(g, [&](const Vec& x) { return std::exp(Complex(0, dot(x, xi0))); });
    const BoostResult b = lorentz_boost(wave, nu);
    const long at = g.lattice_index({-2, 3, 0});
    double total = 0.0;
    for (const auto& v : b.field.values()) total += std::norm(v);
    const double share = std::norm(b.field[at]) / total;
    const SpectralField expected =
        SpectralField::sample(g, [&](const Vec& x) { return std::exp(Complex(0, dot(x, xi1))); }).to_frequency();
    const double err = std::abs(b.field[at] - expected[at] * (bracket(xi0) / bracket(xi1)));
    char buf[160];
    std::snprintf(buf, sizeof buf, "boosted plane wave: mass share at image %.6f (>= 0.99), coefficient error %.3g (<= 1e-9)",
                  share, err);
    o.require(share >= 0.99 && err <= 1e-9, buf);
  }

  // Every registry entry, at sizes small enough to run twice.
  std::vector<RunConfig> reruns;
  for (const char* name : {"cd-table", "g-table", "resonant-identity", "dispersion-gap", "propagator-limit",
                           "conservation"})
    reruns.push_back(base(name));
  RunConfig gs = base("ground-state");
  gs.dims = {1};
  reruns.push_back(gs);
  RunConfig gn = base("gn-sweep");
  gn.dim = 2;
  gn.n = 64;
  reruns.push_back(gn);
  RunConfig small = base("nls-limit");
  small.n = 128;
  small.half_width = 40.0;
  small.t_mid = 0.25;
  small.dt_kg = 0.05;
  small.lambda_list = {2.0, 4.0};
  small.ledger = false;
  reruns.push_back(small);
  RunConfig led = small;
  led.experiment = "error-ledger";
  led.lambda_list = {2.0, 4.0, 8.0};
  reruns.push_back(led);
  RunConfig dich = base("dichotomy");
  dich.n = 256;
  dich.mu = -1;
  dich.t_final = 0.5;
  dich.amplitudes = {0.5, 1.1};
  reruns.push_back(dich);
  RunConfig tubes = base("partition-check");
  tubes.dim = 2;
  reruns.push_back(tubes);
  for (const auto& c : reruns) {
    const ExperimentReport a = run_experiment(c);
    const ExperimentReport b = run_experiment(c);
    bool same = a.tables.size() == b.tables.size();
    for (std::size_t i = 0; same && i < a.tables.size(); ++i) same = a.tables[i].csv() == b.tables[i].csv();
    o.require(same, c.experiment + ": rerun writes identical CSV bytes");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9};
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..%zu>\n", criteria.size());
    return 2;
  }
  const int n = std::atoi(argv[1]);
  if (n < 1 || n > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "acceptance: no criterion %s\n", argv[1]);
    return 2;
  }
  Outcome o;
  try {
    o = criteria[n - 1]();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  for (const auto& line : o.notes) std::printf("%s\n", line.c_str());
  std::printf("criterion %d: %s\n", n, o.passed ? "PASS" : "FAIL");
  return o.passed ? 0 : 1;
}
