#include "kglab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <variant>

namespace kglab {
namespace {

using Member = std::variant<std::string RunConfig::*, std::uint64_t RunConfig::*, bool RunConfig::*, int RunConfig::*,
                            double RunConfig::*, std::vector<double> RunConfig::*, std::vector<int> RunConfig::*>;

struct Key {
  const char* section;
  const char* name;
  Member member;
};

const Key kKeys[] = {
    {"run", "experiment", &RunConfig::experiment},
    {"run", "seed", &RunConfig::seed},
    {"run", "out", &RunConfig::out},
    {"run", "strict", &RunConfig::strict},
    {"run", "jobs", &RunConfig::jobs},
    {"grid", "dim", &RunConfig::dim},
    {"grid", "n", &RunConfig::n},
    {"grid", "half_width", &RunConfig::half_width},
    {"stepper", "dt", &RunConfig::dt},
    {"stepper", "t_final", &RunConfig::t_final},
    {"stepper", "stride", &RunConfig::stride},
    {"stepper", "dealias", &RunConfig::dealias},
    {"stepper", "blowup_threshold", &RunConfig::blowup_threshold},
    {"stepper", "mu", &RunConfig::mu},
    {"limit", "theta", &RunConfig::theta},
    {"limit", "lambda_list", &RunConfig::lambda_list},
    {"limit", "t_mid", &RunConfig::t_mid},
    {"limit", "dt_kg", &RunConfig::dt_kg},
    {"limit", "stride", &RunConfig::limit_stride},
    {"limit", "sigma", &RunConfig::sigma},
    {"limit", "amplitude", &RunConfig::amplitude},
    {"limit", "mass_fraction", &RunConfig::mass_fraction},
    {"limit", "ledger", &RunConfig::ledger},
    {"limit", "linear", &RunConfig::linear},
    {"scan", "amplitudes", &RunConfig::amplitudes},
    {"scan", "shape", &RunConfig::shape},
    {"tables", "dims", &RunConfig::dims},
    {"tables", "max_index", &RunConfig::max_index},
    {"tables", "samples", &RunConfig::samples},
    {"tables", "scales", &RunConfig::scales},
    {"tables", "cutoffs", &RunConfig::cutoffs},
    {"tables", "times", &RunConfig::times},
};

const char* const kSections[] = {"run", "grid", "stepper", "limit", "scan", "tables"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
bool parse_integer(const std::string& s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

template <class T, class F>
bool parse_list(const std::string& s, std::vector<T>& out, F parse_one) {
  out.clear();
  if (s.empty()) return true;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T v{};
    if (!parse_one(trim(item), v)) return false;
    out.push_back(v);
  }
  return true;
}

const char* type_name(const Member& m) {
  switch (m.index()) {
    case 0: return "string";
    case 1: return "unsigned integer";
    case 2: return "boolean";
    case 3: return "integer";
    case 4: return "real";
    case 5: return "list of reals";
    default: return "list of integers";
  }
}

bool assign(RunConfig& c, const Member& member, const std::string& value) {
  return std::visit(
      [&](auto m) -> bool {
        using T = std::remove_cvref_t<decltype(c.*m)>;
        if constexpr (std::is_same_v<T, std::string>) {
          c.*m = value;
          return true;
        } else if constexpr (std::is_same_v<T, bool>) {
          if (value != "true" && value != "false") return false;
          c.*m = value == "true";
          return true;
        } else if constexpr (std::is_same_v<T, double>) {
          return parse_double(value, c.*m);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          return parse_list(value, c.*m, parse_double);
        } else if constexpr (std::is_same_v<T, std::vector<int>>) {
          return parse_list(value, c.*m, [](const std::string& s, int& v) { return parse_integer(s, v); });
        } else {
          return parse_integer(value, c.*m);
        }
      },
      member);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const RunConfig& c, const Member& member) {
  return std::visit(
      [&](auto m) -> std::string {
        using T = std::remove_cvref_t<decltype(c.*m)>;
        const T& v = c.*m;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>>) {
          std::string s;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            if constexpr (std::is_same_v<T, std::vector<double>>) {
              s += format_double(v[i]);
            } else {
              s += std::to_string(v[i]);
            }
          }
          return s;
        } else {
          return std::to_string(v);
        }
      },
      member);
}

bool power_of_two(long v) { return v >= 1 && (v & (v - 1)) == 0; }

}  // namespace

ParseResult parse_config(const std::string& text, bool strict) {
  ParseResult result;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::string section = "run";
  std::istringstream in(text);
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        result.errors.push_back({line_no, "malformed section header '" + line + "'"});
        continue;
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      bool known = false;
      for (const char* s : kSections) known = known || section == s;
      if (!known) result.errors.push_back({line_no, "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      result.errors.push_back({line_no, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const Key* match = nullptr;
    for (const auto& k : kKeys)
      if (section == k.section && key == k.name) match = &k;
    if (!match) {
      ConfigError e{line_no, "unknown key '" + key + "' in [" + section + "]"};
      (strict ? result.errors : result.warnings).push_back(e);
      continue;
    }
    const auto [it, inserted] = seen.try_emplace({section, key}, line_no);
    if (!inserted) {
      result.errors.push_back({line_no, "duplicate key '" + key + "' in [" + section + "] (lines " +
                                            std::to_string(it->second) + " and " + std::to_string(line_no) + ")"});
      continue;
    }
    if (!assign(result.config, match->member, value))
      result.errors.push_back({line_no, "type mismatch for '" + key + "': expected " + type_name(match->member) +
                                            ", got '" + value + "'"});
  }
  if (result.errors.empty()) {
    for (auto& e : validate_config(result.config)) result.errors.push_back(std::move(e));
  }
  return result;
}

std::vector<ConfigError> validate_config(const RunConfig& c) {
  std::vector<ConfigError> errs;
  auto require = [&](bool ok, std::string msg) {
    if (!ok) errs.push_back({0, std::move(msg)});
  };
  for (const std::string* s : {&c.experiment, &c.out})
    require(s->find_first_of("#\n\r") == std::string::npos && trim(*s) == *s,
            "[run] '" + *s + "' cannot be written back (comment marker, line break or edge spaces)");
  require(c.jobs >= 1, "[run] jobs must be >= 1");
  require(c.dim >= 1 && c.dim <= 3, "[grid] dim must be 1, 2 or 3");
  require(power_of_two(c.n) && c.n >= 2, "[grid] n must be a power of two >= 2");
  require(c.half_width > 0.0, "[grid] half_width must be positive");
  require(c.dt > 0.0, "[stepper] dt must be positive");
  require(c.t_final > 0.0, "[stepper] t_final must be positive");
  require(c.stride >= 1, "[stepper] stride must be >= 1");
  require(c.blowup_threshold > 1.0, "[stepper] blowup_threshold must exceed 1");
  require(c.mu == 1 || c.mu == -1, "[stepper] mu must be +1 or -1");
  require(c.theta > 0.0 && c.theta <= 1.0 / 16.0,
          "[limit] theta = " + format_double(c.theta) + " violates the limit precondition theta in (0, 1/16]");
  require(!c.lambda_list.empty(), "[limit] lambda_list is empty");
  for (std::size_t i = 0; i < c.lambda_list.size(); ++i) {
    const double l = c.lambda_list[i];
    require(l >= 1.0 && l == std::round(l) && power_of_two(std::lround(l)),
            "[limit] lambda_list entries must be dyadic, got " + format_double(l));
    if (i) require(l > c.lambda_list[i - 1], "[limit] lambda_list must be increasing");
  }
  require(c.t_mid > 0.0, "[limit] t_mid must be positive");
  require(c.dt_kg > 0.0, "[limit] dt_kg must be positive");
  require(c.limit_stride >= 1, "[limit] stride must be >= 1");
  require(c.sigma > 0.0, "[limit] sigma must be positive");
  require(c.mass_fraction >= 0.0 && c.mass_fraction < 1.0, "[limit] mass_fraction must lie in [0, 1)");
  require(c.shape == "ground-state" || c.shape == "gaussian", "[scan] shape must be ground-state or gaussian");
  for (int d : c.dims) require(d >= 1 && d <= 10, "[tables] dims entries must lie in 1..10");
  require(c.max_index >= 1, "[tables] max_index must be >= 1");
  require(c.samples >= 1, "[tables] samples must be >= 1");
  for (int s : c.scales) require(power_of_two(s), "[tables] scales must be powers of two");
  for (double k : c.cutoffs) require(k > 0.0, "[tables] cutoffs must be positive");
  for (double t : c.times) require(std::abs(t) <= 1.0, "[tables] times must lie in [-1, 1]");
  return errs;
}

std::string write_config(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& k : kKeys) {
    if (section != k.section) {
      if (!section.empty()) out += '\n';
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += std::string(k.name) + " = " + render(c, k.member) + '\n';
  }
  return out;
}

std::string format_errors(const std::vector<ConfigError>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (e.line > 0) out += "line " + std::to_string(e.line) + ": ";
    out += e.message + '\n';
  }
  return out;
}

}  // namespace kglab
