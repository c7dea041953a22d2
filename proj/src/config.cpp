#include "fhnx/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace fhnx {

namespace {

const std::vector<std::string> kKeys = {
    "params.D",           "params.epsilon",      "params.beta",         "params.c",
    "family.tag",         "family.c1",           "family.c2",           "family.x0",
    "grid.x_min",         "grid.x_max",          "grid.nx",             "grid.t_min",
    "grid.t_max",         "grid.nt",             "tolerances.analytic", "tolerances.fd",
    "tolerances.invariant", "tolerances.third_order", "tolerances.simulation",
    "output.format",      "output.path",         "run.seed",            "stability.u_star",
    "stability.k_max",    "stability.samples",   "simulate.scheme",     "simulate.bc",
    "simulate.cfl",       "simulate.dt",         "simulate.refinements", "ansatz.A",
    "ansatz.B",
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

double to_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE ||
      !std::isfinite(d)) {
    fail(key + ": '" + value + "' is not a finite number");
  }
  return d;
}

long long to_integer(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long n = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    fail(key + ": '" + value + "' is not an integer");
  }
  return n;
}

int to_int(const std::string& key, const std::string& value) {
  const long long n = to_integer(key, value);
  if (n < -2147483647LL || n > 2147483647LL) fail(key + ": out of range");
  return static_cast<int>(n);
}

std::string resolve_key(const std::string& raw) {
  if (raw.find('.') != std::string::npos) {
    if (std::find(kKeys.begin(), kKeys.end(), raw) == kKeys.end()) fail("unknown key '" + raw + "'");
    return raw;
  }
  std::string match;
  for (const auto& k : kKeys) {
    if (k.substr(k.find('.') + 1) == raw) {
      if (!match.empty()) fail("ambiguous key '" + raw + "'");
      match = k;
    }
  }
  if (match.empty()) fail("unknown key '" + raw + "'");
  return match;
}

using Entries = std::map<std::string, std::string>;

Entries parse_entries(std::string_view text) {
  Entries entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (s.front() == '[') {
      if (s.back() != ']') fail(where + "unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      const bool known = std::any_of(kKeys.begin(), kKeys.end(), [&](const std::string& k) {
        return k.compare(0, k.find('.'), section) == 0 && k.find('.') == section.size();
      });
      if (!known) fail(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(where + "expected key = value");
    if (section.empty()) fail(where + "entry outside of a section");
    const std::string key = section + "." + trim(std::string_view(s).substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      fail(where + "unknown key '" + key + "'");
    }
    if (entries.count(key)) fail(where + "duplicate key '" + key + "'");
    entries[key] = trim(std::string_view(s).substr(eq + 1));
  }
  return entries;
}

}  // namespace

const std::vector<std::string>& known_config_keys() { return kKeys; }

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  Entries entries = parse_entries(text);
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) fail("override '" + ov + "' is not key=value");
    entries[resolve_key(trim(std::string_view(ov).substr(0, eq)))] =
        trim(std::string_view(ov).substr(eq + 1));
  }

  RunConfig cfg;
  double D = cfg.params.D;
  double eps = cfg.params.epsilon;
  double beta = cfg.params.beta;
  double c = cfg.params.c;
  Grid& g = cfg.grid;

  for (const auto& [key, value] : entries) {
    cfg.explicit_keys.insert(key);
    if (key == "params.D") D = to_double(key, value);
    else if (key == "params.epsilon") eps = to_double(key, value);
    else if (key == "params.beta") beta = to_double(key, value);
    else if (key == "params.c") c = to_double(key, value);
    else if (key == "family.tag") cfg.family_tag = parse_family_tag(value);
    else if (key == "family.c1") cfg.family.c1 = to_double(key, value);
    else if (key == "family.c2") cfg.family.c2 = to_double(key, value);
    else if (key == "family.x0") cfg.family.x0 = to_double(key, value);
    else if (key == "grid.x_min") g.x_min = to_double(key, value);
    else if (key == "grid.x_max") g.x_max = to_double(key, value);
    else if (key == "grid.nx") g.nx = to_int(key, value);
    else if (key == "grid.t_min") g.t_min = to_double(key, value);
    else if (key == "grid.t_max") g.t_max = to_double(key, value);
    else if (key == "grid.nt") g.nt = to_int(key, value);
    else if (key == "tolerances.analytic") cfg.tol.analytic = to_double(key, value);
    else if (key == "tolerances.fd") cfg.tol.fd = to_double(key, value);
    else if (key == "tolerances.invariant") cfg.tol.invariant = to_double(key, value);
    else if (key == "tolerances.third_order") cfg.tol.third_order = to_double(key, value);
    else if (key == "tolerances.simulation") cfg.tol.simulation = to_double(key, value);
    else if (key == "output.format") {
      if (value != "csv" && value != "json") fail("output.format must be csv or json");
      cfg.format = value;
    } else if (key == "output.path") cfg.out_path = value;
    else if (key == "run.seed") {
      const long long s = to_integer(key, value);
      if (s < 0) fail("run.seed must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "stability.u_star") {
      if (value != "auto") (void)to_double(key, value);
      cfg.u_star = value;
    } else if (key == "stability.k_max") cfg.k_max = to_double(key, value);
    else if (key == "stability.samples") cfg.samples = to_int(key, value);
    else if (key == "simulate.scheme") cfg.scheme = parse_scheme(value);
    else if (key == "simulate.bc") cfg.bc = parse_boundary(value);
    else if (key == "simulate.cfl") cfg.cfl = to_double(key, value);
    else if (key == "simulate.dt") {
      if (value == "auto") cfg.dt.reset();
      else cfg.dt = to_double(key, value);
    } else if (key == "simulate.refinements") cfg.refinements = to_int(key, value);
    else if (key == "ansatz.A") {
      if (value == "auto") cfg.ansatz_A.reset();
      else cfg.ansatz_A = to_double(key, value);
    } else if (key == "ansatz.B") cfg.ansatz_B = to_double(key, value);
  }

  cfg.params = validate_params(D, eps, beta, c);
  cfg.grid = make_grid(g.x_min, g.x_max, g.nx, g.t_min, g.t_max, g.nt);
  if (!(cfg.k_max > 0.0)) fail("stability.k_max must be > 0");
  if (cfg.samples < 2) fail("stability.samples must be >= 2");
  if (cfg.refinements < 0) fail("simulate.refinements must be >= 0");
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& cfg) {
  const auto num = [](double d) { return format_number(d); };
  const Grid& g = cfg.grid;
  return {
      {"params.D", num(cfg.params.D)},
      {"params.epsilon", num(cfg.params.epsilon)},
      {"params.beta", num(cfg.params.beta)},
      {"params.c", num(cfg.params.c)},
      {"family.tag", std::string(to_string(cfg.family_tag))},
      {"family.c1", num(cfg.family.c1)},
      {"family.c2", num(cfg.family.c2)},
      {"family.x0", num(cfg.family.x0)},
      {"grid.x_min", num(g.x_min)},
      {"grid.x_max", num(g.x_max)},
      {"grid.nx", std::to_string(g.nx)},
      {"grid.t_min", num(g.t_min)},
      {"grid.t_max", num(g.t_max)},
      {"grid.nt", std::to_string(g.nt)},
      {"tolerances.analytic", num(cfg.tol.analytic)},
      {"tolerances.fd", num(cfg.tol.fd)},
      {"tolerances.invariant", num(cfg.tol.invariant)},
      {"tolerances.third_order", num(cfg.tol.third_order)},
      {"tolerances.simulation", num(cfg.tol.simulation)},
      {"output.format", cfg.format},
      {"output.path", cfg.out_path},
      {"run.seed", std::to_string(cfg.seed)},
      {"stability.u_star", cfg.u_star},
      {"stability.k_max", num(cfg.k_max)},
      {"stability.samples", std::to_string(cfg.samples)},
      {"simulate.scheme", std::string(to_string(cfg.scheme))},
      {"simulate.bc", std::string(to_string(cfg.bc))},
      {"simulate.cfl", num(cfg.cfl)},
      {"simulate.dt", cfg.dt ? num(*cfg.dt) : "auto"},
      {"simulate.refinements", std::to_string(cfg.refinements)},
      {"ansatz.A", cfg.ansatz_A ? num(*cfg.ansatz_A) : "auto"},
      {"ansatz.B", num(cfg.ansatz_B)},
  };
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& [key, value] : echo_config(cfg)) {
    const std::string sec = key.substr(0, key.find('.'));
    if (sec != section) {
      if (!section.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    if (key == "output.path" && value.empty()) continue;
    out += key.substr(key.find('.') + 1) + " = " + value + "\n";
  }
  return out;
}

}  // namespace fhnx
