#pragma once

#include "fhnx/core.hpp"
#include "fhnx/simulate.hpp"
#include "fhnx/solutions.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fhnx {

struct Tolerances {
  double analytic = 1e-10;
  double fd = 1e-5;
  double invariant = 1e-13;
  double third_order = 1e-9;
  double simulation = 1e-3;
};

/// Everything a command needs, after defaults are applied.
///
/// File grammar (docs/config.md):
///   line     := blank | comment | section | entry
///   comment  := ('#' | ';') any*
///   section  := '[' name ']'
///   entry    := key '=' value          (only inside a section)
/// Whitespace around names and values is ignored. Keys are unique within a
/// file; unknown sections or keys are errors.
struct RunConfig {
  Params params = Params{1.03, 0.3, 2.0, 0.0};
  FamilyTag family_tag = FamilyTag::NonClassicalExp;
  FamilyConstants family;
  Grid grid{-3.0, 3.0, 201, 0.0, 5.0, 101};
  Tolerances tol;
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 20240101;

  std::string u_star = "auto";
  double k_max = 5.0;
  int samples = 101;

  Scheme scheme = Scheme::RK4;
  Boundary bc = Boundary::DirichletFromFamily;
  double cfl = 0.25;
  std::optional<double> dt;
  int refinements = 0;

  std::optional<double> ansatz_A;  // unset: -eps beta / 3
  double ansatz_B = 0.0;

  /// Dotted keys ("grid.nx") given in the file or by overrides.
  std::set<std::string> explicit_keys;

  bool is_explicit(std::string_view dotted) const {
    return explicit_keys.count(std::string(dotted)) > 0;
  }
};

/// Parses file text, then applies `overrides` ("section.key=value" or a bare
/// key that is unique across sections). Throws ConfigError for syntax
/// problems, unknown keys and malformed values, NonPositiveParameter for
/// invalid model constants.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Every key with its effective value, in a fixed order.
std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& cfg);

/// Serialises a config back into the file grammar; parse_config of the
/// result reproduces the same values.
std::string to_config_text(const RunConfig& cfg);

/// All recognised dotted keys.
const std::vector<std::string>& known_config_keys();

}  // namespace fhnx
