#pragma once

// Scenario configuration: a flat "key = value" text format.
//
//   # comment
//   omega1     = 10        # default 10
//   omega2     = 10        # default omega1
//   delta1     = 2         # detuning form (or `delta` for both subsystems) ...
//   delta2     = 2
//   omega3     = 8         # ... or absolute partner frequencies, never both
//   omega4     = 8
//   alpha1     = 2         # (or `alpha` for both subsystems)
//   alpha2     = 2
//   gamma      = 0.5
//   nbar       = 0
//   t_start    = 0         # default 0
//   t_end      = 10        # default 10
//   num_points = 2001      # default 2001
//   outputs    = density, concurrence, precursor, eof, events
//
// Numbers may be written as decimals or as a ratio "1/3".

#include <map>
#include <string>
#include <string_view>
#include <vector>
#include <filesystem>

#include "nmq/model.hpp"
#include "nmq/time_grid.hpp"

namespace nmq::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr double kDefaultTEnd = 10.0;
inline constexpr std::size_t kDefaultNumPoints = 2001;

struct OutputSelection {
  bool density = true;
  bool concurrence = true;
  bool precursor = true;
  bool eof = true;
  bool events = true;

  bool operator==(const OutputSelection&) const = default;
};

struct Scenario {
  std::string name;
  ModelParams params;
  TimeGrid grid{0.0, kDefaultTEnd, kDefaultNumPoints};
  OutputSelection outputs;
};

using ConfigMap = std::map<std::string, std::string>;

/// Splits the text into key/value pairs; unknown or repeated keys are errors.
ConfigMap parse_config_map(std::string_view text);

Scenario scenario_from_map(const ConfigMap& config);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

double parse_number(const std::string& key, std::string_view text);

/// Deterministic text form of every field that influences results.
std::string canonical_form(const Scenario& scenario);

/// 64-bit FNV-1a of canonical_form, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Named parameter sets; all use omega1 = omega2 = 10 and symmetric subsystems.
struct Preset {
  std::string name;
  double delta;
  double alpha;
  double gamma;
  double nbar;
  std::string description;
};

const std::vector<Preset>& presets();

/// Throws ConfigError("preset", ...) for unknown names.
Scenario preset_scenario(std::string_view name);

/// A cross product of scenario values. Each key maps to one or more values,
/// given as a comma list ("0.5, 2, 5") or an inclusive range "start:stop:count".
struct SweepSpec {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  std::size_t size() const;
  ConfigMap point(std::size_t index) const;
};

inline constexpr std::size_t kMaxSweepPoints = 100'000;

SweepSpec parse_sweep(std::string_view text);
SweepSpec load_sweep(const std::filesystem::path& path);

}  // namespace nmq::cli
