#include "nmq/cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "nmq/errors.hpp"

namespace nmq::cli {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "name",   "omega1", "omega2", "omega3", "omega4",  "delta",      "delta1",
    "delta2", "alpha",  "alpha1", "alpha2", "gamma",   "nbar",       "t_start",
    "t_end",  "num_points", "outputs"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_plain(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(key, "invalid number '" + std::string(text) + "' for key '" + key + "'");
  return value;
}

std::size_t parse_count(const std::string& key, std::string_view text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 0)
    throw ConfigError(key, "invalid count '" + std::string(text) + "' for key '" + key + "'");
  return static_cast<std::size_t>(value);
}

OutputSelection parse_outputs(const std::string& text) {
  OutputSelection sel{false, false, false, false, false};
  for (const std::string& item : split(text, ',')) {
    if (item == "density") sel.density = true;
    else if (item == "concurrence") sel.concurrence = true;
    else if (item == "precursor") sel.precursor = true;
    else if (item == "eof") sel.eof = true;
    else if (item == "events") sel.events = true;
    else throw ConfigError("outputs", "unknown output '" + item + "'");
  }
  return sel;
}

std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Value of a per-subsystem quantity given either `shared` or `key1`/`key2`.
std::pair<std::optional<double>, std::optional<double>> pair_value(const ConfigMap& config,
                                                                    const std::string& shared,
                                                                    const std::string& key1,
                                                                    const std::string& key2) {
  const bool has_shared = config.contains(shared);
  if (has_shared && (config.contains(key1) || config.contains(key2)))
    throw ConfigError(shared, "'" + shared + "' cannot be combined with '" + key1 + "'/'" + key2 + "'");
  std::optional<double> a;
  std::optional<double> b;
  if (has_shared) {
    a = b = parse_number(shared, config.at(shared));
  } else {
    if (config.contains(key1)) a = parse_number(key1, config.at(key1));
    if (config.contains(key2)) b = parse_number(key2, config.at(key2));
  }
  return {a, b};
}

}  // namespace

double parse_number(const std::string& key, std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(key, text);
  const double num = parse_plain(key, trim(text.substr(0, slash)));
  const double den = parse_plain(key, trim(text.substr(slash + 1)));
  if (den == 0.0) throw ConfigError(key, "division by zero in value for key '" + key + "'");
  return num / den;
}

ConfigMap parse_config_map(std::string_view text) {
  ConfigMap config;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown configuration key '" + key + "'");
    if (value.empty()) throw ConfigError(key, "empty value for key '" + key + "'");
    if (!config.emplace(key, value).second)
      throw ConfigError(key, "duplicate configuration key '" + key + "'");
  }
  return config;
}

Scenario scenario_from_map(const ConfigMap& config) {
  for (const auto& [key, value] : config) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown configuration key '" + key + "'");
  }
  const auto get = [&](const std::string& key, double fallback) {
    return config.contains(key) ? parse_number(key, config.at(key)) : fallback;
  };
  const auto require = [&](const std::optional<double>& v, const std::string& key) {
    if (!v) throw ConfigError(key, "missing required key '" + key + "'");
    return *v;
  };

  Scenario s;
  s.name = config.contains("name") ? config.at("name") : "custom";

  const double omega1 = get("omega1", 10.0);
  const double omega2 = get("omega2", omega1);
  const auto [alpha1, alpha2] = pair_value(config, "alpha", "alpha1", "alpha2");
  const auto [delta1, delta2] = pair_value(config, "delta", "delta1", "delta2");
  const bool detuning_form = delta1 || delta2;
  const bool absolute_form = config.contains("omega3") || config.contains("omega4");
  if (detuning_form && absolute_form)
    throw ConfigError("omega3", "give either detunings (delta*) or partner frequencies (omega3/omega4), not both");
  if (!detuning_form && !absolute_form)
    throw ConfigError("delta", "missing detunings (delta or delta1/delta2) or partner frequencies (omega3/omega4)");

  ModelParams& p = s.params;
  p.omega1 = omega1;
  p.omega2 = omega2;
  if (detuning_form) {
    p.omega3 = omega1 - require(delta1, "delta1");
    p.omega4 = omega2 - require(delta2, "delta2");
  } else {
    for (const char* key : {"omega3", "omega4"}) {
      if (!config.contains(key)) throw ConfigError(key, std::string("missing required key '") + key + "'");
    }
    p.omega3 = parse_number("omega3", config.at("omega3"));
    p.omega4 = parse_number("omega4", config.at("omega4"));
  }
  p.alpha1 = require(alpha1, "alpha1");
  p.alpha2 = require(alpha2, "alpha2");
  if (!config.contains("gamma")) throw ConfigError("gamma", "missing required key 'gamma'");
  if (!config.contains("nbar")) throw ConfigError("nbar", "missing required key 'nbar'");
  p.gamma = get("gamma", 0.0);
  p.nbar = get("nbar", 0.0);
  if (p.gamma < 0.0) throw ConfigError("gamma", "gamma must be non-negative");
  if (p.nbar < 0.0) throw ConfigError("nbar", "nbar must be non-negative");

  const double t_start = get("t_start", 0.0);
  const double t_end = get("t_end", kDefaultTEnd);
  const std::size_t num_points =
      config.contains("num_points") ? parse_count("num_points", config.at("num_points")) : kDefaultNumPoints;
  if (num_points == 0) throw ConfigError("num_points", "num_points must be positive");
  try {
    s.grid = TimeGrid(t_start, t_end, num_points);
  } catch (const DomainError& e) {
    throw ConfigError("t_end", e.what());
  }
  if (config.contains("outputs")) s.outputs = parse_outputs(config.at("outputs"));
  return s;
}

Scenario parse_scenario(std::string_view text) { return scenario_from_map(parse_config_map(text)); }

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read configuration file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

std::string canonical_form(const Scenario& s) {
  const ModelParams& p = s.params;
  std::ostringstream out;
  out << "omega1=" << format_exact(p.omega1) << "\nomega2=" << format_exact(p.omega2)
      << "\nomega3=" << format_exact(p.omega3) << "\nomega4=" << format_exact(p.omega4)
      << "\nalpha1=" << format_exact(p.alpha1) << "\nalpha2=" << format_exact(p.alpha2)
      << "\ngamma=" << format_exact(p.gamma) << "\nnbar=" << format_exact(p.nbar)
      << "\nt_start=" << format_exact(s.grid.t_start()) << "\nt_end=" << format_exact(s.grid.t_end())
      << "\nnum_points=" << s.grid.size() << "\noutputs=" << s.outputs.density << s.outputs.concurrence
      << s.outputs.precursor << s.outputs.eof << s.outputs.events << "\n";
  return out.str();
}

std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_form(s)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"fig2", 2.0, 2.0, 0.5, 0.0, "detuned, zero temperature: entanglement never fully vanishes"},
      {"fig3", 0.0, 2.0, 0.5, 0.0, "resonant, zero temperature: repeated collapse and revival"},
      {"fig4", 0.0, 0.5, 0.5, 0.0, "weak coupling, zero temperature: damping dominated decay"},
      {"fig5", 0.0, 3.0, 27.0, 0.0, "Markovian limit, zero temperature (rate 1/3)"},
      {"fig6", 0.0, 5.0, 1.0 / 3.0, 0.2, "strong coupling, nbar = 0.2: revivals then sudden death"},
      {"fig7", 2.0, 2.0, 0.5, 0.2, "detuned, nbar = 0.2"},
      {"fig8", 0.0, 2.0, 0.5, 0.2, "resonant, nbar = 0.2"},
      {"fig9", 0.0, 0.5, 1.0, 0.2, "strong damping, nbar = 0.2"},
      {"fig10", 0.0, 3.0, 27.0, 0.2, "Markovian limit, nbar = 0.2 (rate ~1/6)"},
  };
  return table;
}

Scenario preset_scenario(std::string_view name) {
  for (const Preset& pr : presets()) {
    if (pr.name != name) continue;
    Scenario s;
    s.name = pr.name;
    s.params = ModelParams::symmetric(10.0, pr.delta, pr.alpha, pr.gamma, pr.nbar);
    return s;
  }
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

std::size_t SweepSpec::size() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.second.size();
  return n;
}

ConfigMap SweepSpec::point(std::size_t index) const {
  ConfigMap config;
  // Last axis varies fastest.
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const auto& values = it->second;
    config[it->first] = values[index % values.size()];
    index /= values.size();
  }
  return config;
}

namespace {

const std::set<std::string, std::less<>> kScalarOnlyKeys = {"name", "t_start", "t_end",
                                                             "num_points", "outputs"};

std::vector<std::string> expand_values(const std::string& key, const std::string& text) {
  if (kScalarOnlyKeys.contains(key)) return {text};
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError(key, "range for '" + key + "' must be start:stop:count");
    const double start = parse_number(key, parts[0]);
    const double stop = parse_number(key, parts[1]);
    const std::size_t count = parse_count(key, parts[2]);
    if (count == 0) throw ConfigError(key, "range for '" + key + "' needs a positive count");
    if (count > kMaxSweepPoints) throw ConfigError(key, "range for '" + key + "' is too long");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = count == 1 ? start : start + (stop - start) * static_cast<double>(i) /
                                                        static_cast<double>(count - 1);
      out.push_back(format_exact(v));
    }
    return out;
  }
  auto values = split(text, ',');
  for (const std::string& v : values) parse_number(key, v);
  return values;
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
  const ConfigMap raw = parse_config_map(text);
  SweepSpec spec;
  std::size_t total = 1;
  for (const auto& [key, value] : raw) {
    auto values = expand_values(key, value);
    total *= values.size();
    if (total > kMaxSweepPoints)
      throw ConfigError(key, "sweep has more than " + std::to_string(kMaxSweepPoints) + " points");
    spec.axes.emplace_back(key, std::move(values));
  }
  // Validate the first point eagerly so configuration errors surface before any work.
  scenario_from_map(spec.point(0));
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) { return parse_sweep(read_file(path)); }

}  // namespace nmq::cli
