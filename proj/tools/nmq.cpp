#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "nmq/cli/commands.hpp"
#include "nmq/errors.hpp"

namespace {

using namespace nmq::cli;

int run(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of two qubits with damped mini-reservoirs"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  auto* simulate = app.add_subcommand("simulate", "Run one scenario");
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  bool svg = false;
  auto* config_opt = simulate->add_option("config", config_path, "Scenario file");
  auto* preset_opt = simulate->add_option("--preset", preset, "Built-in parameter set");
  config_opt->excludes(preset_opt);
  simulate->add_option("-o,--out", out_dir, "Output directory");
  simulate->add_flag("--svg", svg, "Also write concurrence.svg");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_path;
  std::string sweep_out = "sweep.csv";
  unsigned threads = 0;
  sweep->add_option("spec", sweep_path, "Sweep file")->required();
  sweep->add_option("-o,--out", sweep_out, "Summary CSV");
  sweep->add_option("-j,--threads", threads, "Worker threads (default NMQ_THREADS or all cores)");

  auto* verify = app.add_subcommand("verify", "Run self-consistency checks");
  std::string level = "quick";
  bool nz = false;
  bool corrupt = false;
  verify->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--nz", nz, "Include the memory-kernel check");
  verify->add_flag("--corrupt-generator", corrupt)->group("");

  auto* list = app.add_subcommand("list-presets", "Show the built-in parameter sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  if (*simulate) {
    if (config_path.empty() && preset.empty()) {
      std::cerr << "simulate: give a scenario file or --preset\n";
      return kUsage;
    }
    const Scenario scenario = preset.empty() ? load_scenario(config_path) : preset_scenario(preset);
    const RunRecord record = cmd_simulate(scenario, out_dir, svg);
    std::cout << "scenario " << record.scenario_hash << " -> " << out_dir << '\n';
    return kOk;
  }
  if (*sweep) {
    const SweepSpec spec = load_sweep(sweep_path);
    cmd_sweep(spec, sweep_out, threads > 0 ? threads : thread_limit());
    std::cout << spec.size() << " scenarios -> " << sweep_out << '\n';
    return kOk;
  }
  if (*verify) {
    VerifyOptions options;
    options.level = level == "full" ? VerifyLevel::full : VerifyLevel::quick;
    options.nz = nz;
    options.corrupt_generator = corrupt;
    bool ok = true;
    for (const CheckResult& r : cmd_verify(options)) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
      ok = ok && r.passed;
    }
    return ok ? kOk : kVerificationFailed;
  }
  if (*list) {
    std::printf("%-6s %6s %6s %8s %6s  %s\n", "name", "delta", "alpha", "gamma", "nbar", "");
    for (const Preset& p : presets())
      std::printf("%-6s %6g %6g %8.4g %6g  %s\n", p.name.c_str(), p.delta, p.alpha, p.gamma, p.nbar,
                  p.description.c_str());
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nmq::ConfigError& e) {
    std::cerr << "error: " << e.key() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const nmq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nmq::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
