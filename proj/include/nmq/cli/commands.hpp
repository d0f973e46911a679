#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nmq/cli/scenario.hpp"
#include "nmq/entanglement.hpp"
#include "nmq/reconstruction.hpp"

namespace nmq::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

struct SimulationResult {
  Scenario scenario;
  std::vector<XStateMatrix> states;
  EntanglementSeries series;
  std::vector<EntanglementEvent> events;
};

SimulationResult run_scenario(const Scenario& scenario);

/// One line per grid point: t, a, b, c, d, Re(f), Im(f), concurrence,
/// precursor, eof (columns filtered by the scenario's output selection).
/// Values carry 12 significant digits; LF line endings.
void write_trajectory_csv(std::ostream& out, const SimulationResult& result);
void write_events_csv(std::ostream& out, const std::vector<EntanglementEvent>& events);

/// Per-scenario summary used by sweeps.
struct SummaryRow {
  ModelParams params;
  std::optional<double> final_death_time;
  int revivals = 0;
  double integrated_concurrence = 0.0;
};

SummaryRow summarize(const SimulationResult& result);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

struct RunRecord {
  std::string scenario_hash;
  std::string tool_version;
  std::string timestamp;
  std::vector<std::filesystem::path> outputs;
};

/// Writes trajectory.csv, summary.csv, events.csv (if selected), optionally
/// concurrence.svg, and run.json holding the RunRecord.
RunRecord cmd_simulate(const Scenario& scenario, const std::filesystem::path& out_dir, bool svg);

/// Worker count: NMQ_THREADS if set and positive, otherwise the hardware count.
unsigned thread_limit();

std::vector<SummaryRow> run_sweep(const SweepSpec& spec, unsigned threads);
void cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_file, unsigned threads);

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  bool nz = false;
  /// Flips the sign of one generator entry in the coefficient path.
  bool corrupt_generator = false;
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Largest deviation between the memory-kernel solution with step dt and the
/// projected exact propagation, over all four initial terms.
double nz_max_deviation(const ModelParams& params, Subsystem k, double dt, double t_end);

/// Runs every check (never stopping at the first failure).
std::vector<CheckResult> cmd_verify(const VerifyOptions& options);

}  // namespace nmq::cli
