#include "nmq/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nmq/cli/svg.hpp"
#include "nmq/errors.hpp"
#include "nmq/nz_kernel.hpp"
#include "nmq/oracle.hpp"
#include "nmq/propagator.hpp"

namespace nmq::cli {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output", "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

SimulationResult run_scenario(const Scenario& scenario) {
  const ModelParams& p = scenario.params;
  const SubsystemTrajectory first = evolve_subsystem(p, Subsystem::first, scenario.grid);
  const SubsystemTrajectory second = evolve_subsystem(p, Subsystem::second, scenario.grid);

  SimulationResult result{scenario, {}, entanglement_series(first, second, p.nbar), {}};
  result.states.reserve(scenario.grid.size());
  for (std::size_t i = 0; i < scenario.grid.size(); ++i)
    result.states.push_back(to_x_state(assemble_rho12(first, second, p.nbar, i)));

  const TwoQubitEvolution evolution(p);
  result.events = extract_events(result.series, kEventThreshold, precursor_function(evolution));
  return result;
}

void write_trajectory_csv(std::ostream& out, const SimulationResult& r) {
  const OutputSelection& sel = r.scenario.outputs;
  out << "t";
  if (sel.density) out << ",a,b,c,d,re_f,im_f";
  if (sel.concurrence) out << ",concurrence";
  if (sel.precursor) out << ",precursor";
  if (sel.eof) out << ",eof";
  out << '\n';
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const XStateMatrix& x = r.states[i];
    out << fmt12(r.series.grid[i]);
    if (sel.density) {
      out << ',' << fmt12(x.a) << ',' << fmt12(x.b) << ',' << fmt12(x.c) << ',' << fmt12(x.d) << ','
          << fmt12(x.f.real()) << ',' << fmt12(x.f.imag());
    }
    if (sel.concurrence) out << ',' << fmt12(r.series.concurrence[i]);
    if (sel.precursor) out << ',' << fmt12(r.series.precursor[i]);
    if (sel.eof) out << ',' << fmt12(r.series.eof[i]);
    out << '\n';
  }
}

void write_events_csv(std::ostream& out, const std::vector<EntanglementEvent>& events) {
  out << "kind,time,reduced_precision\n";
  for (const EntanglementEvent& e : events)
    out << to_string(e.kind) << ',' << fmt12(e.time) << ',' << (e.reduced_precision ? 1 : 0) << '\n';
}

SummaryRow summarize(const SimulationResult& r) {
  SummaryRow row;
  row.params = r.scenario.params;
  for (const EntanglementEvent& e : r.events) {
    if (e.kind == EventKind::revival) ++row.revivals;
    if (e.kind == EventKind::final_death) row.final_death_time = e.time;
  }
  const auto& c = r.series.concurrence;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    row.integrated_concurrence += 0.5 * (c[i] + c[i + 1]) * (r.series.grid[i + 1] - r.series.grid[i]);
  return row;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "omega1,omega2,omega3,omega4,alpha1,alpha2,gamma,nbar,final_death_time,revivals,"
         "integrated_concurrence\n";
  for (const SummaryRow& row : rows) {
    const ModelParams& p = row.params;
    out << fmt12(p.omega1) << ',' << fmt12(p.omega2) << ',' << fmt12(p.omega3) << ','
        << fmt12(p.omega4) << ',' << fmt12(p.alpha1) << ',' << fmt12(p.alpha2) << ','
        << fmt12(p.gamma) << ',' << fmt12(p.nbar) << ','
        << (row.final_death_time ? fmt12(*row.final_death_time) : std::string("none")) << ','
        << row.revivals << ',' << fmt12(row.integrated_concurrence) << '\n';
  }
}

RunRecord cmd_simulate(const Scenario& scenario, const std::filesystem::path& out_dir, bool svg) {
  std::filesystem::create_directories(out_dir);
  const SimulationResult result = run_scenario(scenario);

  RunRecord record{scenario_hash(scenario), kToolVersion, utc_timestamp(), {}};
  {
    const auto path = out_dir / "trajectory.csv";
    auto out = open_output(path);
    write_trajectory_csv(out, result);
    record.outputs.push_back(path);
  }
  {
    const auto path = out_dir / "summary.csv";
    auto out = open_output(path);
    write_summary_csv(out, {summarize(result)});
    record.outputs.push_back(path);
  }
  if (scenario.outputs.events) {
    const auto path = out_dir / "events.csv";
    auto out = open_output(path);
    write_events_csv(out, result.events);
    record.outputs.push_back(path);
  }
  if (svg) {
    const auto path = out_dir / "concurrence.svg";
    auto out = open_output(path);
    write_svg_chart(out, "concurrence (" + scenario.name + ")", scenario.grid.points(),
                    {{"concurrence", result.series.concurrence},
                     {"2(|f| - sqrt(bc))", result.series.precursor}});
    record.outputs.push_back(path);
  }

  nlohmann::json j;
  j["scenario_hash"] = record.scenario_hash;
  j["tool_version"] = record.tool_version;
  j["timestamp"] = record.timestamp;
  j["scenario"] = canonical_form(scenario);
  j["outputs"] = nlohmann::json::array();
  for (const auto& p : record.outputs) j["outputs"].push_back(p.filename().string());
  auto out = open_output(out_dir / "run.json");
  out << j.dump(2) << '\n';
  return record;
}

unsigned thread_limit() {
  if (const char* env = std::getenv("NMQ_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SummaryRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  const std::size_t n = spec.size();
  if (n > kMaxSweepPoints) throw ConfigError("sweep", "too many sweep points");
  std::vector<Scenario> scenarios;
  scenarios.reserve(n);
  for (std::size_t i = 0; i < n; ++i) scenarios.push_back(scenario_from_map(spec.point(i)));

  std::vector<SummaryRow> rows(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = summarize(run_scenario(scenarios[i]));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_file, unsigned threads) {
  const auto rows = run_sweep(spec, threads);
  if (out_file.has_parent_path()) std::filesystem::create_directories(out_file.parent_path());
  auto out = open_output(out_file);
  write_summary_csv(out, rows);
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

GeneratorMatrix coefficient_generator(const ModelParams& p, Subsystem k, bool corrupt) {
  GeneratorMatrix g = build_generator(p, k);
  if (corrupt) g(basis::kExchangeOdd, basis::kInversion) *= -1.0;
  return g;
}

struct CoefficientRun {
  SubsystemTrajectory first;
  SubsystemTrajectory second;
};

CoefficientRun coefficient_run(const Scenario& s, bool corrupt) {
  const ModelParams& p = s.params;
  return {evolve_subsystem(coefficient_generator(p, Subsystem::first, corrupt), p.nbar,
                           Subsystem::first, s.grid),
          evolve_subsystem(coefficient_generator(p, Subsystem::second, corrupt), p.nbar,
                           Subsystem::second, s.grid)};
}

template <typename F>
CheckResult guarded(std::string name, F&& body) {
  try {
    return body(name);
  } catch (const std::exception& e) {
    return {std::move(name), false, std::string("error: ") + e.what()};
  }
}

CheckResult physicality_check(const Scenario& s, bool corrupt) {
  return guarded("physicality/" + s.name, [&](std::string name) {
    const CoefficientRun run = coefficient_run(s, corrupt);
    double trace = 0, herm = 0, min_eig = 0, pattern = 0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const Physicality ph = nmq::check_physicality(assemble_rho12(run.first, run.second, s.params.nbar, i));
      trace = std::max(trace, ph.trace_error);
      herm = std::max(herm, ph.hermiticity);
      min_eig = std::min(min_eig, ph.min_eigenvalue);
      pattern = std::max(pattern, ph.x_pattern);
    }
    const bool ok = trace <= 1e-9 && herm <= 1e-12 && min_eig >= -1e-9 && pattern <= 1e-9;
    return CheckResult{name, ok,
                       "trace " + sci(trace) + ", hermiticity " + sci(herm) + ", min eigenvalue " +
                           sci(min_eig) + ", off-X " + sci(pattern)};
  });
}

CheckResult check_concurrence_routes(const Scenario& s, bool corrupt) {
  return guarded("concurrence-routes/" + s.name, [&](std::string name) {
    const CoefficientRun run = coefficient_run(s, corrupt);
    double worst = 0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const DensityMatrix4 rho = assemble_rho12(run.first, run.second, s.params.nbar, i);
      worst = std::max(worst, std::abs(concurrence_x(to_x_state(rho)) - concurrence_general(rho)));
    }
    return CheckResult{name, worst <= 1e-10, "max |C_x - C_general| = " + sci(worst)};
  });
}

CheckResult check_oracle(const Scenario& s, bool corrupt) {
  return guarded("oracle/" + s.name, [&](std::string name) {
    const CoefficientRun run = coefficient_run(s, corrupt);
    const auto full = evolve_full(s.params, with_thermal_reservoirs(bell_state(), s.params.nbar), s.grid);
    double worst = 0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const DensityMatrix4 direct = assemble_rho12(run.first, run.second, s.params.nbar, i);
      worst = std::max(worst, (partial_trace_34(full[i]) - direct).cwiseAbs().maxCoeff());
    }
    return CheckResult{name, worst <= 1e-8, "max elementwise deviation " + sci(worst)};
  });
}

CheckResult check_complete_positivity(double nbar) {
  return guarded("complete-positivity/nbar=" + fmt12(nbar), [&](std::string name) {
    double worst = 0;
    double trace_err = 0;
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const ModelParams p = ModelParams::symmetric(10.0, 0.0, alpha, 0.5, nbar);
        const ChoiMatrix choi = choi_of_subsystem_map(p, Subsystem::first, t);
        worst = std::min(worst, min_eigenvalue(choi));
        trace_err = std::max(trace_err, std::abs(choi.trace() - 2.0));
      }
    }
    return CheckResult{name, worst >= -1e-8 && trace_err <= 1e-8,
                       "min Choi eigenvalue " + sci(worst) + ", trace error " + sci(trace_err)};
  });
}

CheckResult check_map_factorization(const Scenario& s) {
  return guarded("map-factorization/" + s.name, [&](std::string name) {
    const TimeGrid grid(0.0, 1.0, 3);
    const auto full = evolve_full(s.params, with_thermal_reservoirs(bell_state(), s.params.nbar), grid);
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const DensityMatrix4 mapped =
          apply_product_map(subsystem_map(s.params, Subsystem::first, grid[i]),
                            subsystem_map(s.params, Subsystem::second, grid[i]), bell_state());
      worst = std::max(worst, (mapped - partial_trace_34(full[i])).cwiseAbs().maxCoeff());
    }
    return CheckResult{name, worst <= 1e-8, "max deviation " + sci(worst)};
  });
}

}  // namespace

double nz_max_deviation(const ModelParams& params, Subsystem k, double dt, double t_end) {
  const TimeGrid grid = TimeGrid::with_step(t_end, dt);
  const GeneratorMatrix generator = build_generator(params, k);
  const ProjectorPair pq = projector_pair();
  const MemoryKernelSamples kernel = build_kernel(generator, pq, grid);
  const GeneratorMatrix local = local_term(generator, pq);
  const GeneratorMatrix p = pq.relevant<double>();
  double worst = 0;
  for (InitialTerm m : kInitialTerms) {
    const CoefficientVector init = initial_coefficients(m, params.nbar);
    const auto nz = solve_nz(kernel, local, p * init, grid);
    const auto direct = propagate(generator, init, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, (nz[i] - p * direct[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<CheckResult> cmd_verify(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const bool corrupt = options.corrupt_generator;
  for (const Preset& pr : presets()) {
    const Scenario s = preset_scenario(pr.name);
    results.push_back(physicality_check(s, corrupt));
    results.push_back(check_concurrence_routes(s, corrupt));
  }
  if (options.level == VerifyLevel::full) {
    for (const char* name : {"fig2", "fig3", "fig6"})
      results.push_back(check_oracle(preset_scenario(name), corrupt));
    results.push_back(check_complete_positivity(0.0));
    results.push_back(check_complete_positivity(0.2));
    results.push_back(check_map_factorization(preset_scenario("fig7")));
  }
  if (options.level == VerifyLevel::full || options.nz) {
    results.push_back(guarded("nz-exactness/fig4", [](std::string name) {
      const Scenario s = preset_scenario("fig4");
      double worst = 0;
      for (Subsystem k : {Subsystem::first, Subsystem::second})
        worst = std::max(worst, nz_max_deviation(s.params, k, 1e-3, s.grid.t_end()));
      return CheckResult{name, worst <= 2e-4, "max deviation at dt = 1e-3: " + sci(worst)};
    }));
  }
  return results;
}

}  // namespace nmq::cli
