#include <doctest.h>

#include "nmq/cli/scenario.hpp"
#include "nmq/errors.hpp"

using namespace nmq;
using namespace nmq::cli;

namespace {

std::string error_key(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("detuning form") {
  const Scenario s = parse_scenario(R"(
    # detuned pair
    name   = detuned
    omega1 = 10
    delta  = 2
    alpha  = 2      # both subsystems
    gamma  = 0.5
    nbar   = 0
  )");
  CHECK(s.name == "detuned");
  CHECK(s.params == ModelParams::symmetric(10, 2, 2, 0.5, 0));
  CHECK(s.grid == TimeGrid(0, kDefaultTEnd, kDefaultNumPoints));
  CHECK(s.outputs == OutputSelection{});
}

TEST_CASE("absolute partner frequencies and explicit grid") {
  const Scenario s = parse_scenario(
      "omega1 = 10\nomega2 = 9\nomega3 = 8\nomega4 = 9.5\nalpha1 = 1\nalpha2 = 3\n"
      "gamma = 1/3\nnbar = 0.2\nt_start = 1\nt_end = 4\nnum_points = 31\noutputs = concurrence, events\n");
  CHECK(s.params.omega2 == 9.0);
  CHECK(s.params.omega4 == 9.5);
  CHECK(s.params.alpha2 == 3.0);
  CHECK(s.params.gamma == 1.0 / 3.0);
  CHECK(s.grid == TimeGrid(1, 4, 31));
  CHECK(s.outputs.concurrence);
  CHECK(s.outputs.events);
  CHECK_FALSE(s.outputs.density);
  CHECK_FALSE(s.outputs.eof);
}

TEST_CASE("partner frequency defaults") {
  const Scenario s = parse_scenario("omega1 = 7\ndelta1 = 1\ndelta2 = -1\nalpha = 1\ngamma = 1\nnbar = 0\n");
  CHECK(s.params.omega2 == 7.0);
  CHECK(s.params.omega3 == 6.0);
  CHECK(s.params.omega4 == 8.0);
}

TEST_CASE("configuration errors name the key") {
  const std::string base = "alpha = 1\ngamma = 1\nnbar = 0\n";
  CHECK(error_key(base + "delta = 0\nbogus = 1\n") == "bogus");
  CHECK(error_key(base + "delta = 0\ndelta = 1\n") == "delta");
  CHECK(error_key(base + "delta = 0\nomega3 = 8\nomega4 = 8\n") == "omega3");
  CHECK(error_key(base) == "delta");
  CHECK(error_key(base + "delta = 0\nnum_points = 0\n") == "num_points");
  CHECK(error_key(base + "delta = 0\nt_end = -1\n") == "t_end");
  CHECK(error_key(base + "delta = 0\nalpha1 = 2\n") == "alpha");
  CHECK(error_key("delta = 0\ngamma = -1\nnbar = 0\nalpha = 1\n") == "gamma");
  CHECK(error_key("delta = 0\ngamma = 1\nnbar = -0.5\nalpha = 1\n") == "nbar");
  CHECK(error_key("delta = 0\nalpha = 1\nnbar = 0\n") == "gamma");
  CHECK(error_key(base + "delta = x\n") == "delta");
  CHECK(error_key(base + "delta = 1/0\n") == "delta");
  CHECK(error_key(base + "delta = 0\noutputs = density, colour\n") == "outputs");
  CHECK(error_key(base + "delta =\n") == "delta");
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.cfg"), ConfigError);
}

TEST_CASE("numbers") {
  CHECK(parse_number("k", "2.5") == 2.5);
  CHECK(parse_number("k", " 1/3 ") == 1.0 / 3.0);
  CHECK(parse_number("k", "-1e-3") == -1e-3);
  CHECK_THROWS_AS(parse_number("k", "2.5x"), ConfigError);
  CHECK_THROWS_AS(parse_number("k", "inf"), ConfigError);
}

TEST_CASE("scenario hash is deterministic and sensitive") {
  const Scenario a = preset_scenario("fig3");
  const Scenario b = preset_scenario("fig3");
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a).size() == 16);
  Scenario c = a;
  c.params.alpha2 = std::nextafter(c.params.alpha2, 3.0);
  CHECK(scenario_hash(c) != scenario_hash(a));
  c = a;
  c.outputs.eof = false;
  CHECK(scenario_hash(c) != scenario_hash(a));
}

TEST_CASE("preset table") {
  struct Row {
    const char* name;
    double delta, alpha, gamma, nbar;
  };
  const Row expected[] = {
      {"fig2", 2, 2, 0.5, 0},    {"fig3", 0, 2, 0.5, 0},   {"fig4", 0, 0.5, 0.5, 0},
      {"fig5", 0, 3, 27, 0},     {"fig6", 0, 5, 1.0 / 3, 0.2}, {"fig7", 2, 2, 0.5, 0.2},
      {"fig8", 0, 2, 0.5, 0.2},  {"fig9", 0, 0.5, 1, 0.2}, {"fig10", 0, 3, 27, 0.2},
  };
  REQUIRE(presets().size() == std::size(expected));
  for (const Row& row : expected) {
    const Scenario s = preset_scenario(row.name);
    CHECK(s.name == row.name);
    CHECK(s.params == ModelParams::symmetric(10, row.delta, row.alpha, row.gamma, row.nbar));
    CHECK(s.params.omega1 == 10.0);
    CHECK(s.grid == TimeGrid(0, 10, 2001));
  }
  CHECK_THROWS_AS(preset_scenario("fig11"), ConfigError);
}

TEST_CASE("sweep expansion") {
  const SweepSpec spec = parse_sweep("alpha = 0.5, 2, 5\ndelta = 0\ngamma = 0:1:3\nnbar = 0.2\n");
  REQUIRE(spec.size() == 9);
  const ConfigMap first = spec.point(0);
  CHECK(first.at("alpha") == "0.5");
  CHECK(parse_number("gamma", first.at("gamma")) == 0.0);
  CHECK(parse_number("gamma", spec.point(1).at("gamma")) == 0.5);
  CHECK(spec.point(3).at("alpha") == "2");
  CHECK(parse_number("gamma", spec.point(8).at("gamma")) == 1.0);
  CHECK(scenario_from_map(spec.point(4)).params == ModelParams::symmetric(10, 0, 2, 0.5, 0.2));
}

TEST_CASE("sweep limits") {
  CHECK_THROWS_AS(parse_sweep("alpha = 0:1:1000\ngamma = 0:1:1000\ndelta = 0\nnbar = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("alpha = 0:1\ngamma = 1\ndelta = 0\nnbar = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("alpha = 1\ngamma = 1\ndelta = 0\n"), ConfigError);
  CHECK_NOTHROW(parse_sweep("alpha = 0:1:100000\ngamma = 1\ndelta = 0\nnbar = 0\n"));
}
