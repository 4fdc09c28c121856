#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "taillab/runner.hpp"

using namespace taillab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string small_config(const std::string& dir, double amplitude = 1.0) {
  std::ostringstream cfg;
  cfg << R"({
    "schema_version": 1,
    "problem": "wave",
    "n": 3,
    "coupling": 1.0,
    "modes": [0],
    "grid": {"h": 0.05, "dt": 0.02, "t_max": 40.0},
    "data": {"profile": "gaussian", "center": 6.0, "width": 1.0, "amplitude": )"
      << amplitude << R"(},
    "trajectories": [{"kind": "fixed_r", "param": 2.0}],
    "output_dir": ")" << dir << R"(",
    "tolerance": 0.5
  })";
  return cfg.str();
}

}  // namespace

TEST_CASE("config parsing and round trip") {
  const RunConfig c = parse_config(small_config("/tmp/tl_cfg"));
  CHECK(c.problem == Problem::Wave);
  CHECK(c.coupling == 1.0);
  CHECK(c.modes == std::vector<int>{0});
  CHECK(c.grid.t_max == 40.0);
  CHECK(c.trajectories.size() == 1);
  CHECK(c.tolerance == 0.5);

  const std::string s1 = serialize_config(c);
  const std::string s2 = serialize_config(parse_config(s1));
  CHECK(s1 == s2);
}

TEST_CASE("config validation errors carry field names") {
  CHECK_THROWS_WITH_AS(parse_config("{\"problem\": \"maxwell\"}"),
                       doctest::Contains("problem"), InvalidArgumentError);
  CHECK_THROWS_WITH_AS(parse_config("{\"tolerance\": -1}"),
                       doctest::Contains("tolerance"), InvalidArgumentError);
  CHECK_THROWS_WITH_AS(parse_config("{\"schema_version\": 2}"),
                       doctest::Contains("schema_version"),
                       InvalidArgumentError);
  CHECK_THROWS_WITH_AS(parse_config("{\"coupling\": 1, \"Z\": 0.3}"),
                       doctest::Contains("mutually exclusive"),
                       InvalidArgumentError);
  CHECK_THROWS_AS(parse_config("not json"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_config("{\"problem\": \"dirac\", \"Z\": 0.9}"),
                  InvalidArgumentError);
}

TEST_CASE("thread budget honors the environment") {
  setenv("TAIL_LAB_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  setenv("TAIL_LAB_THREADS", "junk", 1);
  CHECK(thread_budget() >= 1);
  unsetenv("TAIL_LAB_THREADS");
  CHECK(thread_budget() >= 1);
}

TEST_CASE("pipeline produces a reproducible run directory") {
  const fs::path dir1 = "/tmp/tl_run_a", dir2 = "/tmp/tl_run_b";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  const RunConfig c1 = parse_config(small_config(dir1.string()));
  const RunConfig c2 = parse_config(small_config(dir2.string()));
  std::ostringstream log;
  cmd_simulate(c1, log);
  cmd_simulate(c2, log);

  CHECK(fs::exists(dir1 / "config.json"));
  CHECK(fs::exists(dir1 / "run.complete"));
  CHECK(slurp(dir1 / "mode0_u.csv") == slurp(dir2 / "mode0_u.csv"));
  const std::string csv = slurp(dir1 / "mode0_u.csv");
  CHECK(csv.rfind("t,re,im,trajectory_id\n", 0) == 0);

  const DecayReport rep = cmd_verify(c1, log);
  CHECK(rep.rows.size() == 1);
  CHECK(fs::exists(dir1 / "report.json"));
  CHECK(fs::exists(dir1 / "report.txt"));

  cmd_report(c1, log);
  CHECK(fs::exists(dir1 / "plot_mode0_u_t0.svg"));
  CHECK(slurp(dir1 / "plot_mode0_u_t0.svg").find("<svg") != std::string::npos);
}

TEST_CASE("zero-amplitude run verifies as below floor") {
  const fs::path dir = "/tmp/tl_run_zero";
  fs::remove_all(dir);
  const RunConfig c = parse_config(small_config(dir.string(), 0.0));
  std::ostringstream log;
  cmd_simulate(c, log);
  const DecayReport rep = cmd_verify(c, log);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].fit.kind == FitKind::BelowFloor);
}

TEST_CASE("huygens parameters verify as vanishing tails") {
  const fs::path dir = "/tmp/tl_run_huygens";
  fs::remove_all(dir);
  std::string cfg = small_config(dir.string());
  const auto pos = cfg.find("\"coupling\": 1.0");
  REQUIRE(pos != std::string::npos);
  cfg.replace(pos, 15, "\"coupling\": 0.0");
  const RunConfig c = parse_config(cfg);
  std::ostringstream log;
  cmd_simulate(c, log);
  WindowPolicy win;
  RunConfig c2 = c;
  c2.window.t_lo = 20.0;  // skip the direct pulse
  c2.window.t_hi = 40.0;
  (void)win;
  const DecayReport rep = cmd_verify(c2, log);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].verdict == "vanishing tail confirmed");
  CHECK(rep.all_pass);
}

TEST_CASE("verify without a completed run is rejected") {
  const RunConfig c = parse_config(small_config("/tmp/tl_run_missing"));
  fs::remove_all("/tmp/tl_run_missing");
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_verify(c, log), InvalidArgumentError);
}
