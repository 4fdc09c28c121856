#ifndef TAILLAB_RUNNER_HPP
#define TAILLAB_RUNNER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "taillab/decayfit.hpp"

namespace taillab {

// One experiment: a parameter point, a set of modes, trajectories to sample,
// and fit/verdict settings.  Serialized as versioned JSON.
struct RunConfig {
  int schema_version = 1;
  Problem problem = Problem::Wave;
  int n = 3;
  double coupling = 0.0;  // f (wave) or Z (dirac)
  std::vector<int> modes = {0};
  Grid grid;  // npoints == 0 -> sized automatically
  InitialData data;
  std::vector<Trajectory> trajectories;
  std::string output_dir = "run";
  double tolerance = 0.1;
  WindowPolicy window;
};

RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& config);
RunConfig load_config_file(const std::string& path);

// Worker count for mode-level parallelism: TAIL_LAB_THREADS if set and
// positive, otherwise the number of logical processors.
int thread_budget();

// Evolves every configured mode and writes, under output_dir: a config
// snapshot, one CSV per (mode, component) with columns t,re,im,trajectory_id,
// a run log, and a completion marker.  Deterministic for a fixed config.
void cmd_simulate(const RunConfig& config, std::ostream& log);

// Reads the CSVs back, fits decay rates, and writes report.txt/report.json.
// Returns the combined report (all_pass decides the process exit code).
DecayReport cmd_verify(const RunConfig& config, std::ostream& log);

// Emits one SVG log-log plot per (mode, component, trajectory) with a dashed
// guide line at the predicted slope.
void cmd_report(const RunConfig& config, std::ostream& log);

}  // namespace taillab

#endif
