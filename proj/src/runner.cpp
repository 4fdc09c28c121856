#include "taillab/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace taillab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw InvalidArgumentError("config: field '" + field + "' " + what);
}

template <typename T>
T get_field(const json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(key, "has the wrong type");
  }
}

Trajectory parse_trajectory(const json& j, std::size_t idx) {
  const std::string field = "trajectories[" + std::to_string(idx) + "]";
  if (!j.is_object() || !j.contains("kind") || !j.contains("param"))
    config_error(field, "must be an object with 'kind' and 'param'");
  const std::string kind = j.at("kind").get<std::string>();
  const double param = j.at("param").get<double>();
  if (kind == "fixed_r") return Trajectory::fixed_r(param);
  if (kind == "ray") return Trajectory::ray(param);
  if (kind == "null_offset") return Trajectory::null_offset(param);
  config_error(field + ".kind", "must be fixed_r, ray, or null_offset");
}

const char* trajectory_kind_name(Trajectory::Kind kind) {
  switch (kind) {
    case Trajectory::Kind::FixedR: return "fixed_r";
    case Trajectory::Kind::Ray: return "ray";
    case Trajectory::Kind::NullOffset: return "null_offset";
  }
  return "fixed_r";
}

std::string csv_name(const RunConfig& config, int mode, const std::string& comp) {
  (void)config;
  return "mode" + std::to_string(mode) + "_" + comp + ".csv";
}

void write_csv(const fs::path& path, const std::vector<const SampleSeries*>& series) {
  std::ofstream out(path);
  if (!out) throw NumericError("cannot open " + path.string() + " for writing");
  out << "t,re,im,trajectory_id\n";
  char line[128];
  for (const SampleSeries* s : series)
    for (std::size_t i = 0; i < s->t.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", s->t[i],
                    s->re[i], s->im[i], s->trajectory_id);
      out << line;
    }
}

std::vector<SampleSeries> read_csv(const fs::path& path, const RunConfig& config,
                                   const std::string& comp) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgumentError("missing series file " + path.string() +
                               " (run simulate first)");
  std::vector<SampleSeries> by_traj(config.trajectories.size());
  for (std::size_t i = 0; i < by_traj.size(); ++i) {
    by_traj[i].trajectory_id = static_cast<int>(i);
    by_traj[i].traj = config.trajectories[i];
    by_traj[i].component = comp;
    by_traj[i].r_power = comp == "u" ? 0 : 1;
  }
  std::string header;
  std::getline(in, header);
  double t, re, im;
  int id;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%d", &t, &re, &im, &id) != 4)
      throw InvalidArgumentError("malformed CSV row in " + path.string());
    if (id < 0 || id >= static_cast<int>(by_traj.size()))
      throw InvalidArgumentError("trajectory_id out of range in " + path.string());
    SampleSeries& s = by_traj[id];
    s.t.push_back(t);
    s.re.push_back(re);
    s.im.push_back(im);
    s.peak = std::max(s.peak, std::hypot(re, im));
  }
  return by_traj;
}

ModeSpec mode_spec(const RunConfig& config, int mode) {
  return config.problem == Problem::Wave
             ? ModeSpec::wave(config.n, config.coupling, mode)
             : ModeSpec::dirac(config.coupling, mode);
}

Grid mode_grid(const RunConfig& config) {
  if (config.grid.npoints > 0) return config.grid;
  return auto_grid(config.grid.h, config.grid.dt, config.grid.t_max,
                   config.trajectories, config.data);
}

// Rate table for verification; all-exceptional parameter points (no tail at
// timelike infinity anywhere) become tables of flagged per-mode rows.
RateTable verification_table(const RunConfig& config) {
  int mode_max = 1;
  for (int m : config.modes) mode_max = std::max(mode_max, std::abs(m));
  try {
    return predicted_rates(config.problem, config.n, config.coupling, mode_max);
  } catch (const DegenerateParameterError&) {
    if (config.problem != Problem::Wave) throw;
    RateTable table;
    table.problem = config.problem;
    table.n = config.n;
    table.coupling = config.coupling;
    table.sharpness_notice = true;
    for (int j = 0; j <= mode_max; ++j) {
      const ModeSpec spec = ModeSpec::wave(config.n, config.coupling, j);
      if (wave_mode_exceptional(spec) == ExceptionalKind::Generic) throw;
      const double v = nu(j, config.n, config.coupling);
      table.per_mode.push_back({j, 0.5 * config.n + v, 1.0 + 2.0 * v, true});
    }
    table.rate_C_plus = table.rate_tf_plus =
        std::numeric_limits<double>::quiet_NaN();
    return table;
  }
}

std::vector<std::string> components_for(const RunConfig& config) {
  return config.problem == Problem::Wave ? std::vector<std::string>{"u"}
                                         : std::vector<std::string>{"f", "g"};
}

json verdict_json(const TrajectoryVerdict& v) {
  json row;
  row["trajectory_id"] = v.trajectory_id;
  row["component"] = v.component;
  row["face"] = v.label.face == Face::tf_plus  ? "tf_plus"
                : v.label.face == Face::C_plus ? "C_plus"
                                               : "Scri_plus";
  row["fit_kind"] = v.fit.kind == FitKind::Ok          ? "ok"
                    : v.fit.kind == FitKind::BelowFloor ? "below_floor"
                                                        : "window_too_short";
  row["slope_raw"] = v.fit.slope_raw;
  row["slope_extrapolated"] = v.fit.slope_extrapolated;
  row["expected_slope"] = v.expected_slope;
  row["predicted_rate"] = v.predicted_rate;
  row["r_power"] = v.r_power;
  row["deviation"] = v.deviation;
  row["sign_changes"] = v.fit.sign_changes_in_window;
  row["amplitude"] = v.fit.amplitude;
  row["window"] = {v.fit.t_lo, v.fit.t_hi};
  row["verdict"] = v.verdict;
  row["pass"] = v.pass;
  return row;
}

void write_svg(const fs::path& path, const SampleSeries& s,
               const TrajectoryVerdict& v, const WindowPolicy& window) {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 30, mb = 50;
  std::vector<double> lx, ly;
  const double floor_log = -16.0;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (!(s.t[i] > 0)) continue;
    const double mag = std::hypot(s.re[i], s.im[i]);
    const double x = std::log10(s.t[i]);
    const double y = std::max(std::log10(std::max(mag, 1e-300)), floor_log);
    lx.push_back(x);
    ly.push_back(y);
    xmin = std::min(xmin, x); xmax = std::max(xmax, x);
    ymin = std::min(ymin, y); ymax = std::max(ymax, y);
  }
  std::ofstream out(path);
  if (!out) throw NumericError("cannot open " + path.string() + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  if (lx.size() < 2) {
    out << "<text x=\"40\" y=\"40\">no samples</text>\n</svg>\n";
    return;
  }
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < lx.size(); ++i)
    out << px(lx[i]) << "," << py(ly[i]) << " ";
  out << "\"/>\n";
  // Dashed guide at the predicted slope, anchored at the end of the fit window.
  if (v.fit.kind == FitKind::Ok) {
    const double xa = std::log10(v.fit.t_hi);
    double ya = ly.back();
    for (std::size_t i = 0; i < lx.size(); ++i)
      if (lx[i] <= xa) ya = ly[i];
    const double slope = v.expected_slope;
    const double x0 = std::max(xmin, std::log10(std::max(v.fit.t_lo, 1e-300)));
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(ya + slope * (x0 - xa))
        << "\" x2=\"" << px(xa) << "\" y2=\"" << py(ya)
        << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
  }
  std::ostringstream title;
  title << s.component << ", trajectory " << s.trajectory_id << " ("
        << trajectory_kind_name(s.traj.kind) << " " << s.traj.param
        << "), expected slope " << std::setprecision(6) << v.expected_slope;
  out << "<text x=\"" << ml << "\" y=\"20\" font-size=\"13\">" << title.str()
      << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">log10 t  ["
      << std::setprecision(4) << xmin << ", " << xmax << "]</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 16 " << H / 2
      << ")\" text-anchor=\"middle\">log10 |value|  [" << std::setprecision(4)
      << ymin << ", " << ymax << "]</text>\n";
  (void)window;
  out << "</svg>\n";
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("(root)", "must be a JSON object");

  RunConfig c;
  c.schema_version = get_field(j, "schema_version", 1);
  if (c.schema_version != 1)
    config_error("schema_version", "unsupported (expected 1)");

  const std::string problem = get_field<std::string>(j, "problem", "wave");
  if (problem == "wave") c.problem = Problem::Wave;
  else if (problem == "dirac") c.problem = Problem::Dirac;
  else config_error("problem", "must be 'wave' or 'dirac'");

  c.n = get_field(j, "n", 3);
  if (j.contains("coupling") && j.contains("Z"))
    config_error("coupling", "and 'Z' are mutually exclusive");
  c.coupling = get_field(j, "coupling", get_field(j, "Z", 0.0));
  c.modes = get_field(j, "modes", std::vector<int>{c.problem == Problem::Wave ? 0 : 1});
  if (c.modes.empty()) config_error("modes", "must be nonempty");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) config_error("grid", "must be an object");
    c.grid.h = get_field(g, "h", c.grid.h);
    c.grid.dt = get_field(g, "dt", c.grid.dt);
    c.grid.t_max = get_field(g, "t_max", c.grid.t_max);
    c.grid.npoints = get_field(g, "npoints", 0);
    if (!(c.grid.h > 0)) config_error("grid.h", "must be positive");
    if (!(c.grid.dt > 0)) config_error("grid.dt", "must be positive");
    if (!(c.grid.t_max > 0)) config_error("grid.t_max", "must be positive");
  }

  if (j.contains("data")) {
    const json& d = j.at("data");
    if (!d.is_object()) config_error("data", "must be an object");
    const std::string profile = get_field<std::string>(d, "profile", "gaussian");
    if (profile == "gaussian") c.data.profile = InitialData::Profile::GaussianBump;
    else if (profile == "cinf") c.data.profile = InitialData::Profile::CInfBump;
    else config_error("data.profile", "must be 'gaussian' or 'cinf'");
    c.data.center = get_field(d, "center", c.data.center);
    c.data.width = get_field(d, "width", c.data.width);
    c.data.amplitude = get_field(d, "amplitude", c.data.amplitude);
    c.data.r1 = get_field(d, "r1", c.data.r1);
    c.data.r2 = get_field(d, "r2", c.data.r2);
    c.data.seed_f = get_field(d, "seed_f", true);
    c.data.seed_g = get_field(d, "seed_g", true);
    c.data.velocity = get_field(d, "velocity", false);
  }

  if (j.contains("trajectories")) {
    const json& ts = j.at("trajectories");
    if (!ts.is_array()) config_error("trajectories", "must be an array");
    for (std::size_t i = 0; i < ts.size(); ++i)
      c.trajectories.push_back(parse_trajectory(ts[i], i));
  }
  if (c.trajectories.empty())
    c.trajectories = {Trajectory::fixed_r(2.0), Trajectory::ray(0.5)};

  c.output_dir = get_field<std::string>(j, "output_dir", "run");
  c.tolerance = get_field(j, "tolerance", 0.1);
  if (!(c.tolerance > 0)) config_error("tolerance", "must be positive");
  if (j.contains("window")) {
    const json& w = j.at("window");
    if (!w.is_object()) config_error("window", "must be an object");
    c.window.t_lo = get_field(w, "t_lo", 0.0);
    c.window.t_hi = get_field(w, "t_hi", 0.0);
    c.window.floor_abs = get_field(w, "floor_abs", 0.0);
    c.window.resample = get_field(w, "resample", 200);
  }

  // Early validation so bad parameters fail as config errors, not mid-run.
  for (int m : c.modes) validate(mode_spec(c, m));
  for (const Trajectory& traj : c.trajectories) classify_trajectory(traj);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["problem"] = c.problem == Problem::Wave ? "wave" : "dirac";
  j["n"] = c.n;
  j[c.problem == Problem::Wave ? "coupling" : "Z"] = c.coupling;
  j["modes"] = c.modes;
  j["grid"] = {{"h", c.grid.h},
               {"dt", c.grid.dt},
               {"t_max", c.grid.t_max},
               {"npoints", c.grid.npoints}};
  j["data"] = {
      {"profile",
       c.data.profile == InitialData::Profile::GaussianBump ? "gaussian" : "cinf"},
      {"center", c.data.center},   {"width", c.data.width},
      {"amplitude", c.data.amplitude}, {"r1", c.data.r1},
      {"r2", c.data.r2},           {"seed_f", c.data.seed_f},
      {"seed_g", c.data.seed_g},   {"velocity", c.data.velocity}};
  j["trajectories"] = json::array();
  for (const Trajectory& t : c.trajectories)
    j["trajectories"].push_back(
        {{"kind", trajectory_kind_name(t.kind)}, {"param", t.param}});
  j["output_dir"] = c.output_dir;
  j["tolerance"] = c.tolerance;
  j["window"] = {{"t_lo", c.window.t_lo},
                 {"t_hi", c.window.t_hi},
                 {"floor_abs", c.window.floor_abs},
                 {"resample", c.window.resample}};
  return j.dump(2) + "\n";
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("config: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

int thread_budget() {
  if (const char* env = std::getenv("TAIL_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void cmd_simulate(const RunConfig& config, std::ostream& log) {
  const fs::path dir(config.output_dir);
  if (fs::exists(dir / "config.json") && !fs::exists(dir / "run.complete"))
    log << "partial run detected in " << dir.string() << "; restarting\n";
  fs::create_directories(dir);
  fs::remove(dir / "run.complete");
  std::ofstream(dir / "config.json") << serialize_config(config);

  const Grid grid = mode_grid(config);
  log << "grid: h=" << grid.h << " dt=" << grid.dt << " t_max=" << grid.t_max
      << " npoints=" << grid.npoints << " R=" << grid.outer_radius() << "\n";

  std::vector<EvolveResult> results(config.modes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < config.modes.size();
         i = next.fetch_add(1)) {
      try {
        const ModeSpec spec = mode_spec(config, config.modes[i]);
        results[i] = config.problem == Problem::Wave
                         ? wave_evolve(spec, grid, config.data, config.trajectories)
                         : dirac_evolve(spec, grid, config.data, config.trajectories);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int nthreads =
      std::min<std::size_t>(thread_budget(), config.modes.size());
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < config.modes.size(); ++i) {
    const EvolveResult& res = results[i];
    for (const std::string& comp : components_for(config)) {
      std::vector<const SampleSeries*> group;
      for (const SampleSeries& s : res.series)
        if (s.component == comp) group.push_back(&s);
      write_csv(dir / csv_name(config, config.modes[i], comp), group);
    }
    log << "mode " << config.modes[i] << ": steps=" << res.diag.steps
        << " dt=" << res.diag.dt_used
        << " conserved drift=" << res.diag.drift_rel_max << "\n";
    for (const std::string& note : res.diag.notes)
      log << "mode " << config.modes[i] << ": " << note << "\n";
    if (res.diag.drift_rel_max > 1e-6)
      log << "mode " << config.modes[i]
          << ": WARNING conserved-quantity drift above 1e-6\n";
  }
  std::ofstream(dir / "run.complete") << "ok\n";
  log << "simulate complete: " << dir.string() << "\n";
}

DecayReport cmd_verify(const RunConfig& config, std::ostream& log) {
  const fs::path dir(config.output_dir);
  if (!fs::exists(dir / "run.complete"))
    throw InvalidArgumentError("verify: no completed run in " + dir.string());
  const RateTable table = verification_table(config);

  DecayReport combined;
  combined.tolerance = config.tolerance;
  combined.all_pass = true;
  json jmodes = json::array();
  for (int mode : config.modes) {
    json jmode;
    jmode["mode"] = mode;
    jmode["rows"] = json::array();
    for (const std::string& comp : components_for(config)) {
      const auto series = read_csv(dir / csv_name(config, mode, comp), config, comp);
      for (const SampleSeries& s : series) {
        WindowPolicy policy = config.window;
        policy.floor_abs = std::max(policy.floor_abs, 1e-10 * s.peak);
        const DecayReport one = compare({s}, table, config.tolerance, policy,
                                        std::abs(mode));
        for (const TrajectoryVerdict& v : one.rows) {
          combined.all_pass = combined.all_pass && v.pass;
          jmode["rows"].push_back(verdict_json(v));
          combined.rows.push_back(v);
          log << "mode " << mode << " " << comp << " traj " << v.trajectory_id
              << " (" << trajectory_kind_name(s.traj.kind) << " "
              << s.traj.param << "): slope "
              << (v.fit.kind == FitKind::Ok
                      ? std::to_string(v.fit.slope_extrapolated)
                      : std::string("-"))
              << " expected " << v.expected_slope << " -> " << v.verdict << "\n";
        }
      }
    }
    jmodes.push_back(std::move(jmode));
  }

  json out;
  out["schema_version"] = 1;
  out["tolerance"] = config.tolerance;
  out["all_pass"] = combined.all_pass;
  if (table.sharpness_notice) out["notice"] = "sharpness not asserted";
  out["modes"] = std::move(jmodes);
  std::ofstream(dir / "report.json") << out.dump(2) << "\n";

  std::ofstream txt(dir / "report.txt");
  txt << std::left << std::setw(6) << "mode" << std::setw(6) << "comp"
      << std::setw(20) << "trajectory" << std::setw(14) << "slope"
      << std::setw(14) << "expected" << "verdict\n";
  std::size_t row_idx = 0;
  for (int mode : config.modes)
    for (const std::string& comp : components_for(config))
      for (std::size_t k = 0; k < config.trajectories.size(); ++k) {
        const TrajectoryVerdict& v = combined.rows[row_idx++];
        std::ostringstream traj;
        traj << trajectory_kind_name(config.trajectories[k].kind) << "("
             << config.trajectories[k].param << ")";
        txt << std::setw(6) << mode << std::setw(6) << comp << std::setw(20)
            << traj.str() << std::setw(14)
            << (v.fit.kind == FitKind::Ok
                    ? std::to_string(v.fit.slope_extrapolated)
                    : std::string("-"))
            << std::setw(14) << v.expected_slope << v.verdict << "\n";
      }
  if (table.sharpness_notice) txt << "notice: sharpness not asserted\n";
  txt << (combined.all_pass ? "ALL PASS\n" : "FAIL\n");
  return combined;
}

void cmd_report(const RunConfig& config, std::ostream& log) {
  const fs::path dir(config.output_dir);
  if (!fs::exists(dir / "run.complete"))
    throw InvalidArgumentError("report: no completed run in " + dir.string());
  const RateTable table = verification_table(config);
  for (int mode : config.modes)
    for (const std::string& comp : components_for(config)) {
      const auto series = read_csv(dir / csv_name(config, mode, comp), config, comp);
      for (const SampleSeries& s : series) {
        WindowPolicy policy = config.window;
        policy.floor_abs = std::max(policy.floor_abs, 1e-10 * s.peak);
        const DecayReport one =
            compare({s}, table, config.tolerance, policy, std::abs(mode));
        const fs::path svg =
            dir / ("plot_mode" + std::to_string(mode) + "_" + comp + "_t" +
                   std::to_string(s.trajectory_id) + ".svg");
        write_svg(svg, s, one.rows.front(), policy);
        log << "wrote " << svg.string() << "\n";
      }
    }
}

}  // namespace taillab
