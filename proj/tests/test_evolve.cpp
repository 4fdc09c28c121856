#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "taillab/evolve.hpp"

using namespace taillab;

namespace {

Grid small_grid(double h, double dt, double t_max,
                const std::vector<Trajectory>& trajs, const InitialData& data) {
  return auto_grid(h, dt, t_max, trajs, data);
}

InitialData bump(double center, double width, double amplitude = 1.0) {
  InitialData d;
  d.center = center;
  d.width = width;
  d.amplitude = amplitude;
  return d;
}

}  // namespace

TEST_CASE("zero data stays zero") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0, 0.0);
  const Grid grid = small_grid(0.05, 0.02, 20.0, trajs, data);

  const EvolveResult w =
      wave_evolve(ModeSpec::wave(3, 1.0, 0), grid, data, trajs);
  CHECK(w.series[0].peak == 0.0);

  Grid dg = grid;
  const EvolveResult d =
      dirac_evolve(ModeSpec::dirac(0.45, 1), dg, data, trajs);
  CHECK(d.series[0].peak == 0.0);
  CHECK(d.series[1].peak == 0.0);
}

TEST_CASE("linearity in the data") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData d1 = bump(6.0, 1.0, 1.0);
  const InitialData d3 = bump(6.0, 1.0, 3.0);
  const Grid grid = small_grid(0.05, 0.02, 20.0, trajs, d1);
  const ModeSpec spec = ModeSpec::wave(3, 1.0, 0);

  const EvolveResult r1 = wave_evolve(spec, grid, d1, trajs);
  const EvolveResult r3 = wave_evolve(spec, grid, d3, trajs);
  REQUIRE(r1.series[0].t.size() == r3.series[0].t.size());
  for (std::size_t i = 0; i < r1.series[0].t.size(); ++i)
    CHECK(std::abs(r3.series[0].re[i] - 3.0 * r1.series[0].re[i]) <=
          1e-12 * std::max(1.0, std::abs(r3.series[0].re[i])));
}

TEST_CASE("wave energy conservation") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const Grid grid = small_grid(0.02, 0.008, 60.0, trajs, data);
  for (double f : {-0.1875, 1.0}) {
    WaveState state;
    const EvolveResult res =
        wave_evolve(ModeSpec::wave(3, f, 0), grid, data, trajs, &state);
    CHECK(res.diag.conserved_initial > 0.0);  // Hardy positivity
    CHECK(res.diag.drift_rel_max <= 1e-6);
    CHECK(wave_energy(state) ==
          doctest::Approx(res.diag.conserved_final).epsilon(1e-9));
  }
}

TEST_CASE("dirac norm conservation in the free sector") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const Grid grid = small_grid(0.02, 0.008, 100.0, trajs, data);
  DiracState state;
  const EvolveResult res =
      dirac_evolve(ModeSpec::dirac(0.0, -1), grid, data, trajs, &state);
  CHECK(res.diag.conserved_initial > 0.0);
  CHECK(res.diag.drift_rel_max <= 1e-10);
  CHECK(dirac_l2_norm(state) ==
        doctest::Approx(res.diag.conserved_final).epsilon(1e-9));
}

TEST_CASE("dirac norm conservation with charge") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const Grid grid = small_grid(0.02, 0.008, 40.0, trajs, data);
  const EvolveResult res = dirac_evolve(ModeSpec::dirac(0.45, 1), grid, data, trajs);
  CHECK(res.diag.drift_rel_max <= 1e-10);
}

TEST_CASE("huygens control: flat space sharp propagation") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const Grid grid = small_grid(0.02, 0.008, 60.0, trajs, data);
  const EvolveResult res =
      wave_evolve(ModeSpec::wave(3, 0.0, 0), grid, data, trajs);
  const SampleSeries& s = res.series[0];
  double late = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] > 20.0) late = std::max(late, std::abs(s.re[i]));
  CHECK(s.peak > 1e-3);
  CHECK(late <= 1e-10 * s.peak);
}

TEST_CASE("flat even dimension has a genuine tail") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const Grid grid = small_grid(0.02, 0.008, 60.0, trajs, data);
  const EvolveResult res =
      wave_evolve(ModeSpec::wave(4, 0.0, 0), grid, data, trajs);
  const SampleSeries& s = res.series[0];
  double late = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] > 20.0) late = std::max(late, std::abs(s.re[i]));
  CHECK(late > 1e-6 * s.peak);
}

TEST_CASE("wave self-convergence order") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);
  const ModeSpec spec = ModeSpec::wave(3, 1.0, 0);

  auto run = [&](double h) {
    const Grid grid = small_grid(h, 0.4 * h, 16.0, trajs, data);
    return wave_evolve(spec, grid, data, trajs);
  };
  const EvolveResult a = run(0.08), b = run(0.04), c = run(0.02);
  auto diff = [&](const EvolveResult& coarse, const EvolveResult& fine,
                  int stride) {
    double e = 0.0;
    const SampleSeries& sc = coarse.series[0];
    const SampleSeries& sf = fine.series[0];
    for (std::size_t i = 0; i < sc.t.size(); ++i) {
      const std::size_t k = (i + 1) * stride - 1;
      if (k >= sf.t.size()) break;
      REQUIRE(sc.t[i] == doctest::Approx(sf.t[k]).epsilon(1e-12));
      if (sc.t[i] < 4.0) continue;
      e = std::max(e, std::abs(sc.re[i] - sf.re[k]));
    }
    return e;
  };
  const double e1 = diff(a, b, 2), e2 = diff(b, c, 2);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("dirac self-convergence order") {
  // Smooth regime: nothing reaches the origin within t_max, so the measured
  // order reflects the interior scheme rather than the r^s origin behavior.
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(22.0)};
  const InitialData data = bump(20.0, 1.5);
  const ModeSpec spec = ModeSpec::dirac(0.45, 1);

  auto run = [&](double h) {
    const Grid grid = small_grid(h, h, 8.0, trajs, data);
    return dirac_evolve(spec, grid, data, trajs);
  };
  const EvolveResult a = run(0.08), b = run(0.04), c = run(0.02);
  auto diff = [&](const EvolveResult& coarse, const EvolveResult& fine,
                  int stride) {
    double e = 0.0;
    const SampleSeries& sc = coarse.series[0];
    const SampleSeries& sf = fine.series[0];
    for (std::size_t i = 0; i < sc.t.size(); ++i) {
      const std::size_t k = (i + 1) * stride - 1;
      if (k >= sf.t.size()) break;
      REQUIRE(sc.t[i] == doctest::Approx(sf.t[k]).epsilon(1e-12));
      if (sc.t[i] < 4.0) continue;
      e = std::max(e, std::hypot(sc.re[i] - sf.re[k], sc.im[i] - sf.im[k]));
    }
    return e;
  };
  const double e1 = diff(a, b, 2), e2 = diff(b, c, 2);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("guard rails") {
  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const InitialData data = bump(6.0, 1.0);

  // Sampling past the reflection-clean window is rejected up front.
  Grid tiny;
  tiny.h = 0.05;
  tiny.dt = 0.02;
  tiny.t_max = 200.0;
  tiny.npoints = 200;  // outer radius ~ 10
  CHECK_THROWS_AS(wave_evolve(ModeSpec::wave(3, 1.0, 0), tiny, data, trajs),
                  InvalidArgumentError);

  CHECK_THROWS_AS(wave_evolve(ModeSpec::dirac(0.3, 1),
                              small_grid(0.05, 0.02, 10.0, trajs, data), data,
                              trajs),
                  InvalidArgumentError);

  InitialData outside = bump(6.0, 1.0);
  outside.profile = InitialData::Profile::CInfBump;
  outside.r1 = -1.0;
  outside.r2 = 2.0;
  CHECK_THROWS_AS(wave_evolve(ModeSpec::wave(3, 1.0, 0),
                              small_grid(0.05, 0.02, 10.0, trajs, bump(6, 1)),
                              outside, trajs),
                  InvalidArgumentError);
}

TEST_CASE("compactly supported bump profile") {
  InitialData d;
  d.profile = InitialData::Profile::CInfBump;
  d.r1 = 4.0;
  d.r2 = 8.0;
  d.amplitude = 2.0;
  CHECK(d(3.9) == 0.0);
  CHECK(d(8.0) == 0.0);
  CHECK(d(6.0) == doctest::Approx(2.0));  // exp(1 - 1/(1-0)) = 1 at center
  CHECK(d(5.0) > 0.0);
  CHECK(d.outer_edge() == 8.0);

  const std::vector<Trajectory> trajs = {Trajectory::fixed_r(2.0)};
  const Grid grid = small_grid(0.05, 0.02, 10.0, trajs, d);
  const EvolveResult res = wave_evolve(ModeSpec::wave(3, 1.0, 0), grid, d, trajs);
  CHECK(res.series[0].peak > 0.0);
}
