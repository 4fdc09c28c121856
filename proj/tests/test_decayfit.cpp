#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "taillab/decayfit.hpp"

using namespace taillab;

namespace {

// Sampled |u| = A t^-p (1 + c/t), the shape of a tail with one correction.
SampleSeries power_series(double A, double p, double c, double t_lo,
                          double t_hi, int n, double sign_flip_at = -1.0) {
  SampleSeries s;
  s.traj = Trajectory::fixed_r(2.0);
  s.component = "u";
  for (int i = 0; i < n; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (n - 1);
    double v = A * std::pow(t, -p) * (1.0 + c / t);
    if (sign_flip_at > 0.0 && t > sign_flip_at) v = -v;
    s.t.push_back(t);
    s.re.push_back(v);
    s.im.push_back(0.0);
    s.peak = std::max(s.peak, std::abs(v));
  }
  return s;
}

}  // namespace

TEST_CASE("pure power law is fitted exactly") {
  const SampleSeries s = power_series(1.0, 3.0, 0.0, 10.0, 500.0, 2000);
  const FitResult fit = fit_rate(s);
  REQUIRE(fit.kind == FitKind::Ok);
  CHECK(std::abs(fit.slope_raw + 3.0) < 1e-6);
  CHECK(std::abs(fit.slope_extrapolated + 3.0) < 1e-6);
  CHECK(fit.residual < 1e-8);
  CHECK(fit.sign_changes_in_window == 0);
}

TEST_CASE("amplitude recovery") {
  const SampleSeries s = power_series(7.0, 3.0, 0.0, 10.0, 500.0, 2000);
  const FitResult fit = fit_rate(s);
  CHECK(std::abs(fit.amplitude - 7.0) < 1e-6 * 7.0);
}

TEST_CASE("two-term law: extrapolation beats the raw slope") {
  const SampleSeries s = power_series(1.0, 3.0, 5.0, 20.0, 500.0, 4000);
  WindowPolicy policy;
  policy.t_lo = 50.0;
  policy.t_hi = 500.0;
  const FitResult fit = fit_rate(s, policy);
  REQUIRE(fit.kind == FitKind::Ok);
  CHECK(std::abs(fit.slope_raw + 3.0) > 5e-3);  // visibly biased
  CHECK(std::abs(fit.slope_extrapolated + 3.0) < 1e-3);
}

TEST_CASE("extrapolation accuracy across exponents") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ps(1.0, 6.0), cs(-10.0, 10.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double p = ps(rng), c = cs(rng);
    const SampleSeries s = power_series(2.0, p, c, 20.0, 500.0, 4000);
    WindowPolicy policy;
    policy.t_lo = 50.0;
    policy.t_hi = 500.0;
    const FitResult fit = fit_rate(s, policy);
    REQUIRE(fit.kind == FitKind::Ok);
    CHECK(std::abs(fit.slope_extrapolated + p) < 5e-3);
  }
}

TEST_CASE("later windows move the raw slope toward the limit") {
  const SampleSeries s = power_series(1.0, 2.5, 8.0, 20.0, 500.0, 4000);
  double prev = 1e9;
  for (double t_lo : {50.0, 100.0, 200.0}) {
    WindowPolicy policy;
    policy.t_lo = t_lo;
    policy.t_hi = 500.0;
    const FitResult fit = fit_rate(s, policy);
    REQUIRE(fit.kind == FitKind::Ok);
    const double bias = std::abs(fit.slope_raw + 2.5);
    CHECK(bias < prev);
    prev = bias;
  }
}

TEST_CASE("floor and window edge cases") {
  SampleSeries zero = power_series(0.0, 3.0, 0.0, 10.0, 500.0, 500);
  CHECK(fit_rate(zero).kind == FitKind::BelowFloor);

  SampleSeries tiny = power_series(1e-14, 3.0, 0.0, 10.0, 500.0, 500);
  WindowPolicy policy;
  policy.floor_abs = 1e-10;
  CHECK(fit_rate(tiny, policy).kind == FitKind::BelowFloor);

  SampleSeries few = power_series(1.0, 3.0, 0.0, 10.0, 500.0, 20);
  CHECK(fit_rate(few).kind == FitKind::WindowTooShort);

  SampleSeries narrow = power_series(1.0, 3.0, 0.0, 400.0, 500.0, 200);
  WindowPolicy full;
  full.t_lo = 400.0;
  full.t_hi = 500.0;
  CHECK(fit_rate(narrow, full).kind == FitKind::WindowTooShort);
}

TEST_CASE("sign changes are counted") {
  const SampleSeries s = power_series(1.0, 3.0, 0.0, 10.0, 500.0, 2000, 300.0);
  const FitResult fit = fit_rate(s);
  CHECK(fit.sign_changes_in_window == 1);
}

TEST_CASE("floor estimate from a control run") {
  SampleSeries control;
  for (int i = 0; i < 1000; ++i) {
    control.t.push_back(i + 1.0);
    control.re.push_back(i < 950 ? 0.5 : 2e-13);
    control.im.push_back(0.0);
  }
  CHECK(estimate_floor(control) == doctest::Approx(2e-12).epsilon(1e-6));
}

TEST_CASE("compare applies r-power bookkeeping") {
  RateTable table;
  table.problem = Problem::Dirac;
  table.per_mode.push_back({1, 2.893, 2.786, false});

  SampleSeries fixed = power_series(1.0, 2.786, 0.0, 20.0, 500.0, 3000);
  fixed.component = "f";
  fixed.r_power = 1;
  fixed.traj = Trajectory::fixed_r(2.0);

  SampleSeries ray = power_series(1.0, 1.893, 0.0, 20.0, 500.0, 3000);
  ray.component = "f";
  ray.r_power = 1;
  ray.traj = Trajectory::ray(0.5);
  ray.trajectory_id = 1;

  const DecayReport rep = compare({fixed, ray}, table, 0.05, {}, 1);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].expected_slope == doctest::Approx(-2.786));
  CHECK(rep.rows[1].expected_slope == doctest::Approx(-1.893 ));
  CHECK(rep.rows[0].pass);
  CHECK(rep.rows[1].pass);
  CHECK(rep.all_pass);

  // Order independence.
  const DecayReport swapped = compare({ray, fixed}, table, 0.05, {}, 1);
  CHECK(swapped.rows[0].expected_slope == doctest::Approx(-1.893));
  CHECK(swapped.all_pass);
}

TEST_CASE("compare verdicts for exceptional modes") {
  RateTable table;
  table.problem = Problem::Wave;
  table.per_mode.push_back({0, 3.0, 4.0, true});
  table.per_mode.push_back({1, 3.5616, 5.1231, false});

  SampleSeries silent = power_series(0.0, 3.0, 0.0, 20.0, 500.0, 1000);
  const DecayReport rep = compare({silent}, table, 0.1, {}, 0);
  CHECK(rep.rows[0].verdict == "vanishing tail confirmed");
  CHECK(rep.all_pass);

  // The same silence on a generic mode is a failure.
  const DecayReport bad = compare({silent}, table, 0.1, {}, 1);
  CHECK(!bad.all_pass);

  CHECK_THROWS_AS(compare({silent}, table, 0.1, {}, 7), InvalidArgumentError);
  CHECK_THROWS_AS(compare({silent}, table, 0.0, {}, 0), InvalidArgumentError);
}
