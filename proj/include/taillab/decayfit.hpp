#ifndef TAILLAB_DECAYFIT_HPP
#define TAILLAB_DECAYFIT_HPP

#include <string>
#include <vector>

#include "taillab/evolve.hpp"
#include "taillab/indexsets.hpp"

namespace taillab {

// Fit window selection.  Zeros mean "auto": the window is the last decade of
// the series.  floor_abs is the numerical tail floor; magnitudes at or below
// it are treated as zero.
struct WindowPolicy {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double floor_abs = 0.0;
  int resample = 200;
};

enum class FitKind { Ok, BelowFloor, WindowTooShort };

struct FitResult {
  FitKind kind = FitKind::WindowTooShort;
  double slope_raw = 0.0;           // least-squares d ln|u| / d ln t
  double slope_extrapolated = 0.0;  // limit of local slopes fitted in 1/t
  double t_lo = 0.0, t_hi = 0.0;
  double residual = 0.0;            // RMS of the log-log fit residual
  int sign_changes_in_window = 0;
  double amplitude = 0.0;           // |A| in |u| ~ A t^slope (peak for BelowFloor)
  double floor_used = 0.0;
};

FitResult fit_rate(const std::vector<double>& t, const std::vector<double>& re,
                   const std::vector<double>& im, const WindowPolicy& policy = {});

inline FitResult fit_rate(const SampleSeries& s, const WindowPolicy& policy = {}) {
  return fit_rate(s.t, s.re, s.im, policy);
}

// Empirical numerical-tail floor: 10x the RMS magnitude over the final 5% of
// the control series (a flat-space sharp-propagation run at the same grid).
double estimate_floor(const SampleSeries& control);

struct TrajectoryVerdict {
  int trajectory_id = 0;
  std::string component;
  FaceLabel label;
  FitResult fit;
  double predicted_rate = 0.0;  // psi/u-level decay rate from the table
  double expected_slope = 0.0;  // after r-power bookkeeping
  int r_power = 0;
  double deviation = 0.0;
  bool pass = false;
  std::string verdict;  // "pass", "fail", "vanishing tail confirmed", ...
};

struct DecayReport {
  std::vector<TrajectoryVerdict> rows;
  double tolerance = 0.0;
  bool all_pass = false;
};

// Match each sampled series against the rate table at tolerance tol.  When
// mode >= 0 the per-mode row is used (required for single-sector runs);
// otherwise the full-solution rates apply.  Fixed-r samplers are checked
// against the tf_plus rate, rays against the C_plus rate shifted by the
// series' recorded r-power (r ~ gamma t along rays).  BelowFloor on a mode
// flagged exceptional is the confirming verdict, not a failure.
DecayReport compare(const std::vector<SampleSeries>& series,
                    const RateTable& table, double tol,
                    const WindowPolicy& policy = {}, int mode = -1);

}  // namespace taillab

#endif
