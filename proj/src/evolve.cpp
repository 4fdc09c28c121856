#include "taillab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taillab {

namespace {

constexpr double kCflFactor = 0.4;
constexpr double kMarginCells = 10.0;

double lagrange4(const double* y, double frac) {
  // Cubic Lagrange interpolation at frac in [1, 2] measured from y[0].
  const double x = frac;
  const double w0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  const double w1 = x * (x - 2) * (x - 3) / 2.0;
  const double w2 = -x * (x - 1) * (x - 3) / 2.0;
  const double w3 = x * (x - 1) * (x - 2) / 6.0;
  return w0 * y[0] + w1 * y[1] + w2 * y[2] + w3 * y[3];
}

// Interpolate a grid function at radius r (staggered grid).
template <typename T>
T sample_grid(const std::vector<T>& v, double h, double r) {
  const double pos = r / h - 0.5;  // fractional index
  int j0 = static_cast<int>(std::floor(pos)) - 1;
  j0 = std::clamp(j0, 0, static_cast<int>(v.size()) - 4);
  const double frac = pos - j0;
  if constexpr (std::is_same_v<T, double>) {
    return lagrange4(v.data() + j0, frac);
  } else {
    double re[4], im[4];
    for (int k = 0; k < 4; ++k) {
      re[k] = v[j0 + k].real();
      im[k] = v[j0 + k].imag();
    }
    return T(lagrange4(re, frac), lagrange4(im, frac));
  }
}

// Symmetric spatial operator for the regularized wave variable
// W = r^{nu+1/2} w: T = d^2/dr^2 - (nu^2 - 1/4)/r^2, with the corner row
// closed so that the indicial profile r^{nu+1/2} is annihilated exactly.
struct WaveOperator {
  double h;
  double corner;            // 3^{nu+1/2}
  std::vector<double> pot;  // (nu^2 - 1/4)/r_j^2

  WaveOperator(const Grid& grid, double nu_val) : h(grid.h) {
    corner = std::pow(3.0, nu_val + 0.5);
    pot.resize(grid.npoints);
    const double c = nu_val * nu_val - 0.25;
    for (int j = 0; j < grid.npoints; ++j) {
      const double r = grid.r_at(j);
      pot[j] = c / (r * r);
    }
  }

  void apply(const std::vector<double>& W, std::vector<double>& out) const {
    const int n = static_cast<int>(W.size());
    const double ih2 = 1.0 / (h * h);
    out[0] = (W[1] - corner * W[0]) * ih2;
    for (int j = 1; j < n - 1; ++j)
      out[j] = (W[j + 1] - 2.0 * W[j] + W[j - 1]) * ih2 - pot[j] * W[j];
    out[n - 1] = (-2.0 * W[n - 1] + W[n - 2]) * ih2 - pot[n - 1] * W[n - 1];
  }

  double max_eigen_estimate() const {
    const double interior = 4.0 + std::max(0.0, pot.size() > 1 ? pot[1] * h * h : 0.0);
    return std::max(interior, corner + 1.0) / (h * h);
  }
};

void check_clean_window(const Grid& grid, const InitialData& data,
                        const std::vector<Trajectory>& trajectories) {
  const double R = grid.outer_radius();
  const double budget = 2.0 * R - data.outer_edge() - kMarginCells * grid.h;
  for (const Trajectory& traj : trajectories) {
    const double worst = grid.t_max + traj.radius_at(grid.t_max);
    if (worst > budget)
      throw InvalidArgumentError(
          "sampler outside reflection-clean window: need outer radius >= " +
          std::to_string(0.5 * (worst + data.outer_edge()) + kMarginCells * grid.h));
  }
}

void validate_grid(const Grid& grid, const InitialData& data) {
  if (!(grid.h > 0.0) || grid.npoints < 8 || !(grid.t_max > 0.0))
    throw InvalidArgumentError("Grid: h > 0, npoints >= 8, t_max > 0 required");
  if (!(grid.dt > 0.0))
    throw InvalidArgumentError("Grid: dt > 0 required");
  if (data.profile == InitialData::Profile::CInfBump) {
    if (!(data.r1 > 0.0 && data.r2 > data.r1))
      throw InvalidArgumentError("InitialData: CInfBump needs 0 < r1 < r2");
  } else if (!(data.width > 0.0)) {
    throw InvalidArgumentError("InitialData: width > 0 required");
  }
  if (data.outer_edge() >= grid.outer_radius() - kMarginCells * grid.h)
    throw InvalidArgumentError("InitialData: support must sit inside the grid");
}

struct SamplerSetup {
  std::vector<SampleSeries> series;
};

}  // namespace

double InitialData::operator()(double r) const {
  if (profile == Profile::GaussianBump) {
    const double z = (r - center) / width;
    return amplitude * std::exp(-0.5 * z * z);
  }
  if (!(r > r1 && r < r2)) return 0.0;
  const double y = (2.0 * r - r1 - r2) / (r2 - r1);
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - y * y));
}

double InitialData::outer_edge() const {
  return profile == Profile::GaussianBump ? center + 9.0 * width : r2;
}

Grid auto_grid(double h, double dt, double t_max,
               const std::vector<Trajectory>& trajectories,
               const InitialData& data) {
  double reach = 0.0;
  for (const Trajectory& traj : trajectories)
    reach = std::max(reach, traj.radius_at(t_max));
  const double R =
      std::max(0.5 * (t_max + reach + data.outer_edge()),
               std::max(reach, data.outer_edge())) +
      (kMarginCells + 2.0) * h;
  Grid grid;
  grid.h = h;
  grid.dt = dt;
  grid.t_max = t_max;
  grid.npoints = static_cast<int>(std::ceil(R / h + 0.5));
  return grid;
}

double wave_energy(const WaveState& state) {
  const int n = state.grid.npoints;
  const double mu = state.nu_val + 0.5;
  std::vector<double> Wn(n), Wp(n), TWp(n);
  for (int j = 0; j < n; ++j) {
    const double rp = std::pow(state.grid.r_at(j), mu);
    Wn[j] = rp * state.w_now[j];
    Wp[j] = rp * state.w_prev[j];
  }
  WaveOperator op(state.grid, state.nu_val);
  op.apply(Wp, TWp);
  double kinetic = 0.0, potential = 0.0;
  const double idt = 1.0 / state.dt;
  for (int j = 0; j < n; ++j) {
    const double v = (Wn[j] - Wp[j]) * idt;
    kinetic += v * v;
    potential -= Wn[j] * TWp[j];
  }
  return 0.5 * state.grid.h * (kinetic + potential);
}

double dirac_l2_norm(const DiracState& state) {
  double acc = 0.0;
  for (std::size_t j = 0; j < state.f.size(); ++j)
    acc += std::norm(state.f[j]) + std::norm(state.g[j]);
  return state.grid.h * acc;
}

EvolveResult wave_evolve(const ModeSpec& spec, const Grid& grid,
                         const InitialData& data,
                         const std::vector<Trajectory>& trajectories,
                         WaveState* final_state) {
  validate(spec);
  if (spec.problem != Problem::Wave)
    throw InvalidArgumentError("wave_evolve: wave spec required");
  validate_grid(grid, data);
  check_clean_window(grid, data, trajectories);

  EvolveResult result;
  const int n = grid.npoints;
  const double nu_val = nu(spec.mode, spec.n, spec.coupling);
  const double mu = 0.5 * (spec.n - 1);  // u = W / r^mu
  WaveOperator op(grid, nu_val);

  double dt = std::min(grid.dt, kCflFactor * grid.h);
  const double dt_stab = 0.95 * 2.0 / std::sqrt(op.max_eigen_estimate());
  if (dt > dt_stab) {
    dt = dt_stab;
    result.diag.notes.push_back("dt clamped to " + std::to_string(dt) +
                                " for stability of the effective potential");
  }

  std::vector<double> W(n), W_prev(n), W_next(n), TW(n);
  if (data.velocity) {
    // u(0) = 0, du/dt(0) = profile; second-order start W(-dt) = -dt V.
    for (int j = 0; j < n; ++j)
      W_prev[j] = -dt * std::pow(grid.r_at(j), mu) * data(grid.r_at(j));
  } else {
    for (int j = 0; j < n; ++j)
      W[j] = std::pow(grid.r_at(j), mu) * data(grid.r_at(j));
    op.apply(W, TW);
    for (int j = 0; j < n; ++j) W_prev[j] = W[j] + 0.5 * dt * dt * TW[j];
  }

  int tid = 0;
  for (const Trajectory& traj : trajectories) {
    SampleSeries s;
    s.trajectory_id = tid++;
    s.traj = traj;
    s.component = "u";
    s.r_power = 0;
    result.series.push_back(std::move(s));
  }

  const long steps = static_cast<long>(std::ceil(grid.t_max / dt - 1e-9));
  double e0 = std::numeric_limits<double>::quiet_NaN();
  result.diag.dt_used = dt;
  result.diag.outer_radius = grid.outer_radius();
  result.diag.steps = steps;

  for (long step = 1; step <= steps; ++step) {
    op.apply(W, TW);
    for (int j = 0; j < n; ++j)
      W_next[j] = 2.0 * W[j] - W_prev[j] + dt * dt * TW[j];
    std::swap(W_prev, W);
    std::swap(W, W_next);
    const double t = step * dt;

    for (SampleSeries& s : result.series) {
      const double r = s.traj.radius_at(t);
      if (!(r >= 2.0 * grid.h && r <= grid.outer_radius() - 2.0 * grid.h)) continue;
      const double u = sample_grid(W, grid.h, r) / std::pow(r, mu);
      s.t.push_back(t);
      s.re.push_back(u);
      s.im.push_back(0.0);
      s.peak = std::max(s.peak, std::abs(u));
    }

    if (step % 64 == 0 || step == steps) {
      op.apply(W_prev, TW);
      double kinetic = 0.0, potential = 0.0;
      for (int j = 0; j < n; ++j) {
        const double v = (W[j] - W_prev[j]) / dt;
        kinetic += v * v;
        potential -= W[j] * TW[j];
      }
      const double e = 0.5 * grid.h * (kinetic + potential);
      if (!std::isfinite(e))
        throw NumericError("wave_evolve: non-finite field at t = " + std::to_string(t));
      if (std::isnan(e0)) {
        e0 = e;
        result.diag.conserved_initial = e;
      }
      result.diag.conserved_final = e;
      if (e0 != 0.0)
        result.diag.drift_rel_max =
            std::max(result.diag.drift_rel_max, std::abs(e - e0) / std::abs(e0));
    }
  }

  if (final_state) {
    final_state->grid = grid;
    final_state->nu_val = nu_val;
    final_state->dt = dt;
    final_state->time = steps * dt;
    final_state->w_now.resize(n);
    final_state->w_prev.resize(n);
    for (int j = 0; j < n; ++j) {
      const double rp = std::pow(grid.r_at(j), nu_val + 0.5);
      final_state->w_now[j] = W[j] / rp;
      final_state->w_prev[j] = W_prev[j] / rp;
    }
  }
  return result;
}

EvolveResult dirac_evolve(const ModeSpec& spec, const Grid& grid,
                          const InitialData& data,
                          const std::vector<Trajectory>& trajectories,
                          DiracState* final_state) {
  validate(spec);
  if (spec.problem != Problem::Dirac)
    throw InvalidArgumentError("dirac_evolve: Dirac spec required");
  validate_grid(grid, data);
  check_clean_window(grid, data, trajectories);

  using C = std::complex<double>;
  EvolveResult result;
  const int n = grid.npoints;
  const double Z = spec.coupling;
  const int kappa = spec.mode;
  // Transport moves exactly one cell per step; the stiff 1/r rotation is
  // exact, so dt is pinned to h rather than the generic CFL bound.
  const double dt = grid.h;
  result.diag.dt_used = dt;
  result.diag.outer_radius = grid.outer_radius();
  if (std::abs(grid.dt - dt) > 1e-12)
    result.diag.notes.push_back("Dirac solver steps at dt = h = " + std::to_string(dt));

  // Characteristic variables p = f - i g (outgoing), q = f + i g (ingoing).
  std::vector<C> p(n), q(n);
  for (int j = 0; j < n; ++j) {
    const double bump = data(grid.r_at(j));
    const C f = data.seed_f ? C(bump, 0.0) : C(0.0, 0.0);
    const C g = data.seed_g ? C(bump, 0.0) : C(0.0, 0.0);
    p[j] = f - C(0.0, 1.0) * g;
    q[j] = f + C(0.0, 1.0) * g;
  }

  // Half-step potential rotation, exact and unitary per cell:
  // phase e^{i Z dt/(2r)}, mixing angle kappa dt/(2r) between p and q.
  std::vector<double> rot_c(n), rot_s(n);
  std::vector<C> phase(n);
  for (int j = 0; j < n; ++j) {
    const double inv_r = 1.0 / grid.r_at(j);
    const double theta = kappa * 0.5 * dt * inv_r;
    rot_c[j] = std::cos(theta);
    rot_s[j] = std::sin(theta);
    phase[j] = std::polar(1.0, Z * 0.5 * dt * inv_r);
  }
  auto rotate_half = [&]() {
    for (int j = 0; j < n; ++j) {
      const C pj = p[j], qj = q[j];
      p[j] = phase[j] * (rot_c[j] * pj - rot_s[j] * qj);
      q[j] = phase[j] * (rot_s[j] * pj + rot_c[j] * qj);
    }
  };

  // Origin reflection phase: parity of the regular solution through r = 0.
  const double eps = kappa > 0 ? 1.0 : -1.0;

  int tid = 0;
  for (const Trajectory& traj : trajectories) {
    for (const char* comp : {"f", "g"}) {
      SampleSeries s;
      s.trajectory_id = tid;
      s.traj = traj;
      s.component = comp;
      s.r_power = 1;  // f = r * (psi-level radial component)
      result.series.push_back(std::move(s));
    }
    ++tid;
  }

  const long steps = static_cast<long>(std::llround(grid.t_max / dt));
  result.diag.steps = steps;
  double n0 = std::numeric_limits<double>::quiet_NaN();

  for (long step = 1; step <= steps; ++step) {
    rotate_half();
    // Unit-cell characteristic shift; an ingoing wave crossing the origin
    // re-emerges outgoing with the parity phase.
    const C q0 = q[0];
    const C p_out = p[n - 1];
    for (int j = 0; j < n - 1; ++j) q[j] = q[j + 1];
    // Reflecting outer wall keeps the step exactly unitary; the sampling
    // window is already restricted so reflections never reach a sensor.
    q[n - 1] = -p_out;
    for (int j = n - 1; j >= 1; --j) p[j] = p[j - 1];
    p[0] = eps * q0;
    rotate_half();

    const double t = step * dt;
    for (std::size_t si = 0; si < result.series.size(); si += 2) {
      SampleSeries& sf = result.series[si];
      SampleSeries& sg = result.series[si + 1];
      const double r = sf.traj.radius_at(t);
      if (!(r >= 2.0 * grid.h && r <= grid.outer_radius() - 2.0 * grid.h)) continue;
      const C pv = sample_grid(p, grid.h, r);
      const C qv = sample_grid(q, grid.h, r);
      const C f = 0.5 * (pv + qv);
      const C g = C(0.0, 0.5) * (pv - qv);
      sf.t.push_back(t);
      sf.re.push_back(f.real());
      sf.im.push_back(f.imag());
      sf.peak = std::max(sf.peak, std::abs(f));
      sg.t.push_back(t);
      sg.re.push_back(g.real());
      sg.im.push_back(g.imag());
      sg.peak = std::max(sg.peak, std::abs(g));
    }

    if (step % 64 == 0 || step == steps) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += std::norm(p[j]) + std::norm(q[j]);
      const double norm2 = 0.5 * grid.h * acc;
      if (!std::isfinite(norm2))
        throw NumericError("dirac_evolve: non-finite field at t = " + std::to_string(t));
      if (std::isnan(n0)) {
        n0 = norm2;
        result.diag.conserved_initial = norm2;
      }
      result.diag.conserved_final = norm2;
      if (n0 != 0.0)
        result.diag.drift_rel_max =
            std::max(result.diag.drift_rel_max, std::abs(norm2 - n0) / std::abs(n0));
    }
  }

  if (final_state) {
    final_state->grid = grid;
    final_state->time = steps * dt;
    final_state->f.resize(n);
    final_state->g.resize(n);
    for (int j = 0; j < n; ++j) {
      final_state->f[j] = 0.5 * (p[j] + q[j]);
      final_state->g[j] = C(0.0, 0.5) * (p[j] - q[j]);
    }
  }
  return result;
}

}  // namespace taillab
