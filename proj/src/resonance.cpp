#include "taillab/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taillab {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_wave(const ModeSpec& spec, const char* who) {
  validate(spec);
  if (spec.problem != Problem::Wave)
    throw InvalidArgumentError(std::string(who) + ": wave spec required");
}

}  // namespace

HypergeomParams hypergeom_params(const ModeSpec& spec, Complex sigma) {
  require_wave(spec, "hypergeom_params");
  const double s = nu(spec.mode, spec.n, spec.coupling);
  HypergeomParams p;
  p.s = s;
  p.alpha = -0.5 * (spec.n - 2) + s;
  p.a = Complex(0.5 + s, 0.0);
  p.b = 0.5 + kI * sigma + s;
  p.c = Complex(1.0 + 2.0 * s, 0.0);
  return p;
}

Complex connection_coeff_y2(const ModeSpec& spec, Complex sigma) {
  const HypergeomParams p = hypergeom_params(spec, sigma);
  const Complex num1 = p.c - 1.0;                 // 2s
  const Complex num2 = p.c - p.a - p.b + 1.0;     // 1 - i sigma
  for (const Complex& z : {num1, num2}) {
    if (gamma_pole_report(z, 1e-9).is_pole)
      throw DegenerateParameterError(
          "connection_coeff_y2: numerator gamma factor at a pole (argument " +
          std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i)");
  }
  return std::exp(ln_gamma(num1) + ln_gamma(num2)) * rgamma(p.c - p.a) *
         rgamma(p.c - p.b);
}

ResonanceFamily closed_form_resonances(const ModeSpec& spec, int kmax) {
  require_wave(spec, "closed_form_resonances");
  if (kmax < 0) throw InvalidArgumentError("closed_form_resonances: kmax >= 0");
  ResonanceFamily fam;
  fam.spec = spec;
  const double s = nu(spec.mode, spec.n, spec.coupling);
  fam.leading_exponent = -0.5 * (spec.n - 2) + s;
  for (int k = 0; k <= kmax; ++k)
    fam.resonances.push_back(Complex(0.0, -(0.5 + s + k)));
  return fam;
}

namespace {

double abs_coeff(const ModeSpec& spec, Complex sigma) {
  try {
    return std::abs(connection_coeff_y2(spec, sigma));
  } catch (const DegenerateParameterError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::vector<Complex> locate_resonances_numeric(const ModeSpec& spec,
                                               const SearchBox& box, int grid) {
  require_wave(spec, "locate_resonances_numeric");
  if (grid < 16) throw InvalidArgumentError("locate_resonances_numeric: grid >= 16");
  if (!(box.re_hi > box.re_lo && box.im_hi > box.im_lo))
    throw InvalidArgumentError("locate_resonances_numeric: degenerate box");

  const double width = box.re_hi - box.re_lo;
  const double height = box.im_hi - box.im_lo;
  const int nx = grid;
  const int ny = std::clamp(static_cast<int>(std::lround(grid * height / width)),
                            grid, 16 * grid);
  std::vector<double> vals(static_cast<std::size_t>(nx + 1) * (ny + 1));
  auto at = [&](int i, int j) -> double& {
    return vals[static_cast<std::size_t>(j) * (nx + 1) + i];
  };
  auto sigma_at = [&](double i, double j) {
    return Complex(box.re_lo + width * i / nx, box.im_lo + height * j / ny);
  };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) at(i, j) = abs_coeff(spec, sigma_at(i, j));

  std::vector<Complex> zeros;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const double v = at(i, j);
      bool is_min = std::isfinite(v);
      for (int dj = -1; dj <= 1 && is_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || ii > nx || jj < 0 || jj > ny) continue;
          if (at(ii, jj) < v) { is_min = false; break; }
        }
      if (!is_min) continue;

      // Contracting-grid descent from the coarse minimum.
      Complex z = sigma_at(i, j);
      double best = v;
      double step = std::max(width / nx, height / ny);
      for (int it = 0; it < 200 && step > 1e-13; ++it) {
        Complex cand = z;
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            Complex trial = z + Complex(di * step, dj * step);
            trial = Complex(std::clamp(trial.real(), box.re_lo, box.re_hi),
                            std::clamp(trial.imag(), box.im_lo, box.im_hi));
            const double f = abs_coeff(spec, trial);
            if (f < best) { best = f; cand = trial; }
          }
        if (cand == z) step *= 0.5;
        else z = cand;
      }
      if (best < 1e-10) zeros.push_back(z);
    }
  }

  // Merge duplicates arriving from adjacent coarse minima.
  std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  std::vector<Complex> out;
  for (const Complex& z : zeros) {
    if (!out.empty() && std::abs(out.back() - z) < 1e-6) continue;
    out.push_back(z);
  }
  return out;
}

double verify_resonant_state(const ModeSpec& spec, Complex sigma,
                             const std::vector<double>& grid_x, double h) {
  const HypergeomParams p = hypergeom_params(spec, sigma);
  if (!(h > 0.0)) throw InvalidArgumentError("verify_resonant_state: h > 0");
  const double lambda = sphere_eigenvalue(spec.mode, spec.n);
  const double n1 = spec.n - 1;
  const Complex zero_order = -0.5 * n1 * (kI * sigma + 0.5 * n1);

  auto w = [&](double x) -> Complex {
    return std::pow(Complex(x, 0.0), p.alpha) * hyp2f1(p.a, p.b, p.c, x);
  };

  double worst = 0.0;
  for (double x : grid_x) {
    if (!(x - h > 0.0 && x + h < 1.0))
      throw InvalidArgumentError("verify_resonant_state: grid_x must be interior");
    const Complex wm = w(x - h), w0 = w(x), wp = w(x + h);
    const Complex d1 = (wp - wm) / (2.0 * h);
    const Complex d2 = (wp - 2.0 * w0 + wm) / (h * h);
    const Complex res = x * (1.0 - x) * d2 +
                        (n1 - x * (static_cast<double>(spec.n) + kI * sigma)) * d1 -
                        ((spec.coupling + lambda) / x) * w0 + zero_order * w0;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace taillab
