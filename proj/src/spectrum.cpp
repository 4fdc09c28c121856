#include "taillab/spectrum.hpp"

#include <cmath>
#include <string>

namespace taillab {

namespace {
constexpr double kIntegerTol = 1e-10;

bool is_integer(double v) { return std::abs(v - std::round(v)) <= kIntegerTol; }
}  // namespace

ModeSpec ModeSpec::wave(int n, double coupling, int j) {
  ModeSpec s;
  s.problem = Problem::Wave;
  s.n = n;
  s.coupling = coupling;
  s.mode = j;
  validate(s);
  return s;
}

ModeSpec ModeSpec::dirac(double Z, int kappa) {
  ModeSpec s;
  s.problem = Problem::Dirac;
  s.n = 3;
  s.coupling = Z;
  s.mode = kappa;
  validate(s);
  return s;
}

void validate(const ModeSpec& spec) {
  if (spec.problem == Problem::Wave) {
    if (spec.n < 3) throw InvalidArgumentError("ModeSpec: wave requires n >= 3");
    if (spec.mode < 0) throw InvalidArgumentError("ModeSpec: wave requires j >= 0");
    const double half = 0.5 * (spec.n - 2);
    if (!(spec.coupling > -half * half))
      throw InvalidArgumentError("ModeSpec: coupling must exceed -((n-2)/2)^2");
  } else {
    if (spec.n != 3) throw InvalidArgumentError("ModeSpec: Dirac fixes n = 3");
    if (spec.mode == 0) throw InvalidArgumentError("ModeSpec: kappa must be nonzero");
    if (!(std::abs(spec.coupling) < 0.5))
      throw InvalidArgumentError("ModeSpec: requires |Z| < 1/2");
  }
}

double sphere_eigenvalue(int j, int n) {
  if (j < 0 || n < 3) throw InvalidArgumentError("sphere_eigenvalue: j >= 0, n >= 3");
  return static_cast<double>(j) * (j + n - 2);
}

double nu(int j, int n, double coupling) {
  const double half = 0.5 * (n - 2);
  const double arg = half * half + sphere_eigenvalue(j, n) + coupling;
  if (!(arg > 0.0))
    throw InvalidArgumentError("nu: coupling at or below -((n-2)/2)^2 - lambda_j");
  return std::sqrt(arg);
}

double dirac_indicial(int kappa, double Z) {
  if (kappa == 0) throw InvalidArgumentError("dirac_indicial: kappa must be nonzero");
  if (!(std::abs(Z) < 0.5)) throw InvalidArgumentError("dirac_indicial: |Z| < 1/2");
  return std::sqrt(static_cast<double>(kappa) * kappa - Z * Z);
}

ExceptionalKind wave_mode_exceptional(const ModeSpec& spec) {
  if (spec.problem != Problem::Wave)
    throw InvalidArgumentError("wave_mode_exceptional: wave spec required");
  const double v = nu(spec.mode, spec.n, spec.coupling);
  if (is_integer(0.5 + v)) return ExceptionalKind::ResolventRegular;
  if (is_integer(v)) return ExceptionalKind::IntegerNu;
  return ExceptionalKind::Generic;
}

double indicial_exponent(const ModeSpec& spec) {
  validate(spec);
  if (spec.problem == Problem::Wave)
    return -0.5 * (spec.n - 2) + nu(spec.mode, spec.n, spec.coupling);
  return dirac_indicial(spec.mode, spec.coupling);
}

}  // namespace taillab
