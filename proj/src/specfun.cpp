#include "taillab/specfun.hpp"

#include <cmath>
#include <limits>

namespace taillab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log(sin(pi z)), stable for large |Im z|.  Branch is only meaningful mod
// 2 pi i; callers exponentiate or take real parts of gamma identities.
Complex log_sin_pi(Complex z) {
  const double im = z.imag();
  const Complex ipz = Complex(0.0, kPi) * z;
  if (im > 10.0) {
    // sin(pi z) ~ -exp(-i pi z) / (2 i)
    return -ipz + Complex(-std::log(2.0), kPi / 2.0) +
           std::log(1.0 - std::exp(2.0 * ipz));
  }
  if (im < -10.0) {
    // sin(pi z) ~ exp(i pi z) / (2 i)
    return ipz - Complex(std::log(2.0), kPi / 2.0) +
           std::log(1.0 - std::exp(-2.0 * ipz));
  }
  // Reduce modulo 1 so sin keeps full relative precision near the zeros;
  // the (-1)^m sign becomes a multiple of i pi in the log.
  const double m = std::round(z.real());
  return std::log(std::sin(kPi * (z - m))) + Complex(0.0, kPi * m);
}

Complex ln_gamma_positive(Complex z) {
  // Requires Re z >= 0.5.
  Complex acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + Complex(i - 1, 0.0));
  const Complex t = z + 6.5;
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

GammaPoleReport gamma_pole_report(Complex z, double tol) {
  if (!(tol > 0.0)) throw InvalidArgumentError("gamma_pole_report: tol must be > 0");
  GammaPoleReport rep;
  const long nearest = std::lround(std::min(z.real(), 0.0));
  const Complex target(static_cast<double>(nearest), 0.0);
  rep.distance = std::abs(z - target);
  if (rep.distance <= tol) {
    rep.is_pole = true;
    rep.nearest_nonpositive_integer = nearest;
  }
  return rep;
}

Complex ln_gamma(Complex z) {
  const auto pole = gamma_pole_report(z, 1e-12);
  if (pole.is_pole)
    throw NumericError("ln_gamma: argument within 1e-12 of a nonpositive integer");
  if (z.real() >= 0.5) return ln_gamma_positive(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  return std::log(kPi) - log_sin_pi(z) - ln_gamma_positive(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

Complex rgamma(Complex z) {
  if (gamma_pole_report(z, 1e-12).is_pole) return Complex(0.0, 0.0);
  if (z.real() >= 0.5) return std::exp(-ln_gamma_positive(z));
  // 1/Gamma(z) = Gamma(1-z) sin(pi z) / pi, entire in z.
  return std::exp(ln_gamma_positive(1.0 - z) + log_sin_pi(z)) / kPi;
}

namespace {

using LComplex = std::complex<long double>;

LComplex widen(Complex z) { return LComplex(z.real(), z.imag()); }
Complex narrow(LComplex z) {
  return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

constexpr int kSeriesCap = 100000;

// Direct Gauss series, summed in extended precision.
LComplex hyp2f1_series(LComplex a, LComplex b, LComplex c, long double x) {
  LComplex sum = 1.0L;
  LComplex term = 1.0L;
  int quiet = 0;
  for (int k = 0; k < kSeriesCap; ++k) {
    const long double kk = static_cast<long double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0L)) * x;
    sum += term;
    if (std::abs(term) <= 1e-19L * std::abs(sum)) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw NumericError("hyp2f1: series did not converge within iteration cap");
}

bool near_nonpositive_integer(Complex z, double tol) {
  return gamma_pole_report(z, tol).is_pole;
}

// One evaluation of the 1-x connection formula; assumes c-a-b is not an
// integer (coefficients finite).
LComplex hyp2f1_onemx(Complex a, Complex b, Complex c, double x) {
  const Complex cab = c - a - b;
  const Complex coef1 =
      std::exp(ln_gamma(c) + ln_gamma(cab)) * rgamma(c - a) * rgamma(c - b);
  const Complex coef2 =
      std::exp(ln_gamma(c) + ln_gamma(-cab)) * rgamma(a) * rgamma(b);
  const long double y = 1.0L - static_cast<long double>(x);
  const LComplex s1 = hyp2f1_series(widen(a), widen(b), widen(a + b - c + 1.0), y);
  const LComplex s2 =
      hyp2f1_series(widen(c - a), widen(c - b), widen(cab + 1.0), y);
  const LComplex pow_y = std::exp(widen(cab) * std::log(LComplex(y)));
  return widen(coef1) * s1 + widen(coef2) * pow_y * s2;
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, double x) {
  if (!(x >= 0.0 && x < 1.0))
    throw InvalidArgumentError("hyp2f1: x must lie in [0, 1)");
  if (near_nonpositive_integer(c, 1e-12))
    throw InvalidArgumentError("hyp2f1: c is a nonpositive integer");
  if (x == 0.0) return Complex(1.0, 0.0);

  // Terminating (polynomial) cases converge directly for any x in [0,1).
  const bool poly = near_nonpositive_integer(a, 1e-12) ||
                    near_nonpositive_integer(b, 1e-12);
  if (x <= 0.5 || poly)
    return narrow(hyp2f1_series(widen(a), widen(b), widen(c),
                                static_cast<long double>(x)));

  const Complex cab = c - a - b;
  const double frac = std::abs(cab.real() - std::round(cab.real()));
  const bool near_int = std::abs(cab.imag()) < 1e-8 && frac < 1e-8;
  if (!near_int) return narrow(hyp2f1_onemx(a, b, c, x));
  // Degenerate connection coefficients: average two perturbed evaluations.
  const double delta = 1e-5;
  const LComplex up = hyp2f1_onemx(a, b, c + delta, x);
  const LComplex dn = hyp2f1_onemx(a, b, c - delta, x);
  return narrow(0.5L * (up + dn));
}

Complex gauss_value(Complex a, Complex b, Complex c) {
  const Complex cab = c - a - b;
  if (!(cab.real() > 0.0))
    throw InvalidArgumentError("gauss_value: requires Re(c-a-b) > 0");
  return std::exp(ln_gamma(c) + ln_gamma(cab)) * rgamma(c - a) * rgamma(c - b);
}

}  // namespace taillab
