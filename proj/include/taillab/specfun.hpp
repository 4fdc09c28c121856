#ifndef TAILLAB_SPECFUN_HPP
#define TAILLAB_SPECFUN_HPP

#include <complex>
#include <optional>

#include "taillab/errors.hpp"

namespace taillab {

using Complex = std::complex<double>;

struct GammaPoleReport {
  bool is_pole = false;
  std::optional<long> nearest_nonpositive_integer;
  double distance = 0.0;  // distance to the nearest nonpositive integer
};

// Principal branch of log Gamma (Lanczos approximation, reflection for
// Re z < 1/2).  Throws NumericError within 1e-12 of a nonpositive integer.
Complex ln_gamma(Complex z);

Complex gamma(Complex z);

// Reciprocal gamma, entire: exactly zero at nonpositive integers, safe to
// evaluate anywhere.
Complex rgamma(Complex z);

GammaPoleReport gamma_pole_report(Complex z, double tol);

// Gauss hypergeometric function F(a, b; c; x) for real x in [0, 1).
// Direct series for x <= 1/2, 1-x connection formula above.  When c-a-b is
// within 1e-8 of an integer the connection coefficients are evaluated at
// c +/- 1e-6 and averaged.
Complex hyp2f1(Complex a, Complex b, Complex c, double x);

// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)); the x -> 1 limit of 2F1
// when Re(c-a-b) > 0.
Complex gauss_value(Complex a, Complex b, Complex c);

}  // namespace taillab

#endif
