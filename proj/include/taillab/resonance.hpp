#ifndef TAILLAB_RESONANCE_HPP
#define TAILLAB_RESONANCE_HPP

#include <vector>

#include "taillab/specfun.hpp"
#include "taillab/spectrum.hpp"

namespace taillab {

// Parameters of the hypergeometric equation satisfied by the conjugated
// radial resonant state: a = 1/2+s, b = 1/2+i sigma+s, c = 1+2s with
// s = nu_j, and the conjugation exponent alpha = -(n-2)/2 + s.
struct HypergeomParams {
  Complex a, b, c;
  double s = 0.0;
  double alpha = 0.0;
};

struct ResonanceFamily {
  ModeSpec spec;
  std::vector<Complex> resonances;     // sigma_{j,k} = -i(1/2 + s + k)
  double leading_exponent = 0.0;       // resonant state ~ x^{-(n-2)/2 + s}
};

struct SearchBox {
  double re_lo, re_hi, im_lo, im_hi;
};

HypergeomParams hypergeom_params(const ModeSpec& spec, Complex sigma);

// Coefficient of y2 in Kummer's expansion of y4:
//   Gamma(c-1) Gamma(c-a-b+1) / (Gamma(c-a) Gamma(c-b)).
// Its zeros in sigma are the resonances.  Throws DegenerateParameterError
// when a numerator factor sits at a gamma pole.
Complex connection_coeff_y2(const ModeSpec& spec, Complex sigma);

ResonanceFamily closed_form_resonances(const ModeSpec& spec, int kmax);

// Zeros of |connection_coeff_y2| inside the box: coarse grid minima refined
// by contracting-grid descent until |coeff| < 1e-10.
std::vector<Complex> locate_resonances_numeric(const ModeSpec& spec,
                                               const SearchBox& box, int grid);

// Max |P w| over grid_x for the candidate resonant state w = x^alpha F(a,b,c;x),
// with the second-order derivatives taken by centered differences of step h.
double verify_resonant_state(const ModeSpec& spec, Complex sigma,
                             const std::vector<double>& grid_x, double h = 1e-4);

}  // namespace taillab

#endif
