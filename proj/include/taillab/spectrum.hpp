#ifndef TAILLAB_SPECTRUM_HPP
#define TAILLAB_SPECTRUM_HPP

#include "taillab/errors.hpp"

namespace taillab {

enum class Problem { Wave, Dirac };

// One separated sector: the wave equation with inverse-square coupling on
// R^n restricted to the j-th spherical harmonic, or the Dirac-Coulomb
// system in the kappa sector (n is fixed at 3 there).
struct ModeSpec {
  Problem problem = Problem::Wave;
  int n = 3;            // spatial dimension (Wave); Dirac forces 3
  double coupling = 0;  // f (Wave) or charge Z (Dirac)
  int mode = 0;         // j >= 0 (Wave) or kappa != 0 (Dirac)

  static ModeSpec wave(int n, double coupling, int j);
  static ModeSpec dirac(double Z, int kappa);
};

// Throws InvalidArgumentError if the spec violates its parameter bounds.
void validate(const ModeSpec& spec);

// Eigenvalue j(j+n-2) of the sphere Laplacian.
double sphere_eigenvalue(int j, int n);

// nu_j = sqrt(((n-2)/2)^2 + lambda_j + coupling), the wave indicial shift.
double nu(int j, int n, double coupling);

// sqrt(kappa^2 - Z^2), the Dirac-Coulomb indicial exponent.
double dirac_indicial(int kappa, double Z);

enum class ExceptionalKind { Generic, ResolventRegular, IntegerNu };

// ResolventRegular: 1/2 + nu_j integral, the mode carries no tail at
// timelike infinity.  IntegerNu: nu_j integral, rate prediction unsupported.
ExceptionalKind wave_mode_exceptional(const ModeSpec& spec);

// Indicial exponent of the mode at r = 0 (Friedrichs branch for Wave).
double indicial_exponent(const ModeSpec& spec);

}  // namespace taillab

#endif
