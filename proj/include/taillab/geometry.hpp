#ifndef TAILLAB_GEOMETRY_HPP
#define TAILLAB_GEOMETRY_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "taillab/indexsets.hpp"

namespace taillab {

enum class Face {
  C_plus,        // timelike infinity along rays r = gamma t
  tf_plus,       // timelike infinity over bounded spatial sets
  cf,            // conic face r = 0
  ScriPlus,      // null infinity
  Corner_C_tf,
  Corner_tf_cf,
  Corner_C_Scri,
};

struct FaceLabel {
  Face face = Face::tf_plus;
  // Interior coordinate on the face: x_inf in (0,1) for C_plus, y_inf in
  // (-1,1) for tf_plus, the fiber coordinate s_inf for ScriPlus.
  std::optional<double> interior_coordinate;
};

// Trajectories whose late-time limits land on the faces above.
struct Trajectory {
  enum class Kind { FixedR, Ray, NullOffset };
  Kind kind = Kind::FixedR;
  double param = 1.0;  // r0 > 0, gamma in (0,1), or the offset c in r = t - c

  static Trajectory fixed_r(double r0) { return {Kind::FixedR, r0}; }
  static Trajectory ray(double gamma) { return {Kind::Ray, gamma}; }
  static Trajectory null_offset(double c) { return {Kind::NullOffset, c}; }

  double radius_at(double t) const;
};

// Stereographic compactification of the (t, r) quadrant.
std::array<double, 3> quarter_sphere(double t, double r);
std::array<double, 2> half_disk(double t, double r);

// rho = 1/(t+r), x = 2r/(t+r); inverse r = x/(2 rho), t = (2-x)/(2 rho).
std::array<double, 2> appendix_coords(double t, double r);
std::array<double, 2> appendix_coords_inverse(double rho, double x);

// Chart near the corner of tf_+ with C_+: rho_tf = x + rho, y = (x-rho)/(x+rho).
std::array<double, 2> tf_coords(double x, double rho);

// Fiber coordinate on null infinity; with v = (t-r)/(t+r) this is s = t - r.
double scri_coords(double t, double r);

FaceLabel classify_trajectory(const Trajectory& traj);

// Test fixture: u(z, w) = sum over E x F of c_ab z^a w^b (logpowers 0).
// Coefficients are consumed row-major over E x F; missing entries default
// to 1.
std::function<double(double, double)> synthetic_phg(
    const IndexSet& E, const IndexSet& F, const std::vector<double>& coeffs);

}  // namespace taillab

#endif
