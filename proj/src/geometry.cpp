#include "taillab/geometry.hpp"

#include <cmath>

namespace taillab {

double Trajectory::radius_at(double t) const {
  switch (kind) {
    case Kind::FixedR: return param;
    case Kind::Ray: return param * t;
    case Kind::NullOffset: return t - param;
  }
  return param;
}

std::array<double, 3> quarter_sphere(double t, double r) {
  if (!(r > 0.0)) throw InvalidArgumentError("quarter_sphere: r > 0 required");
  const double s = std::sqrt(1.0 + t * t + r * r);
  return {t / s, r / s, 1.0 / s};
}

std::array<double, 2> half_disk(double t, double r) {
  if (!(r > 0.0)) throw InvalidArgumentError("half_disk: r > 0 required");
  const double s = 1.0 + std::sqrt(1.0 + t * t + r * r);
  return {t / s, r / s};
}

std::array<double, 2> appendix_coords(double t, double r) {
  const double u = t + r;
  if (!(u > 0.0)) throw InvalidArgumentError("appendix_coords: t + r > 0 required");
  return {1.0 / u, 2.0 * r / u};
}

std::array<double, 2> appendix_coords_inverse(double rho, double x) {
  if (!(rho > 0.0)) throw InvalidArgumentError("appendix_coords_inverse: rho > 0");
  return {(2.0 - x) / (2.0 * rho), x / (2.0 * rho)};  // (t, r)
}

std::array<double, 2> tf_coords(double x, double rho) {
  const double s = x + rho;
  if (!(s > 0.0)) throw InvalidArgumentError("tf_coords: x + rho > 0 required");
  return {s, (x - rho) / s};
}

double scri_coords(double t, double r) {
  if (!(t + r > 0.0)) throw InvalidArgumentError("scri_coords: t + r > 0 required");
  return t - r;  // v = (t-r)/(t+r), s = v/rho
}

FaceLabel classify_trajectory(const Trajectory& traj) {
  FaceLabel label;
  switch (traj.kind) {
    case Trajectory::Kind::FixedR:
      if (!(traj.param > 0.0))
        throw InvalidArgumentError("classify_trajectory: r0 > 0 required");
      label.face = Face::tf_plus;
      // limit of y = (x - rho)/(x + rho) along r = r0, t -> infinity
      label.interior_coordinate = (2.0 * traj.param - 1.0) / (2.0 * traj.param + 1.0);
      return label;
    case Trajectory::Kind::Ray:
      if (!(traj.param > 0.0 && traj.param < 1.0))
        throw InvalidArgumentError("classify_trajectory: gamma in (0,1) required");
      label.face = Face::C_plus;
      label.interior_coordinate = 2.0 * traj.param / (1.0 + traj.param);
      return label;
    case Trajectory::Kind::NullOffset:
      label.face = Face::ScriPlus;
      label.interior_coordinate = traj.param;
      return label;
  }
  return label;
}

std::function<double(double, double)> synthetic_phg(
    const IndexSet& E, const IndexSet& F, const std::vector<double>& coeffs) {
  struct Term {
    double a, b, c;
  };
  std::vector<Term> terms;
  std::size_t idx = 0;
  for (const IndexTerm& e : E.elements())
    for (const IndexTerm& f : F.elements()) {
      const double c = idx < coeffs.size() ? coeffs[idx] : 1.0;
      ++idx;
      terms.push_back({e.exponent, f.exponent, c});
    }
  return [terms](double z, double w) {
    double acc = 0.0;
    for (const Term& t : terms)
      acc += t.c * std::pow(z, t.a) * std::pow(w, t.b);
    return acc;
  };
}

}  // namespace taillab
