#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "taillab/geometry.hpp"

using namespace taillab;

TEST_CASE("quarter sphere and half disk") {
  const auto q = quarter_sphere(1.0, 1.0);
  CHECK(q[0] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(q[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(q[2] == doctest::Approx(1.0 / std::sqrt(3.0)));
  const auto q2 = quarter_sphere(1.0, 1e-12);
  CHECK(q2[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(q2[2] == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto h = half_disk(0.0, 1.0);
  CHECK(h[0] == doctest::Approx(0.0));
  CHECK(h[1] == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(1e-3, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = dist(rng), r = dist(rng);
    const auto s = quarter_sphere(t, r);
    CHECK(std::abs(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] - 1.0) < 1e-14);
    const auto d = half_disk(t, r);
    CHECK(d[0] * d[0] + d[1] * d[1] < 1.0);
  }
}

TEST_CASE("appendix coordinates round trip") {
  const auto c = appendix_coords(3.0, 1.0);
  CHECK(c[0] == doctest::Approx(0.25));
  CHECK(c[1] == doctest::Approx(0.5));
  CHECK(appendix_coords(5.0, 5.0)[1] == doctest::Approx(1.0));  // null ray

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logs(std::log(1e-3), std::log(1e6));
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  for (int i = 0; i < 10000; ++i) {
    const double total = std::exp(logs(rng));
    const double r = total * frac(rng);
    const double t = total - r;
    const auto [rho, x] = appendix_coords(t, r);
    const auto [t2, r2] = appendix_coords_inverse(rho, x);
    CHECK(std::abs(t2 - t) <= 1e-13 * std::max(1.0, std::abs(t)));
    CHECK(std::abs(r2 - r) <= 1e-13 * std::max(1.0, std::abs(r)));
  }
}

TEST_CASE("tf and scri coordinates") {
  const auto tf = tf_coords(0.5, 0.25);
  CHECK(tf[0] == doctest::Approx(0.75));
  CHECK(tf[1] == doctest::Approx(1.0 / 3.0));
  CHECK(tf_coords(0.3, 0.3)[1] == doctest::Approx(0.0));
  CHECK(tf_coords(0.3, 0.0)[1] == doctest::Approx(1.0));

  CHECK(scri_coords(10.0, 7.0) == doctest::Approx(3.0));
  CHECK(scri_coords(4.0, 4.0) == doctest::Approx(0.0));
}

TEST_CASE("trajectory classification") {
  const FaceLabel fr = classify_trajectory(Trajectory::fixed_r(2.0));
  CHECK(fr.face == Face::tf_plus);
  CHECK(fr.interior_coordinate.value() == doctest::Approx(0.6));

  const FaceLabel ray = classify_trajectory(Trajectory::ray(0.5));
  CHECK(ray.face == Face::C_plus);
  CHECK(ray.interior_coordinate.value() == doctest::Approx(2.0 / 3.0));

  const FaceLabel no = classify_trajectory(Trajectory::null_offset(5.0));
  CHECK(no.face == Face::ScriPlus);
  CHECK(no.interior_coordinate.value() == doctest::Approx(5.0));

  CHECK_THROWS_AS(classify_trajectory(Trajectory::fixed_r(0.0)),
                  InvalidArgumentError);
  CHECK_THROWS_AS(classify_trajectory(Trajectory::ray(1.0)),
                  InvalidArgumentError);
}

TEST_CASE("classification agrees with chart limits") {
  const double t = 1e6;
  {
    const Trajectory traj = Trajectory::fixed_r(2.0);
    const auto [rho, x] = appendix_coords(t, traj.radius_at(t));
    const double y = tf_coords(x, rho)[1];
    CHECK(std::abs(y - classify_trajectory(traj).interior_coordinate.value()) <
          1e-4);
  }
  {
    const Trajectory traj = Trajectory::ray(0.5);
    const auto [rho, x] = appendix_coords(t, traj.radius_at(t));
    CHECK(std::abs(x - classify_trajectory(traj).interior_coordinate.value()) <
          1e-4);
  }
  {
    const Trajectory traj = Trajectory::null_offset(5.0);
    const double s = scri_coords(t, traj.radius_at(t));
    CHECK(std::abs(s - classify_trajectory(traj).interior_coordinate.value()) <
          1e-4);
  }
}

TEST_CASE("synthetic expansions") {
  const IndexSet e({{2.0, 0}}, 5.0), f({{1.0, 0}}, 5.0);
  const auto u = synthetic_phg(e, f, {1.0});
  CHECK(u(0.1, 0.2) == doctest::Approx(0.002));

  const auto u2 = synthetic_phg(e, f, {});
  CHECK(u2(0.5, 0.0) == 0.0);  // min b > 0 kills the second factor

  // Blown-up sampling along fixed s has w-exponent min(E) + min(F).
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> gap(0.5, 1.5), coef(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<IndexTerm> ee, ff;
    double a = gap(rng);
    for (int i = 0; i < 3; ++i) { ee.push_back({a, 0}); a += gap(rng); }
    double b = gap(rng);
    for (int i = 0; i < 3; ++i) { ff.push_back({b, 0}); b += gap(rng); }
    const IndexSet E(ee, 100.0), F(ff, 100.0);
    std::vector<double> coeffs;
    for (int i = 0; i < 9; ++i) coeffs.push_back(coef(rng));
    const auto fn = synthetic_phg(E, F, coeffs);
    const double s = 0.7;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int npts = 40;
    for (int i = 0; i < npts; ++i) {
      const double w = 1e-6 * std::pow(100.0, i / double(npts - 1));
      const double x = std::log(w), y = std::log(fn(s * w, w));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    const double want =
        E.min_exponent().exponent + F.min_exponent().exponent;
    CHECK(std::abs(slope - want) < 1e-2);
  }
}
