#include "taillab/indexsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taillab {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kIntegerTol = 1e-10;

bool is_integer(double v) { return std::abs(v - std::round(v)) <= kIntegerTol; }

std::vector<IndexTerm> normalize(std::vector<IndexTerm> elems, double L) {
  std::erase_if(elems, [&](const IndexTerm& t) { return t.exponent >= L; });
  std::sort(elems.begin(), elems.end(), [](const IndexTerm& a, const IndexTerm& b) {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    return a.logpower < b.logpower;
  });
  std::vector<IndexTerm> out;
  for (const IndexTerm& t : elems) {
    if (!out.empty() && std::abs(out.back().exponent - t.exponent) <= kMergeTol &&
        out.back().logpower == t.logpower)
      continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

IndexSet::IndexSet(std::vector<IndexTerm> elements, double truncation)
    : elements_(normalize(std::move(elements), truncation)), truncation_(truncation) {}

IndexTerm IndexSet::min_exponent() const {
  if (elements_.empty()) throw InvalidArgumentError("min_exponent: empty index set");
  IndexTerm best = elements_.front();
  for (const IndexTerm& t : elements_) {
    if (t.exponent < best.exponent - kMergeTol) best = t;
    else if (std::abs(t.exponent - best.exponent) <= kMergeTol &&
             t.logpower > best.logpower)
      best = t;  // larger log power dominates at equal exponent
  }
  return best;
}

IndexSet generate_E_IS(int n, double coupling, double L) {
  std::vector<IndexTerm> elems;
  for (int j = 0; j < 100000; ++j) {
    const double base = 0.5 * n + nu(j, n, coupling);
    if (base >= L) break;
    if (is_integer(0.5 + nu(j, n, coupling))) continue;  // no resolvent pole
    for (int k = 0; base + k < L; ++k) elems.push_back({base + k, 0});
  }
  return IndexSet(std::move(elems), L);
}

IndexSet generate_F_IS(int n, double coupling, double L) {
  std::vector<IndexTerm> elems;
  for (int j = 0; j < 100000; ++j) {
    const double base = -0.5 * (n - 2) + nu(j, n, coupling);
    if (base >= L) break;
    if (is_integer(nu(j, n, coupling))) continue;
    for (int l = 0; base + l < L; ++l) elems.push_back({base + l, 0});
  }
  return IndexSet(std::move(elems), L);
}

IndexSet generate_E_DC(double Z, double L) {
  if (!(std::abs(Z) < 0.5) || Z == 0.0)
    throw InvalidArgumentError("generate_E_DC: requires 0 < |Z| < 1/2");
  std::vector<IndexTerm> elems;
  for (int kappa = 1; kappa < 100000; ++kappa) {
    const double base = 2.0 + dirac_indicial(kappa, Z);
    if (base >= L) break;
    for (int l = 0; base + l < L; ++l) elems.push_back({base + l, 0});
  }
  return IndexSet(std::move(elems), L);
}

IndexSet generate_F_DC(double Z, double L) {
  if (!(std::abs(Z) < 0.5) || Z == 0.0)
    throw InvalidArgumentError("generate_F_DC: requires 0 < |Z| < 1/2");
  std::vector<IndexTerm> elems;
  for (int kappa = 1; kappa < 100000; ++kappa) {
    const double base = -1.0 + dirac_indicial(kappa, Z);
    if (base >= L) break;
    for (int j = 0; base + j < L; ++j) elems.push_back({base + j, 0});
  }
  return IndexSet(std::move(elems), L);
}

IndexSet sum(const IndexSet& a, const IndexSet& b) {
  if (a.empty() || b.empty())
    return IndexSet({}, a.truncation() + b.truncation());
  const double min_a = a.min_exponent().exponent;
  const double min_b = b.min_exponent().exponent;
  const double L = std::min(a.truncation() + min_b, b.truncation() + min_a);
  std::vector<IndexTerm> elems;
  elems.reserve(a.size() * b.size());
  for (const IndexTerm& ta : a.elements())
    for (const IndexTerm& tb : b.elements())
      elems.push_back({ta.exponent + tb.exponent, ta.logpower + tb.logpower});
  return IndexSet(std::move(elems), L);
}

PullbackResult pullback_blowup(const IndexSet& E_at_H1, const IndexSet& F_at_H2) {
  return {E_at_H1, sum(E_at_H1, F_at_H2), F_at_H2};
}

RateTable predicted_rates(Problem problem, int n, double coupling_or_Z,
                          int mode_max) {
  if (mode_max < 0) throw InvalidArgumentError("predicted_rates: mode_max >= 0");
  RateTable table;
  table.problem = problem;
  table.n = (problem == Problem::Dirac) ? 3 : n;
  table.coupling = coupling_or_Z;
  table.sharpness_notice = (coupling_or_Z == 0.0);

  if (problem == Problem::Wave) {
    const double half = 0.5 * (n - 2);
    if (n < 3 || !(coupling_or_Z > -half * half))
      throw InvalidArgumentError("predicted_rates: invalid wave parameters");
    int lead = -1;
    const int scan_max = std::max(mode_max, 64);
    for (int j = 0; j <= scan_max; ++j) {
      const double v = nu(j, n, coupling_or_Z);
      const bool resolvent_regular = is_integer(0.5 + v);
      if (j <= mode_max)
        table.per_mode.push_back(
            {j, 0.5 * n + v, 1.0 + 2.0 * v, resolvent_regular || is_integer(v)});
      if (lead < 0 && !resolvent_regular) {
        if (is_integer(v))
          throw DegenerateParameterError(
              "predicted_rates: integer nu_j, rate prediction unsupported");
        lead = j;
        table.rate_C_plus = 0.5 * n + v;
        table.rate_tf_plus = 1.0 + 2.0 * v;
      }
      if (lead >= 0 && j >= mode_max) break;
    }
    if (lead < 0)
      throw DegenerateParameterError(
          "predicted_rates: every mode is resolvent-regular (no tail at "
          "timelike infinity)");
  } else {
    if (!(std::abs(coupling_or_Z) < 0.5))
      throw InvalidArgumentError("predicted_rates: requires |Z| < 1/2");
    for (int kappa = 1; kappa <= std::max(mode_max, 1); ++kappa) {
      const double s = std::sqrt(static_cast<double>(kappa) * kappa -
                                 coupling_or_Z * coupling_or_Z);
      table.per_mode.push_back({kappa, 2.0 + s, 1.0 + 2.0 * s, false});
    }
    const double s1 = std::sqrt(1.0 - coupling_or_Z * coupling_or_Z);
    table.rate_C_plus = 2.0 + s1;
    table.rate_tf_plus = 1.0 + 2.0 * s1;
  }
  return table;
}

}  // namespace taillab
