#ifndef TAILLAB_INDEXSETS_HPP
#define TAILLAB_INDEXSETS_HPP

#include <utility>
#include <vector>

#include "taillab/spectrum.hpp"

namespace taillab {

// One term of a polyhomogeneous expansion at a boundary face: decay
// exponent and log power.  Exponents are stored as real decay rates (the
// purely imaginary resonance convention a = i sigma).
struct IndexTerm {
  double exponent = 0.0;
  int logpower = 0;
};

// Finite truncation of an index set: every element with exponent below the
// truncation is present, none at or above it.
class IndexSet {
public:
  IndexSet() = default;
  IndexSet(std::vector<IndexTerm> elements, double truncation);

  const std::vector<IndexTerm>& elements() const { return elements_; }
  double truncation() const { return truncation_; }
  bool empty() const { return elements_.empty(); }
  std::size_t size() const { return elements_.size(); }

  // Least exponent with its log power; at equal exponents the larger log
  // power wins.  Throws on empty sets.
  IndexTerm min_exponent() const;

private:
  std::vector<IndexTerm> elements_;
  double truncation_ = 0.0;
};

// Generators.  All produce logpower-0 elements below the truncation L.
IndexSet generate_E_IS(int n, double coupling, double L);
IndexSet generate_F_IS(int n, double coupling, double L);
IndexSet generate_E_DC(double Z, double L);
IndexSet generate_F_DC(double Z, double L);

// Minkowski sum, truncated so the result is complete below its truncation.
IndexSet sum(const IndexSet& a, const IndexSet& b);

struct PullbackResult {
  IndexSet at_H1;  // index set E, unchanged
  IndexSet at_ff;  // E + F at the front face of the blow-up
  IndexSet at_H2;  // index set F, unchanged
};

PullbackResult pullback_blowup(const IndexSet& E_at_H1, const IndexSet& F_at_H2);

struct RateRow {
  int mode = 0;            // j (Wave) or |kappa| (Dirac)
  double rate_C_plus = 0;  // n/2 + nu_j, or 2 + sqrt(kappa^2 - Z^2)
  double rate_tf_plus = 0; // 1 + 2 nu_j, or 1 + 2 sqrt(kappa^2 - Z^2)
  bool exceptional = false;
};

struct RateTable {
  Problem problem = Problem::Wave;
  int n = 3;
  double coupling = 0.0;
  double rate_C_plus = 0.0;   // t-exponent along rays r = gamma t
  double rate_tf_plus = 0.0;  // t-exponent at fixed spatial points
  std::vector<RateRow> per_mode;
  bool sharpness_notice = false;  // coupling 0: sharpness not asserted
};

// Decay-rate table from the generated index sets, minimized mode by mode
// (exceptional modes contribute nothing at timelike infinity).  Throws
// DegenerateParameterError when an integer nu_j blocks the prediction.
RateTable predicted_rates(Problem problem, int n, double coupling_or_Z,
                          int mode_max = 5);

}  // namespace taillab

#endif
