#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchlab/state.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// The probability multiset of one wavefunction, ordered descending. Grade
// classes (values equal within tol.grade) collapse to one carrier element
// for the order-theoretic checks; the multiset stays around for reporting.
struct ProbabilitySet {
  std::vector<double> values;   // multiset, descending
  std::vector<double> carrier;  // distinct class representatives, descending

  static ProbabilitySet from_wavefunction(const WaveFunction& wf, const Tolerances& tol = {});
  static ProbabilitySet from_values(std::vector<double> values, const Tolerances& tol = {});
};

enum class Verdict {
  kHolds,
  kFails,
  kVacuous,
};

const char* verdict_name(Verdict verdict);

struct ClaimResult {
  std::string claim;
  Verdict verdict = Verdict::kHolds;
  std::optional<double> counterexample;  // offending carrier value, when failing
  std::string detail;                    // tie notes, violated law, etc.
};

struct AlgebraReport {
  ClaimResult well_order;
  ClaimResult has_infimum;
  ClaimResult has_supremum;
  ClaimResult pairwise_min_sup;
  ClaimResult lattice;
  ClaimResult orthocomplemented;
  ClaimResult distributive;
  ClaimResult boolean_algebra;

  [[nodiscard]] std::vector<const ClaimResult*> claims() const;
};

// Exhaustive checks over the finite carrier: ordering, bounds, pairwise
// min/sup, lattice laws for min/max, closure under the complement
// p -> 1 - p, distributivity, and the Boolean axioms for
// <carrier, not, +, 0, 1> with "+" read as max and 0/1 as the literal
// bounds. Verdicts, never exceptions; the carrier cap guards the
// exhaustive loops.
[[nodiscard]] AlgebraReport verify(const ProbabilitySet& ps, const Tolerances& tol = {},
                                   std::size_t carrier_cap = 64);

// Reported separately so the finite/infinite caveat stays visible: finite
// chains are always well-ordered; ties demote the verdict to "up to
// same-grade classes"; fewer than two values leaves nothing to order.
[[nodiscard]] ClaimResult well_order_check(const ProbabilitySet& ps);

}  // namespace branchlab
