#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/collapse.hpp"
#include "branchlab/state.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// A realized branch inside its source state. Possibility, absurdity and
// grading are always judged relative to one of these.
struct PossibilityContext {
  WaveFunction source;
  std::string realized_label;
  Tolerances tol{};
};

// Throws Error(kUnknownLabel) when the label is missing and
// Error(kZeroProbabilityOutcome) when an absurd branch is named as realized.
[[nodiscard]] PossibilityContext make_context(WaveFunction source,
                                              std::string_view realized_label,
                                              const Tolerances& tol = {});
[[nodiscard]] PossibilityContext make_context(const CollapseRecord& record,
                                              const Tolerances& tol = {});

// True iff the label is a non-realized branch with probability above tol.zero.
[[nodiscard]] bool is_possible_for(const PossibilityContext& ctx, std::string_view label);

// Existential over the contexts: true iff at least one of them witnesses the
// label as possible. Throws Error(kUnknownLabel) when the label appears in no
// context's source.
[[nodiscard]] bool is_possible_tout_court(std::span<const PossibilityContext> universe,
                                          std::string_view label);

// True iff the realized branch holds probability >= 1 - tol.zero, i.e. every
// other branch is absurd.
[[nodiscard]] bool classify_deterministic(const PossibilityContext& ctx);

// True iff the branch's probability is at or below tol.zero.
[[nodiscard]] bool classify_absurd(const PossibilityContext& ctx, std::string_view label);

enum class Grade {
  kMorePossible,
  kSameGrade,
  kLessPossible,
};

const char* grade_name(Grade grade);

// Compares two non-realized branches on squared moduli. Same grade within
// tol.grade. Throws Error(kRealizedOperand) if either operand is realized.
[[nodiscard]] Grade more_possible(const PossibilityContext& ctx, std::string_view a,
                                  std::string_view b);

struct GradeClass {
  double probability = 0.0;  // representative value (largest in the class)
  std::vector<std::string> labels;

  friend bool operator==(const GradeClass&, const GradeClass&) = default;
};

// Descending same-grade classes of the non-realized, non-absurd branches.
struct GradeOrdering {
  std::string realized_label;
  std::vector<GradeClass> classes;

  friend bool operator==(const GradeOrdering&, const GradeOrdering&) = default;
};

[[nodiscard]] GradeOrdering grade_ordering(const PossibilityContext& ctx);

struct OrderingBounds {
  std::vector<std::string> lower;  // least possible, still not impossible
  std::vector<std::string> upper;  // most possible, still not necessary
};

// Throws Error(kEmptyOrdering) for a deterministic context with no
// possible branches.
[[nodiscard]] OrderingBounds bounds(const GradeOrdering& ordering);

// Relation axiom verdicts for the possibility relation induced by a family
// of contexts. Pairs read (x, y): x is possible as regards the realized y.
struct AxiomReport {
  struct Pair {
    std::string x;
    std::string y;

    friend bool operator==(const Pair&, const Pair&) = default;
  };
  struct Triple {
    std::string x;
    std::string y;
    std::string z;

    friend bool operator==(const Triple&, const Triple&) = default;
  };

  bool irreflexive = true;  // the paper prints this formula as "Anti-Simmetry"
  std::vector<Pair> irreflexivity_counterexamples;

  bool asymmetric = true;  // printed as "Not Reflexivity"
  std::vector<Pair> asymmetry_counterexamples;

  bool transitive = true;
  std::vector<Triple> transitivity_counterexamples;

  [[nodiscard]] bool all_hold() const {
    return irreflexive && asymmetric && transitive;
  }
};

// Checks irreflexivity, asymmetry and transitivity of the union relation by
// exhaustive enumeration. Asymmetry and transitivity can genuinely fail once
// contexts are chained; counterexamples are reported, not resolved.
[[nodiscard]] AxiomReport check_relation_axioms(std::span<const PossibilityContext> contexts);

}  // namespace branchlab
