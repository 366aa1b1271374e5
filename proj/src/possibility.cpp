#include "branchlab/possibility.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "branchlab/errors.hpp"

namespace branchlab {

namespace {

const EigenBranch& branch_or_throw(const WaveFunction& wf, std::string_view label) {
  const EigenBranch* branch = wf.find(label);
  if (branch == nullptr) {
    throw Error(ErrorCode::kUnknownLabel,
                "UnknownLabel: no branch '" + std::string(label) + "' in state '" +
                    wf.observable_name + "'");
  }
  return *branch;
}

}  // namespace

PossibilityContext make_context(WaveFunction source, std::string_view realized_label,
                                const Tolerances& tol) {
  const EigenBranch& realized = branch_or_throw(source, realized_label);
  if (realized.born_probability() <= tol.zero) {
    throw Error(ErrorCode::kZeroProbabilityOutcome,
                "ZeroProbabilityOutcome: branch '" + std::string(realized_label) +
                    "' is absurd and cannot be the realized branch of a context");
  }
  return PossibilityContext{std::move(source), std::string(realized_label), tol};
}

PossibilityContext make_context(const CollapseRecord& record, const Tolerances& tol) {
  return make_context(record.source, record.realized_label, tol);
}

bool is_possible_for(const PossibilityContext& ctx, std::string_view label) {
  const EigenBranch& branch = branch_or_throw(ctx.source, label);
  if (branch.label == ctx.realized_label) {
    return false;
  }
  return branch.born_probability() > ctx.tol.zero;
}

bool is_possible_tout_court(std::span<const PossibilityContext> universe,
                            std::string_view label) {
  bool seen_anywhere = false;
  bool witnessed = false;
  for (const auto& ctx : universe) {
    if (ctx.source.find(label) == nullptr) {
      continue;
    }
    seen_anywhere = true;
    if (is_possible_for(ctx, label)) {
      witnessed = true;
    }
  }
  if (!seen_anywhere) {
    throw Error(ErrorCode::kUnknownLabel,
                "UnknownLabel: '" + std::string(label) + "' appears in no context");
  }
  return witnessed;
}

bool classify_deterministic(const PossibilityContext& ctx) {
  const EigenBranch& realized = branch_or_throw(ctx.source, ctx.realized_label);
  return realized.born_probability() >= 1.0 - ctx.tol.zero;
}

bool classify_absurd(const PossibilityContext& ctx, std::string_view label) {
  const EigenBranch& branch = branch_or_throw(ctx.source, label);
  return branch.born_probability() <= ctx.tol.zero;
}

const char* grade_name(Grade grade) {
  switch (grade) {
    case Grade::kMorePossible: return "MorePossible";
    case Grade::kSameGrade: return "SameGrade";
    case Grade::kLessPossible: return "LessPossible";
  }
  return "Grade";
}

Grade more_possible(const PossibilityContext& ctx, std::string_view a, std::string_view b) {
  const EigenBranch& branch_a = branch_or_throw(ctx.source, a);
  const EigenBranch& branch_b = branch_or_throw(ctx.source, b);
  if (branch_a.label == ctx.realized_label || branch_b.label == ctx.realized_label) {
    throw Error(ErrorCode::kRealizedOperand,
                "RealizedOperand: grading is defined on non-realized branches only");
  }
  const double pa = branch_a.born_probability();
  const double pb = branch_b.born_probability();
  if (std::abs(pa - pb) <= ctx.tol.grade) {
    return Grade::kSameGrade;
  }
  return pa > pb ? Grade::kMorePossible : Grade::kLessPossible;
}

GradeOrdering grade_ordering(const PossibilityContext& ctx) {
  // Collect (probability, canonical index) for non-realized, non-absurd
  // branches; stable sort keeps branch order within equal probabilities.
  std::vector<std::pair<double, std::size_t>> entries;
  for (std::size_t i = 0; i < ctx.source.branches.size(); ++i) {
    const EigenBranch& branch = ctx.source.branches[i];
    if (branch.label == ctx.realized_label) {
      continue;
    }
    if (branch.born_probability() <= ctx.tol.zero) {
      continue;
    }
    entries.emplace_back(branch.born_probability(), i);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });

  GradeOrdering ordering;
  ordering.realized_label = ctx.realized_label;
  for (const auto& [probability, index] : entries) {
    const std::string& label = ctx.source.branches[index].label;
    if (!ordering.classes.empty() &&
        std::abs(ordering.classes.back().probability - probability) <= ctx.tol.grade) {
      ordering.classes.back().labels.push_back(label);
    } else {
      ordering.classes.push_back(GradeClass{probability, {label}});
    }
  }
  return ordering;
}

OrderingBounds bounds(const GradeOrdering& ordering) {
  if (ordering.classes.empty()) {
    throw Error(ErrorCode::kEmptyOrdering,
                "EmptyOrdering: no possible branch to bound (deterministic context)");
  }
  return OrderingBounds{ordering.classes.back().labels, ordering.classes.front().labels};
}

AxiomReport check_relation_axioms(std::span<const PossibilityContext> contexts) {
  // Union relation over all contexts: (x, y) with y realized, x possible.
  std::set<std::pair<std::string, std::string>> relation;
  for (const auto& ctx : contexts) {
    for (const auto& branch : ctx.source.branches) {
      if (branch.label != ctx.realized_label && branch.born_probability() > ctx.tol.zero) {
        relation.emplace(branch.label, ctx.realized_label);
      }
    }
  }

  AxiomReport report;
  for (const auto& [x, y] : relation) {
    if (x == y) {
      report.irreflexive = false;
      report.irreflexivity_counterexamples.push_back({x, y});
    }
    if (x != y && relation.count({y, x}) > 0) {
      report.asymmetric = false;
      report.asymmetry_counterexamples.push_back({x, y});
    }
  }
  for (const auto& [x, y] : relation) {
    for (const auto& [y2, z] : relation) {
      if (y != y2) {
        continue;
      }
      if (relation.count({x, z}) == 0) {
        report.transitive = false;
        report.transitivity_counterexamples.push_back({x, y, z});
      }
    }
  }
  return report;
}

}  // namespace branchlab
