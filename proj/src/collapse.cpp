#include "branchlab/collapse.hpp"

#include <string>

#include "branchlab/errors.hpp"
#include "branchlab/rng.hpp"

namespace branchlab {

namespace {

CollapseRecord make_record(const WaveFunction& wf, int realized_index,
                           std::string_view measurement_id,
                           std::optional<std::uint64_t> seed_used,
                           const Tolerances& tol) {
  const EigenBranch& realized = wf.branches[static_cast<std::size_t>(realized_index)];
  CollapseRecord record;
  record.measurement_id = std::string(measurement_id);
  record.observable_name = wf.observable_name;
  record.realized_label = realized.label;
  record.realized_eigenvalue = realized.eigenvalue;
  record.realized_probability = realized.born_probability();
  for (std::size_t i = 0; i < wf.branches.size(); ++i) {
    if (static_cast<int>(i) == realized_index) {
      continue;
    }
    const EigenBranch& branch = wf.branches[i];
    if (branch.born_probability() > tol.zero) {
      record.possible_labels.push_back(branch.label);
    } else {
      record.absurd_labels.push_back(branch.label);
    }
  }
  record.seed_used = seed_used;
  record.source = wf;
  return record;
}

void require_valid(const WaveFunction& wf, const Tolerances& tol) {
  const auto violations = validate(wf, tol);
  if (!violations.empty()) {
    std::string detail = "InvalidState:";
    for (const auto& violation : violations) {
      detail += " " + violation.message();
    }
    throw Error(ErrorCode::kInvalidState, detail);
  }
}

}  // namespace

CollapseRecord collapse_random(const WaveFunction& wf, std::uint64_t seed,
                               std::string_view measurement_id, const Tolerances& tol) {
  require_valid(wf, tol);
  Xoshiro256PlusPlus rng(seed);
  const double u = rng.next_unit();

  // Inverse CDF over canonical branch order, skipping absurd branches.
  int realized_index = -1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < wf.branches.size(); ++i) {
    const double p = wf.branches[i].born_probability();
    if (p <= tol.zero) {
      continue;
    }
    cumulative += p;
    realized_index = static_cast<int>(i);
    if (u < cumulative) {
      break;
    }
  }
  // u past the accumulated mass (normalization slack) lands on the last
  // realizable branch. A validated state always has one.
  if (realized_index < 0) {
    throw Error(ErrorCode::kInvalidState,
                "InvalidState: no branch with probability above the zero cutoff");
  }
  return make_record(wf, realized_index, measurement_id, seed, tol);
}

CollapseRecord collapse_forced(const WaveFunction& wf, std::string_view label,
                               std::string_view measurement_id, const Tolerances& tol) {
  require_valid(wf, tol);
  const int index = wf.index_of(label);
  if (index < 0) {
    throw Error(ErrorCode::kUnknownLabel,
                "UnknownLabel: no branch '" + std::string(label) + "' in state '" +
                    wf.observable_name + "'");
  }
  const double p = wf.branches[static_cast<std::size_t>(index)].born_probability();
  if (p <= tol.zero) {
    throw Error(ErrorCode::kZeroProbabilityOutcome,
                "ZeroProbabilityOutcome: branch '" + std::string(label) +
                    "' is absurd and cannot be realized");
  }
  return make_record(wf, index, measurement_id, std::nullopt, tol);
}

}  // namespace branchlab
