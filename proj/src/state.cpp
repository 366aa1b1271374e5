#include "branchlab/state.hpp"

#include <cmath>
#include <unordered_set>

#include "branchlab/errors.hpp"

namespace branchlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroState: return "ZeroState";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::kRealizedOperand: return "RealizedOperand";
    case ErrorCode::kEmptyOrdering: return "EmptyOrdering";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kCycleAttempt: return "CycleAttempt";
    case ErrorCode::kUnknownAtomLabel: return "UnknownAtomLabel";
    case ErrorCode::kUnknownState: return "UnknownState";
    case ErrorCode::kUnknownMeasurement: return "UnknownMeasurement";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kResolve: return "ResolveError";
    case ErrorCode::kDepthExceeded: return "DepthExceeded";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Error";
}

bool Amplitude::is_finite() const {
  return std::isfinite(re) && std::isfinite(im);
}

const EigenBranch* WaveFunction::find(std::string_view label) const {
  for (const auto& branch : branches) {
    if (branch.label == label) {
      return &branch;
    }
  }
  return nullptr;
}

int WaveFunction::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (branches[i].label == label) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

double WaveFunction::probability_sum() const {
  // Kahan summation keeps the invariant check tight for large n.
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& branch : branches) {
    const double y = branch.born_probability() - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double born_probability(const EigenBranch& branch) {
  return branch.born_probability();
}

std::string Violation::message() const {
  switch (kind) {
    case ViolationKind::kEmpty:
      return "Empty: wavefunction has no branches";
    case ViolationKind::kDuplicateLabel:
      return "DuplicateLabel(" + label + ")";
    case ViolationKind::kNonFiniteAmplitude:
      return "NonFiniteAmplitude(" + label + ")";
    case ViolationKind::kNotNormalized:
      return "NotNormalized(" + std::to_string(value) + ")";
  }
  return "Violation";
}

std::vector<Violation> validate(const WaveFunction& wf, const Tolerances& tol) {
  std::vector<Violation> violations;
  if (wf.branches.empty()) {
    violations.push_back({ViolationKind::kEmpty, "", 0.0});
    return violations;
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& branch : wf.branches) {
    if (!seen.insert(branch.label).second) {
      violations.push_back({ViolationKind::kDuplicateLabel, branch.label, 0.0});
    }
    if (!branch.amplitude.is_finite()) {
      violations.push_back({ViolationKind::kNonFiniteAmplitude, branch.label, 0.0});
    }
  }
  const double sum = wf.probability_sum();
  if (!(std::abs(sum - 1.0) <= tol.norm)) {
    violations.push_back({ViolationKind::kNotNormalized, "", sum});
  }
  return violations;
}

WaveFunction normalize(const WaveFunction& wf, const Tolerances& tol) {
  const double sum = wf.probability_sum();
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kZeroState,
                "ZeroState: cannot normalize, all amplitudes are zero");
  }
  if (std::abs(sum - 1.0) <= tol.norm) {
    return wf;
  }
  const double scale = 1.0 / std::sqrt(sum);
  WaveFunction out = wf;
  for (auto& branch : out.branches) {
    branch.amplitude.re *= scale;
    branch.amplitude.im *= scale;
  }
  return out;
}

}  // namespace branchlab
