#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "branchlab/tolerances.hpp"

namespace branchlab {

struct Amplitude {
  double re = 0.0;
  double im = 0.0;

  [[nodiscard]] double norm_squared() const { return re * re + im * im; }
  [[nodiscard]] bool is_finite() const;

  friend bool operator==(const Amplitude&, const Amplitude&) = default;
};

struct EigenBranch {
  std::string label;
  Amplitude amplitude{};
  // Opaque real in the units of the observable; never compared across observables.
  double eigenvalue = 0.0;

  [[nodiscard]] double born_probability() const { return amplitude.norm_squared(); }

  friend bool operator==(const EigenBranch&, const EigenBranch&) = default;
};

// A finite superposition. Branch order is the canonical iteration order
// for every downstream operation, so outputs stay reproducible.
struct WaveFunction {
  std::string observable_name;
  std::vector<EigenBranch> branches;

  [[nodiscard]] const EigenBranch* find(std::string_view label) const;
  // -1 when the label is not a branch.
  [[nodiscard]] int index_of(std::string_view label) const;
  [[nodiscard]] double probability_sum() const;

  friend bool operator==(const WaveFunction&, const WaveFunction&) = default;
};

[[nodiscard]] double born_probability(const EigenBranch& branch);

enum class ViolationKind {
  kEmpty,
  kDuplicateLabel,
  kNonFiniteAmplitude,
  kNotNormalized,
};

struct Violation {
  ViolationKind kind;
  std::string label;   // offending branch label, when applicable
  double value = 0.0;  // offending magnitude (e.g. the probability sum)

  [[nodiscard]] std::string message() const;
};

// Empty result iff every invariant holds. Never throws.
[[nodiscard]] std::vector<Violation> validate(const WaveFunction& wf,
                                              const Tolerances& tol = {});

// Divides every amplitude by the root of the squared sum. States already
// normalized within tol.norm are returned unchanged, which makes the
// operation idempotent bit-for-bit. Throws Error(kZeroState) when all
// amplitudes vanish.
[[nodiscard]] WaveFunction normalize(const WaveFunction& wf, const Tolerances& tol = {});

}  // namespace branchlab
