#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/state.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// One measurement event. realized, possible and absurd labels partition
// the labels of the source wavefunction.
struct CollapseRecord {
  std::string measurement_id;
  std::string observable_name;
  std::string realized_label;
  double realized_eigenvalue = 0.0;
  double realized_probability = 0.0;
  std::vector<std::string> possible_labels;  // non-realized, probability > tol.zero
  std::vector<std::string> absurd_labels;    // probability <= tol.zero
  std::optional<std::uint64_t> seed_used;
  // The measured state, kept so the record can seed a branch graph layer.
  WaveFunction source;
};

// Draws the realized branch by inverse CDF over the canonical branch order,
// using xoshiro256++ seeded via splitmix64. Deterministic per (wf, seed).
// Branches at or below tol.zero are never realized.
// Throws Error(kInvalidState) when validate(wf) is non-empty.
[[nodiscard]] CollapseRecord collapse_random(const WaveFunction& wf, std::uint64_t seed,
                                             std::string_view measurement_id = "m",
                                             const Tolerances& tol = {});

// Forces the named outcome. Throws Error(kUnknownLabel) for a missing label
// and Error(kZeroProbabilityOutcome) when the branch is absurd.
[[nodiscard]] CollapseRecord collapse_forced(const WaveFunction& wf, std::string_view label,
                                             std::string_view measurement_id = "m",
                                             const Tolerances& tol = {});

}  // namespace branchlab
