#pragma once

namespace branchlab {

// Experiment knobs. Overridable via CLI flags or a key=value config file.
struct Tolerances {
  // Allowed deviation of the squared-amplitude sum from 1.
  double norm = 1e-9;
  // Probabilities at or below this count as zero (absurd branches).
  double zero = 1e-12;
  // Width of a same-grade class when comparing probabilities.
  double grade = 1e-9;
};

}  // namespace branchlab
