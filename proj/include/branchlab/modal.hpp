#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/state.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// The declared domain of the modal quantifiers. "Every context" is modeled
// as this explicit, finite family of wavefunctions.
struct ContextFamily {
  std::string name;
  std::vector<WaveFunction> members;

  friend bool operator==(const ContextFamily&, const ContextFamily&) = default;
};

// True iff the label is absent or absurd in every family member.
[[nodiscard]] bool is_impossible(const ContextFamily& family, std::string_view label,
                                 const Tolerances& tol = {});

// True iff the label carries probability >= 1 - tol.zero in every member.
[[nodiscard]] bool is_necessary(const ContextFamily& family, std::string_view label,
                                const Tolerances& tol = {});

// Immutable formula AST. Nodes share children, so copies are cheap.
class ModalFormula {
 public:
  enum class Kind {
    kAtom,
    kNot,
    kPossibly,
    kNecessarily,
    kDet,
    kAbs,
  };

  static ModalFormula atom(std::string label);
  static ModalFormula negation(ModalFormula f);
  static ModalFormula possibly(ModalFormula f);
  static ModalFormula necessarily(ModalFormula f);
  static ModalFormula deterministic(std::string label);
  static ModalFormula absurd(std::string label);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const ModalFormula& child() const { return *child_; }
  [[nodiscard]] int depth() const;

  bool operator==(const ModalFormula& other) const;

 private:
  ModalFormula(Kind kind, std::string label, std::shared_ptr<const ModalFormula> child)
      : kind_(kind), label_(std::move(label)), child_(std::move(child)) {}

  Kind kind_;
  std::string label_;                           // kAtom / kDet / kAbs
  std::shared_ptr<const ModalFormula> child_;   // kNot / kPossibly / kNecessarily
};

struct EvalResult {
  bool value = false;
  // Family members (by observable name) witnessing the verdict: witnesses of
  // an existential, or counterexample members of a failed universal.
  std::vector<std::string> witnesses;
};

// Two-valued evaluation against the family.
//   atom(l)   — l is realizable (probability > tol.zero) in at least one member
//   not f     — classical negation
//   pos f     — f holds at some member, atoms and det/abs read locally there
//   nec f     — evaluated literally as not pos not f
//   det(l)/abs(l) — read on the designated member (the first) at top level
// Throws Error(kUnknownAtomLabel) when a label is outside the family
// vocabulary.
[[nodiscard]] EvalResult eval_formula(const ContextFamily& family, const ModalFormula& f,
                                      const Tolerances& tol = {});

}  // namespace branchlab
