#include "branchlab/modal.hpp"

#include <algorithm>

#include "branchlab/errors.hpp"

namespace branchlab {

namespace {

// Probability of the label in one member; absent counts as zero.
double member_probability(const WaveFunction& member, std::string_view label) {
  const EigenBranch* branch = member.find(label);
  return branch == nullptr ? 0.0 : branch->born_probability();
}

void require_known_label(const ContextFamily& family, const std::string& label) {
  for (const auto& member : family.members) {
    if (member.find(label) != nullptr) {
      return;
    }
  }
  throw Error(ErrorCode::kUnknownAtomLabel,
              "UnknownAtomLabel: '" + label + "' is not in the vocabulary of family '" +
                  family.name + "'");
}

void require_known_labels(const ContextFamily& family, const ModalFormula& f) {
  switch (f.kind()) {
    case ModalFormula::Kind::kAtom:
    case ModalFormula::Kind::kDet:
    case ModalFormula::Kind::kAbs:
      require_known_label(family, f.label());
      return;
    case ModalFormula::Kind::kNot:
    case ModalFormula::Kind::kPossibly:
    case ModalFormula::Kind::kNecessarily:
      require_known_labels(family, f.child());
      return;
  }
}

// Truth of f at one member. Modal operators quantify over the whole family,
// so they are member-independent; everything else reads locally.
bool holds_at(const ContextFamily& family, const WaveFunction& member,
              const ModalFormula& f, const Tolerances& tol) {
  switch (f.kind()) {
    case ModalFormula::Kind::kAtom:
      return member_probability(member, f.label()) > tol.zero;
    case ModalFormula::Kind::kNot:
      return !holds_at(family, member, f.child(), tol);
    case ModalFormula::Kind::kPossibly:
      return std::any_of(family.members.begin(), family.members.end(),
                         [&](const WaveFunction& other) {
                           return holds_at(family, other, f.child(), tol);
                         });
    case ModalFormula::Kind::kNecessarily:
      return holds_at(
          family, member,
          ModalFormula::negation(ModalFormula::possibly(ModalFormula::negation(f.child()))),
          tol);
    case ModalFormula::Kind::kDet:
      return member_probability(member, f.label()) >= 1.0 - tol.zero;
    case ModalFormula::Kind::kAbs:
      return member_probability(member, f.label()) <= tol.zero;
  }
  return false;
}

}  // namespace

bool is_impossible(const ContextFamily& family, std::string_view label,
                   const Tolerances& tol) {
  return std::all_of(family.members.begin(), family.members.end(),
                     [&](const WaveFunction& member) {
                       return member_probability(member, label) <= tol.zero;
                     });
}

bool is_necessary(const ContextFamily& family, std::string_view label,
                  const Tolerances& tol) {
  if (family.members.empty()) {
    return false;
  }
  return std::all_of(family.members.begin(), family.members.end(),
                     [&](const WaveFunction& member) {
                       return member_probability(member, label) >= 1.0 - tol.zero;
                     });
}

ModalFormula ModalFormula::atom(std::string label) {
  return ModalFormula(Kind::kAtom, std::move(label), nullptr);
}

ModalFormula ModalFormula::negation(ModalFormula f) {
  return ModalFormula(Kind::kNot, "", std::make_shared<const ModalFormula>(std::move(f)));
}

ModalFormula ModalFormula::possibly(ModalFormula f) {
  return ModalFormula(Kind::kPossibly, "", std::make_shared<const ModalFormula>(std::move(f)));
}

ModalFormula ModalFormula::necessarily(ModalFormula f) {
  return ModalFormula(Kind::kNecessarily, "",
                      std::make_shared<const ModalFormula>(std::move(f)));
}

ModalFormula ModalFormula::deterministic(std::string label) {
  return ModalFormula(Kind::kDet, std::move(label), nullptr);
}

ModalFormula ModalFormula::absurd(std::string label) {
  return ModalFormula(Kind::kAbs, std::move(label), nullptr);
}

int ModalFormula::depth() const {
  return child_ == nullptr ? 1 : 1 + child_->depth();
}

bool ModalFormula::operator==(const ModalFormula& other) const {
  if (kind_ != other.kind_ || label_ != other.label_) {
    return false;
  }
  if ((child_ == nullptr) != (other.child_ == nullptr)) {
    return false;
  }
  return child_ == nullptr || *child_ == *other.child_;
}

EvalResult eval_formula(const ContextFamily& family, const ModalFormula& f,
                        const Tolerances& tol) {
  require_known_labels(family, f);

  EvalResult result;
  switch (f.kind()) {
    case ModalFormula::Kind::kAtom: {
      for (const auto& member : family.members) {
        if (member_probability(member, f.label()) > tol.zero) {
          result.witnesses.push_back(member.observable_name);
        }
      }
      result.value = !result.witnesses.empty();
      return result;
    }
    case ModalFormula::Kind::kNot: {
      result.value = !eval_formula(family, f.child(), tol).value;
      return result;
    }
    case ModalFormula::Kind::kPossibly: {
      for (const auto& member : family.members) {
        if (holds_at(family, member, f.child(), tol)) {
          result.witnesses.push_back(member.observable_name);
        }
      }
      result.value = !result.witnesses.empty();
      return result;
    }
    case ModalFormula::Kind::kNecessarily: {
      // Literal expansion: nec f == not pos not f.
      const ModalFormula expansion =
          ModalFormula::negation(ModalFormula::possibly(ModalFormula::negation(f.child())));
      result.value = eval_formula(family, expansion, tol).value;
      if (!result.value) {
        for (const auto& member : family.members) {
          if (!holds_at(family, member, f.child(), tol)) {
            result.witnesses.push_back(member.observable_name);
          }
        }
      }
      return result;
    }
    case ModalFormula::Kind::kDet:
    case ModalFormula::Kind::kAbs: {
      if (family.members.empty()) {
        result.value = false;
        return result;
      }
      const WaveFunction& designated = family.members.front();
      result.value = holds_at(family, designated, f, tol);
      if (result.value) {
        result.witnesses.push_back(designated.observable_name);
      }
      return result;
    }
  }
  return result;
}

}  // namespace branchlab
