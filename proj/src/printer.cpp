#include <string>

#include "branchlab/format.hpp"
#include "branchlab/scenario.hpp"

namespace branchlab {

namespace {

std::string format_amplitude(const Amplitude& amplitude) {
  std::string out = format_double(amplitude.re);
  if (amplitude.im != 0.0) {
    if (amplitude.im < 0.0) {
      out += "-" + format_double(-amplitude.im) + "i";
    } else {
      out += "+" + format_double(amplitude.im) + "i";
    }
  }
  return out;
}

void append_formula(const ModalFormula& formula, std::string& out) {
  switch (formula.kind()) {
    case ModalFormula::Kind::kAtom:
      out += "atom(" + formula.label() + ")";
      return;
    case ModalFormula::Kind::kNot:
      out += "not ";
      append_formula(formula.child(), out);
      return;
    case ModalFormula::Kind::kPossibly:
      out += "pos ";
      append_formula(formula.child(), out);
      return;
    case ModalFormula::Kind::kNecessarily:
      out += "nec ";
      append_formula(formula.child(), out);
      return;
    case ModalFormula::Kind::kDet:
      out += "det(" + formula.label() + ")";
      return;
    case ModalFormula::Kind::kAbs:
      out += "abs(" + formula.label() + ")";
      return;
  }
}

}  // namespace

std::string format_formula(const ModalFormula& formula) {
  // Prefix operators nest unambiguously, so the canonical form is paren-free.
  std::string out;
  append_formula(formula, out);
  return out;
}

std::string round_trip(const Scenario& scenario) {
  std::string out;
  for (const auto& state : scenario.states) {
    out += "state " + state.observable_name + " { ";
    for (std::size_t i = 0; i < state.branches.size(); ++i) {
      const auto& branch = state.branches[i];
      if (i > 0) {
        out += "; ";
      }
      out += branch.label + ": " + format_amplitude(branch.amplitude) + " @ " +
             format_double(branch.eigenvalue);
    }
    out += " }\n";
  }
  for (const auto& step : scenario.script) {
    out += "measure " + step.id + " on " + step.state_name;
    if (step.attach_at.has_value()) {
      out += " at " + step.attach_at->measurement_id + ":" + step.attach_at->label;
    }
    if (step.seed.has_value()) {
      out += " seed " + std::to_string(*step.seed);
    } else if (step.force_label.has_value()) {
      out += " force " + *step.force_label;
    }
    out += "\n";
  }
  for (const auto& family : scenario.families) {
    out += "family " + family.name + " = [";
    for (std::size_t i = 0; i < family.members.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += family.members[i].observable_name;
    }
    out += "]\n";
  }
  for (const auto& query : scenario.queries) {
    switch (query.kind) {
      case Query::Kind::kFormula:
        out += "query " + query.name + " = " + format_formula(*query.formula) + "\n";
        break;
      case Query::Kind::kVerify:
        out += "verify " + query.target + "\n";
        break;
      case Query::Kind::kGrade:
        out += "grade " + query.target + "\n";
        break;
      case Query::Kind::kAxioms:
        out += "axioms\n";
        break;
    }
  }
  return out;
}

}  // namespace branchlab
