#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/branch_graph.hpp"
#include "branchlab/modal.hpp"
#include "branchlab/state.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// One `measure` statement. Exactly one of seed/force_label is set.
struct MeasureStep {
  std::string id;
  std::string state_name;
  // Attach point in the branch graph; absent means the root for the first
  // step and the previous step's realized vertex afterwards.
  std::optional<VertexId> attach_at;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> force_label;

  friend bool operator==(const MeasureStep&, const MeasureStep&) = default;
};

struct Query {
  enum class Kind {
    kFormula,  // query <name> = <formula>
    kVerify,   // verify <state>
    kGrade,    // grade <measurement>
    kAxioms,   // axioms
  };

  Kind kind = Kind::kFormula;
  std::string name;                     // formula queries only
  std::optional<ModalFormula> formula;  // formula queries only
  std::string target;                   // verify: state name, grade: measurement id

  // Key used for this query in reports.
  [[nodiscard]] std::string key() const;

  friend bool operator==(const Query&, const Query&) = default;
};

// Executable encoding of one experiment: declared states, a measurement
// script, context families and queries. Canonical statement order is
// states, measures, families, queries; names must be declared before use.
struct Scenario {
  std::vector<WaveFunction> states;  // normalized; observable_name is the state name
  std::vector<MeasureStep> script;
  std::vector<ContextFamily> families;
  std::vector<Query> queries;

  [[nodiscard]] const WaveFunction* find_state(std::string_view name) const;
  [[nodiscard]] const MeasureStep* find_step(std::string_view id) const;
  // The family modal queries evaluate against: the first declared family,
  // or an implicit family of every declared state when none is declared.
  [[nodiscard]] ContextFamily default_family() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ParsedScenario {
  Scenario scenario;
  // Auto-normalization notes and similar non-fatal diagnostics.
  std::vector<std::string> warnings;
};

// Parses the scenario text. Throws ParseError (with line/column inside the
// offending token), ResolveError for dangling names, and
// Error(kDepthExceeded) past 256 nesting levels.
[[nodiscard]] ParsedScenario parse_scenario(std::string_view text,
                                            const Tolerances& tol = {});

// Canonical reprint: LF line endings, one statement per line, amplitudes
// printed post-normalization. parse(round_trip(s)) is structurally equal
// to s.
[[nodiscard]] std::string round_trip(const Scenario& scenario);

// Formula sub-language, exposed for bindings and tests.
[[nodiscard]] ModalFormula parse_formula(std::string_view text);
[[nodiscard]] std::string format_formula(const ModalFormula& formula);

}  // namespace branchlab
