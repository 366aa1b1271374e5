#include "branchlab/runner.hpp"

#include <utility>

#include "branchlab/algebra.hpp"
#include "branchlab/errors.hpp"
#include "branchlab/format.hpp"
#include "branchlab/possibility.hpp"

namespace branchlab {

namespace {

OrderedJson grade_query_result(const PossibilityContext& ctx) {
  const GradeOrdering ordering = grade_ordering(ctx);
  OrderedJson doc = grade_ordering_to_json(ordering);
  if (!ordering.classes.empty()) {
    const OrderingBounds ordering_bounds = bounds(ordering);
    doc["bounds"] =
        OrderedJson{{"lower", ordering_bounds.lower}, {"upper", ordering_bounds.upper}};
  }
  return doc;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i == 0 ? "" : ", ") + items[i];
  }
  return out;
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
  RunReport report;
  report.scenario_name = options.scenario_name;

  std::vector<PossibilityContext> contexts;
  std::size_t step_index = 0;
  for (const auto& step : scenario.script) {
    const WaveFunction* state = scenario.find_state(step.state_name);
    if (state == nullptr) {
      throw Error(ErrorCode::kUnknownState, "UnknownState: '" + step.state_name + "'");
    }

    CollapseRecord record;
    if (step.force_label.has_value()) {
      record = collapse_forced(*state, *step.force_label, step.id, options.tol);
    } else {
      std::uint64_t seed = step.seed.value_or(0);
      if (options.seed_override.has_value()) {
        seed = *options.seed_override + static_cast<std::uint64_t>(step_index);
      }
      record = collapse_random(*state, seed, step.id, options.tol);
    }

    std::optional<VertexId> attach = step.attach_at;
    if (!report.graph.empty() && !attach.has_value()) {
      // Default: continue from the previous step's realized vertex.
      const CollapseRecord& previous = report.records.back();
      attach = VertexId{previous.measurement_id, previous.realized_label};
    }
    report.graph = extend(report.graph, record, attach);

    contexts.push_back(make_context(record, options.tol));
    report.records.push_back(std::move(record));
    ++step_index;
  }

  for (const auto& query : scenario.queries) {
    QueryOutcome outcome{query, OrderedJson()};
    switch (query.kind) {
      case Query::Kind::kFormula: {
        const ContextFamily family = scenario.default_family();
        const EvalResult result = eval_formula(family, *query.formula, options.tol);
        outcome.result = eval_result_to_json(format_formula(*query.formula), result);
        break;
      }
      case Query::Kind::kVerify: {
        const WaveFunction* state = scenario.find_state(query.target);
        if (state == nullptr) {
          throw Error(ErrorCode::kUnknownState, "UnknownState: '" + query.target + "'");
        }
        const auto ps = ProbabilitySet::from_wavefunction(*state, options.tol);
        outcome.result = algebra_report_to_json(verify(ps, options.tol));
        break;
      }
      case Query::Kind::kGrade: {
        const PossibilityContext* ctx = nullptr;
        for (std::size_t i = 0; i < scenario.script.size(); ++i) {
          if (scenario.script[i].id == query.target) {
            ctx = &contexts[i];
            break;
          }
        }
        if (ctx == nullptr) {
          throw Error(ErrorCode::kUnknownMeasurement,
                      "UnknownMeasurement: '" + query.target + "'");
        }
        outcome.result = grade_query_result(*ctx);
        break;
      }
      case Query::Kind::kAxioms: {
        outcome.result = axiom_report_to_json(check_relation_axioms(contexts));
        break;
      }
    }
    report.queries.push_back(std::move(outcome));
  }
  return report;
}

RunReport run_scenario(const ParsedScenario& parsed, const RunOptions& options) {
  RunReport report = run_scenario(parsed.scenario, options);
  report.warnings = parsed.warnings;
  return report;
}

OrderedJson report_to_json(const RunReport& report) {
  OrderedJson doc;
  doc["schema_version"] = 1;
  doc["scenario"] = report.scenario_name;
  doc["steps"] = OrderedJson::array();
  for (const auto& record : report.records) {
    doc["steps"].push_back(collapse_record_to_json(record));
  }
  doc["queries"] = OrderedJson::array();
  for (const auto& outcome : report.queries) {
    OrderedJson entry;
    entry["name"] = outcome.query.key();
    switch (outcome.query.kind) {
      case Query::Kind::kFormula: entry["kind"] = "formula"; break;
      case Query::Kind::kVerify: entry["kind"] = "verify"; break;
      case Query::Kind::kGrade: entry["kind"] = "grade"; break;
      case Query::Kind::kAxioms: entry["kind"] = "axioms"; break;
    }
    entry["result"] = outcome.result;
    doc["queries"].push_back(entry);
  }
  doc["warnings"] = report.warnings;
  return doc;
}

std::string report_to_table(const RunReport& report) {
  std::string out;
  out += "scenario: " + report.scenario_name + "\n";
  for (const auto& record : report.records) {
    out += "step " + record.measurement_id + ": on " + record.observable_name +
           " realized " + record.realized_label + " (eigenvalue " +
           format_double(record.realized_eigenvalue) + ", probability " +
           format_double(record.realized_probability) + ")";
    if (record.seed_used.has_value()) {
      out += " seed " + std::to_string(*record.seed_used);
    } else {
      out += " forced";
    }
    out += "\n";
    out += "  possible: [" + join(record.possible_labels) + "]\n";
    out += "  absurd:   [" + join(record.absurd_labels) + "]\n";
  }
  for (const auto& outcome : report.queries) {
    switch (outcome.query.kind) {
      case Query::Kind::kFormula: {
        out += "query " + outcome.query.name + ": " +
               outcome.result["formula"].get<std::string>() + " = " +
               (outcome.result["value"].get<bool>() ? "true" : "false");
        const auto& witnesses = outcome.result["witnesses"];
        if (!witnesses.empty()) {
          out += " (witnesses:";
          for (const auto& witness : witnesses) {
            out += " " + witness.get<std::string>();
          }
          out += ")";
        }
        out += "\n";
        break;
      }
      case Query::Kind::kVerify: {
        out += "verify " + outcome.query.target + ":\n";
        for (const auto& claim : outcome.result) {
          out += "  " + claim["claim"].get<std::string>() + ": " +
                 claim["verdict"].get<std::string>();
          if (claim.contains("counterexample")) {
            out += "(" + format_double(claim["counterexample"].get<double>()) + ")";
          }
          if (claim.contains("detail")) {
            out += " -- " + claim["detail"].get<std::string>();
          }
          out += "\n";
        }
        break;
      }
      case Query::Kind::kGrade: {
        out += "grade " + outcome.query.target + ": realized " +
               outcome.result["realized_label"].get<std::string>() + "\n";
        int rank = 1;
        for (const auto& grade_class : outcome.result["classes"]) {
          out += "  " + std::to_string(rank++) + ". p=" +
                 format_double(grade_class["probability"].get<double>()) + " [";
          bool first = true;
          for (const auto& label : grade_class["labels"]) {
            out += (first ? "" : ", ") + label.get<std::string>();
            first = false;
          }
          out += "]\n";
        }
        break;
      }
      case Query::Kind::kAxioms: {
        out += "axioms:\n";
        for (const auto& [key, value] : outcome.result.items()) {
          out += "  " + key + " (" + value["label"].get<std::string>() + "): " +
                 (value["holds"].get<bool>() ? "holds" : "fails") + " (" +
                 std::to_string(value["counterexamples"].size()) + " counterexamples)\n";
        }
        break;
      }
    }
  }
  for (const auto& warning : report.warnings) {
    out += "warning: " + warning + "\n";
  }
  return out;
}

}  // namespace branchlab
