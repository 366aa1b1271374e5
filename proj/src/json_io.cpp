#include "branchlab/json_io.hpp"

namespace branchlab {

OrderedJson collapse_record_to_json(const CollapseRecord& record) {
  OrderedJson doc;
  doc["measurement_id"] = record.measurement_id;
  doc["observable_name"] = record.observable_name;
  doc["realized_label"] = record.realized_label;
  doc["realized_eigenvalue"] = record.realized_eigenvalue;
  doc["realized_probability"] = record.realized_probability;
  doc["possible_labels"] = record.possible_labels;
  if (record.seed_used.has_value()) {
    doc["seed_used"] = *record.seed_used;
  }
  doc["absurd_labels"] = record.absurd_labels;
  return doc;
}

OrderedJson grade_ordering_to_json(const GradeOrdering& ordering) {
  OrderedJson doc;
  doc["realized_label"] = ordering.realized_label;
  doc["classes"] = OrderedJson::array();
  for (const auto& grade_class : ordering.classes) {
    OrderedJson entry;
    entry["probability"] = grade_class.probability;
    entry["labels"] = grade_class.labels;
    doc["classes"].push_back(entry);
  }
  return doc;
}

namespace {

OrderedJson pairs_to_json(const std::vector<AxiomReport::Pair>& pairs) {
  OrderedJson array = OrderedJson::array();
  for (const auto& pair : pairs) {
    array.push_back(OrderedJson{{"x", pair.x}, {"y", pair.y}});
  }
  return array;
}

}  // namespace

OrderedJson axiom_report_to_json(const AxiomReport& report) {
  // Fields are named after the formulas; "label" carries the traditional
  // display name each axiom is listed under.
  OrderedJson doc;
  doc["irreflexivity"] = OrderedJson{
      {"label", "Anti-Simmetry"},
      {"holds", report.irreflexive},
      {"counterexamples", pairs_to_json(report.irreflexivity_counterexamples)}};
  doc["asymmetry"] = OrderedJson{
      {"label", "Not Reflexivity"},
      {"holds", report.asymmetric},
      {"counterexamples", pairs_to_json(report.asymmetry_counterexamples)}};
  OrderedJson triples = OrderedJson::array();
  for (const auto& triple : report.transitivity_counterexamples) {
    triples.push_back(OrderedJson{{"x", triple.x}, {"y", triple.y}, {"z", triple.z}});
  }
  doc["transitivity"] = OrderedJson{
      {"label", "Transitivity"}, {"holds", report.transitive}, {"counterexamples", triples}};
  return doc;
}

OrderedJson algebra_report_to_json(const AlgebraReport& report) {
  OrderedJson array = OrderedJson::array();
  for (const ClaimResult* claim : report.claims()) {
    OrderedJson entry;
    entry["claim"] = claim->claim;
    entry["verdict"] = verdict_name(claim->verdict);
    if (claim->counterexample.has_value()) {
      entry["counterexample"] = *claim->counterexample;
    }
    if (!claim->detail.empty()) {
      entry["detail"] = claim->detail;
    }
    array.push_back(entry);
  }
  return array;
}

OrderedJson eval_result_to_json(const std::string& formula_text, const EvalResult& result) {
  OrderedJson doc;
  doc["formula"] = formula_text;
  doc["value"] = result.value;
  doc["witnesses"] = result.witnesses;
  return doc;
}

}  // namespace branchlab
