#pragma once

#include <json.hpp>

#include "branchlab/algebra.hpp"
#include "branchlab/collapse.hpp"
#include "branchlab/modal.hpp"
#include "branchlab/possibility.hpp"

namespace branchlab {

using OrderedJson = nlohmann::ordered_json;

// Field order is part of the output contract; everything below uses
// insertion-ordered JSON.

// measurement_id, observable_name, realized_label, realized_eigenvalue,
// realized_probability, possible_labels, [seed_used], absurd_labels.
[[nodiscard]] OrderedJson collapse_record_to_json(const CollapseRecord& record);

[[nodiscard]] OrderedJson grade_ordering_to_json(const GradeOrdering& ordering);

[[nodiscard]] OrderedJson axiom_report_to_json(const AxiomReport& report);

[[nodiscard]] OrderedJson algebra_report_to_json(const AlgebraReport& report);

[[nodiscard]] OrderedJson eval_result_to_json(const std::string& formula_text,
                                              const EvalResult& result);

}  // namespace branchlab
