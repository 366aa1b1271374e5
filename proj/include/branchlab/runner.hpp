#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchlab/branch_graph.hpp"
#include "branchlab/collapse.hpp"
#include "branchlab/json_io.hpp"
#include "branchlab/scenario.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

struct RunOptions {
  std::string scenario_name = "scenario";
  // Replaces the seed of seeded steps with value, value + 1, ... in script
  // order. Forced steps are unaffected.
  std::optional<std::uint64_t> seed_override;
  Tolerances tol{};
};

struct QueryOutcome {
  Query query;
  OrderedJson result;
};

// Everything one execution produced. Deterministic for a fixed scenario and
// fixed seeds: serializing twice yields identical bytes.
struct RunReport {
  std::string scenario_name;
  std::vector<CollapseRecord> records;  // one per script step, in order
  std::vector<QueryOutcome> queries;    // in declaration order
  BranchGraph graph;
  std::vector<std::string> warnings;
};

// Executes the script in order, growing the branch graph layer by layer,
// then evaluates the queries. Throws branchlab::Error on runtime failures
// (e.g. forcing an absurd branch).
[[nodiscard]] RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});
[[nodiscard]] RunReport run_scenario(const ParsedScenario& parsed,
                                     const RunOptions& options = {});

[[nodiscard]] OrderedJson report_to_json(const RunReport& report);
[[nodiscard]] std::string report_to_table(const RunReport& report);

}  // namespace branchlab
