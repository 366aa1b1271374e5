#include <doctest.h>

#include <string>

#include "branchlab/errors.hpp"
#include "branchlab/runner.hpp"

using namespace branchlab;

namespace {

const char* kChainScenario =
    "state coin { heads: 0.7071067811865476 @ 1; tails: 0.7071067811865476 @ -1 }\n"
    "state spin { up: 0.6324555320336759 @ 1; down: 0.7745966692414834 @ -1 }\n"
    "measure m1 on coin seed 11\n"
    "measure m2 on spin seed 12\n"
    "family both = [coin, spin]\n"
    "query q1 = pos atom(up)\n"
    "query q2 = nec atom(up)\n"
    "verify coin\n"
    "grade m1\n"
    "axioms\n";

}  // namespace

TEST_CASE("a run produces one record per step and one outcome per query") {
  const auto parsed = parse_scenario(kChainScenario);
  const auto report = run_scenario(parsed, RunOptions{"chain", std::nullopt, {}});
  CHECK(report.scenario_name == "chain");
  REQUIRE(report.records.size() == 2);
  CHECK(report.records[0].measurement_id == "m1");
  CHECK(report.records[0].seed_used == 11);
  REQUIRE(report.queries.size() == 5);
  CHECK(report.queries[0].query.key() == "q1");
  CHECK(report.queries[2].query.key() == "verify:coin");
  CHECK(report.queries[3].query.key() == "grade:m1");
  CHECK(report.queries[4].query.key() == "axioms");
}

TEST_CASE("the second step attaches at the realized vertex by default") {
  const auto parsed = parse_scenario(kChainScenario);
  const auto report = run_scenario(parsed);
  // Root + 2 coin branches + 2 spin branches.
  CHECK(report.graph.vertices.size() == 5);
  const VertexId realized{"m1", report.records[0].realized_label};
  const int parent_index = report.graph.find(realized);
  REQUIRE(parent_index >= 0);
  int children = 0;
  for (const auto& edge : report.graph.edges) {
    children += edge.from == parent_index ? 1 : 0;
  }
  CHECK(children == 2);
}

TEST_CASE("reports serialize deterministically") {
  const auto parsed = parse_scenario(kChainScenario);
  const std::string a = report_to_json(run_scenario(parsed)).dump(2);
  const std::string b = report_to_json(run_scenario(parsed)).dump(2);
  CHECK(a == b);
  const std::string table_a = report_to_table(run_scenario(parsed));
  const std::string table_b = report_to_table(run_scenario(parsed));
  CHECK(table_a == table_b);
}

TEST_CASE("report json carries the schema version and query kinds") {
  const auto parsed = parse_scenario(kChainScenario);
  const auto doc = report_to_json(run_scenario(parsed));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["steps"].size() == 2);
  CHECK(doc["steps"][0]["measurement_id"] == "m1");
  CHECK(doc["queries"][0]["kind"] == "formula");
  CHECK(doc["queries"][2]["kind"] == "verify");
  CHECK(doc["queries"][3]["kind"] == "grade");
  CHECK(doc["queries"][4]["kind"] == "axioms");
  CHECK(doc["queries"][0]["result"]["formula"] == "pos atom(up)");
  CHECK(doc["queries"][0]["result"]["value"] == true);
  CHECK(doc["queries"][1]["result"]["value"] == false);
}

TEST_CASE("seed overrides replace step seeds in script order") {
  const auto parsed = parse_scenario(kChainScenario);
  const auto report = run_scenario(parsed, RunOptions{"chain", 1234, {}});
  REQUIRE(report.records.size() == 2);
  CHECK(report.records[0].seed_used == 1234);
  CHECK(report.records[1].seed_used == 1235);
  // Identical override, identical bytes.
  const auto again = run_scenario(parsed, RunOptions{"chain", 1234, {}});
  CHECK(report_to_json(report).dump() == report_to_json(again).dump());
}

TEST_CASE("forcing an absurd branch surfaces as a runtime error") {
  const std::string text =
      "state w { a: 1 @ 0; dead: 0 @ 1 }\n"
      "measure m1 on w force dead\n";
  const auto parsed = parse_scenario(text);
  try {
    (void)run_scenario(parsed);
    FAIL("expected ZeroProbabilityOutcome");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::kZeroProbabilityOutcome);
  }
}

TEST_CASE("forcing a branch reports every other label possible with grades") {
  const std::string text =
      "state w { phi1: 0.31622776601683794 @ 1; phi2: 0.3872983346207417 @ 2;"
      " phi3: 0.5477225575051661 @ 3; phi4: 0.5 @ 4; phi5: 0.4472135954999579 @ 5 }\n"
      "measure m1 on w force phi3\n"
      "grade m1\n";
  const auto parsed = parse_scenario(text);
  const auto report = run_scenario(parsed);
  REQUIRE(report.records.size() == 1);
  CHECK(report.records[0].realized_label == "phi3");
  CHECK(report.records[0].possible_labels ==
        std::vector<std::string>{"phi1", "phi2", "phi4", "phi5"});

  const auto& grade = report.queries[0].result;
  REQUIRE(grade["classes"].size() == 4);
  CHECK(grade["classes"][0]["labels"][0] == "phi4");
  CHECK(grade["classes"][1]["labels"][0] == "phi5");
  CHECK(grade["classes"][2]["labels"][0] == "phi2");
  CHECK(grade["classes"][3]["labels"][0] == "phi1");
  CHECK(grade["bounds"]["upper"][0] == "phi4");
  CHECK(grade["bounds"]["lower"][0] == "phi1");
}

TEST_CASE("warnings travel with the parsed scenario into the report") {
  const auto parsed = parse_scenario("state w { a: 2 @ 0 }\nmeasure m1 on w seed 5\n");
  REQUIRE(parsed.warnings.size() == 1);
  const auto report = run_scenario(parsed);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report_to_json(report)["warnings"][0] == parsed.warnings[0]);
}
