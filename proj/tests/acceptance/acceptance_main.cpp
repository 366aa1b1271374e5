// Acceptance checks, one printed line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "branchlab/algebra.hpp"
#include "branchlab/branch_graph.hpp"
#include "branchlab/collapse.hpp"
#include "branchlab/errors.hpp"
#include "branchlab/format.hpp"
#include "branchlab/modal.hpp"
#include "branchlab/possibility.hpp"
#include "branchlab/runner.hpp"
#include "branchlab/scenario.hpp"
#include "../support/scenario_gen.hpp"
#include "../support/testutil.hpp"

using namespace branchlab;

namespace {

struct Criterion {
  int number;
  const char* description;
  std::function<bool(std::string&)> run;
};

// 1. 100k seeded collapses over [0.5, 0.3, 0.2] reproduce the Born
//    frequencies within +-0.01 per branch, in under five seconds.
bool born_rule_frequency(std::string& detail) {
  const auto wf = testutil::state_from_probabilities("w", {0.5, 0.3, 0.2});
  const auto start = std::chrono::steady_clock::now();
  std::map<std::string, int> counts;
  constexpr int kDraws = 100000;
  for (int seed = 0; seed < kDraws; ++seed) {
    ++counts[collapse_random(wf, static_cast<std::uint64_t>(seed)).realized_label];
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::vector<double> expected = {0.5, 0.3, 0.2};
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double frequency = counts["b" + std::to_string(i)] / double(kDraws);
    worst = std::max(worst, std::abs(frequency - expected[i]));
  }
  detail = "max deviation " + format_double(worst) + ", " + format_double(elapsed) + "s";
  return worst < 0.01 && elapsed < 5.0;
}

// 2. Forcing the third branch of a five-branch state marks exactly the other
//    four labels possible, ordered by probability like a brute-force sort.
bool forced_branch_ordering(std::string& detail) {
  const auto wf = testutil::state_from_probabilities("w", {0.1, 0.15, 0.3, 0.25, 0.2});
  const auto record = collapse_forced(wf, "b2");
  if (record.possible_labels != std::vector<std::string>{"b0", "b1", "b3", "b4"}) {
    detail = "possible set mismatch";
    return false;
  }

  std::vector<std::pair<double, std::string>> oracle;
  for (const auto& branch : wf.branches) {
    if (branch.label != "b2") {
      oracle.emplace_back(branch.born_probability(), branch.label);
    }
  }
  std::sort(oracle.begin(), oracle.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<std::string> graded;
  for (const auto& grade_class : grade_ordering(make_context(record)).classes) {
    graded.insert(graded.end(), grade_class.labels.begin(), grade_class.labels.end());
  }
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (graded.at(i) != oracle[i].second) {
      detail = "order mismatch at rank " + std::to_string(i);
      return false;
    }
  }
  detail = "4 labels, descending";
  return true;
}

// 3. 1000 random contexts: irreflexivity and asymmetry with zero
//    counterexamples; grade transitivity by exhaustive triple enumeration.
bool relation_axioms(std::string& detail) {
  Xoshiro256PlusPlus rng(2024);
  int triples = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 11);  // up to 12
    const auto wf = testutil::random_grid_state(rng, n);
    const auto record = collapse_random(wf, rng.next());
    const auto ctx = make_context(record);

    const std::vector<PossibilityContext> single = {ctx};
    const auto report = check_relation_axioms(single);
    if (!report.irreflexive || !report.asymmetric) {
      detail = "axiom counterexample in trial " + std::to_string(trial);
      return false;
    }

    std::vector<std::string> graded;
    for (const auto& branch : wf.branches) {
      if (branch.label != ctx.realized_label && branch.born_probability() > 1e-12) {
        graded.push_back(branch.label);
      }
    }
    for (const auto& a : graded) {
      for (const auto& b : graded) {
        for (const auto& c : graded) {
          ++triples;
          const bool ab = more_possible(ctx, a, b) != Grade::kLessPossible;
          const bool bc = more_possible(ctx, b, c) != Grade::kLessPossible;
          const bool ac = more_possible(ctx, a, c) != Grade::kLessPossible;
          if (ab && bc && !ac) {
            detail = "grade transitivity broke on a triple";
            return false;
          }
        }
      }
    }
  }
  detail = std::to_string(triples) + " triples enumerated";
  return true;
}

// 4. A probability-1/2 branch grades strictly above a probability-1/3 branch.
bool grade_comparison(std::string& detail) {
  const WaveFunction wf{"w",
                        {{"r", {std::sqrt(1.0 / 6.0), 0.0}, 0.0},
                         {"half", {std::sqrt(0.5), 0.0}, 1.0},
                         {"third", {std::sqrt(1.0 / 3.0), 0.0}, 2.0}}};
  const auto ctx = make_context(wf, "r");
  detail = "1/2 vs 1/3";
  return more_possible(ctx, "half", "third") == Grade::kMorePossible &&
         more_possible(ctx, "third", "half") == Grade::kLessPossible;
}

// 5. Two-step distances compose multiplicatively; reachability matches a
//    brute-force closure on random trees up to 50 vertices.
bool graph_composition(std::string& detail) {
  const auto first = testutil::state_from_probabilities("w1", {0.5, 0.5});
  const auto second = testutil::state_from_probabilities("w2", {0.4, 0.6});
  auto graph = extend(BranchGraph{}, collapse_forced(first, "b0", "m1"));
  graph = extend(graph, collapse_forced(second, "b0", "m2"), VertexId{"m1", "b0"});
  const auto d = distance(graph, VertexId{"m1", "w1"}, VertexId{"m2", "b0"});
  if (!d.has_value() || testutil::ulp_distance(*d, 0.2) > 4) {
    detail = "two-step distance off";
    return false;
  }

  Xoshiro256PlusPlus rng(2025);
  for (int trial = 0; trial < 30; ++trial) {
    BranchGraph random_graph;
    int next_id = 1;
    while (random_graph.vertices.size() < 50) {
      const auto wf = testutil::random_grid_state(rng, 2 + static_cast<int>(rng.next() % 4));
      const auto record =
          collapse_random(wf, rng.next(), "m" + std::to_string(next_id++));
      if (random_graph.empty()) {
        random_graph = extend(random_graph, record);
      } else {
        const auto& attach = random_graph.vertices[static_cast<std::size_t>(
            rng.next() % random_graph.vertices.size())];
        random_graph = extend(random_graph, record, attach.id);
      }
    }
    const std::size_t n = random_graph.vertices.size();
    std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
    for (const auto& edge : random_graph.edges) {
      if (edge.weight > 1e-12) {
        closure[static_cast<std::size_t>(edge.from)][static_cast<std::size_t>(edge.to)] =
            true;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          closure[i][j] = closure[i][j] || (closure[i][k] && closure[k][j]);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (transitive_possibility(random_graph, random_graph.vertices[i].id,
                                   random_graph.vertices[j].id) != closure[i][j]) {
          detail = "closure mismatch in trial " + std::to_string(trial);
          return false;
        }
      }
    }
  }
  detail = "30 random trees, 50 vertices each";
  return true;
}

// 6. Necessity always equals its not-possibly-not expansion.
bool modal_duality(std::string& detail) {
  Xoshiro256PlusPlus rng(2026);
  testutil::ScenarioGenerator generator(2027);
  for (int trial = 0; trial < 200; ++trial) {
    ContextFamily family{"f", {}};
    const int member_count = 1 + static_cast<int>(rng.next() % 4);
    for (int i = 0; i < member_count; ++i) {
      auto member = testutil::random_grid_state(rng, 2 + static_cast<int>(rng.next() % 4));
      member.observable_name = "ctx" + std::to_string(i);
      family.members.push_back(std::move(member));
    }
    std::vector<std::string> labels;
    for (const auto& member : family.members) {
      for (const auto& branch : member.branches) {
        if (std::find(labels.begin(), labels.end(), branch.label) == labels.end()) {
          labels.push_back(branch.label);
        }
      }
    }
    const auto f = generator.random_formula(labels, 1 + rng.next() % 5);
    const bool boxed = eval_formula(family, ModalFormula::necessarily(f)).value;
    const bool dual =
        eval_formula(family, ModalFormula::negation(ModalFormula::possibly(
                                 ModalFormula::negation(f))))
            .value;
    if (boxed != dual) {
      detail = "duality broke on trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "200 family/formula pairs";
  return true;
}

// 7. Deterministic in one context, not necessary across the family.
bool deterministic_vs_necessary(std::string& detail) {
  WaveFunction rainy_day{"rainy_day", {{"rain", {1.0, 0.0}, 1.0}}};
  WaveFunction desert{"desert", {{"dry", {1.0, 0.0}, 0.0}}};
  const ContextFamily family{"weather", {rainy_day, desert}};
  detail = "rain: deterministic yet contingent";
  return classify_deterministic(make_context(rainy_day, "rain")) &&
         !is_necessary(family, "rain");
}

// 8. Algebra verdicts on the anchor carriers, with a replayable
//    counterexample.
bool algebra_verdicts(std::string& detail) {
  const auto boolean_report = verify(ProbabilitySet::from_values({0.0, 1.0}));
  for (const auto* claim : boolean_report.claims()) {
    if (claim->verdict != Verdict::kHolds) {
      detail = "claim '" + claim->claim + "' did not hold on {0, 1}";
      return false;
    }
  }

  const auto ps = ProbabilitySet::from_values({0.5, 0.3, 0.2});
  const auto report = verify(ps);
  if (report.orthocomplemented.verdict != Verdict::kFails ||
      !report.orthocomplemented.counterexample.has_value() ||
      std::abs(*report.orthocomplemented.counterexample - 0.3) > 1e-12) {
    detail = "expected orthocomplement failure at 0.3";
    return false;
  }
  const double complement = 1.0 - *report.orthocomplemented.counterexample;
  for (const double value : ps.carrier) {
    if (std::abs(value - complement) <= 1e-9) {
      detail = "counterexample did not re-violate the law";
      return false;
    }
  }
  detail = "{0,1} holds; {0.5,0.3,0.2} fails(0.3)";
  return true;
}

// 9. parse . print . parse is the identity on generated scenarios, and
//    parse errors point inside the offending token.
bool dsl_round_trip(std::string& detail) {
  testutil::ScenarioGenerator generator(2028);
  for (int trial = 0; trial < 1000; ++trial) {
    const Scenario scenario = generator.next();
    const std::string text = round_trip(scenario);
    try {
      const auto reparsed = parse_scenario(text);
      if (!(reparsed.scenario == scenario)) {
        detail = "round-trip mismatch on trial " + std::to_string(trial);
        return false;
      }
    } catch (const Error&) {
      detail = "round-trip parse failure on trial " + std::to_string(trial);
      return false;
    }
  }

  const std::vector<std::pair<std::string, std::string>> malformed = {
      {"state w { a: 1 @ }", "}"},
      {"stat w { a: 1 @ 0 }", "stat"},
      {"state w { a: 1e999 @ 0 }", "1e999"},
      {"state w { a: 1 @ 0 }\nmeasure m1 w seed 1", "w"},
      {"state w { a: 1 ! 0 }", "!"},
      {"state w { a: 1 @ 0 }\nquery q = atom(a", "<end>"},
  };
  for (const auto& [text, token] : malformed) {
    try {
      (void)parse_scenario(text);
      detail = "malformed input parsed: " + text;
      return false;
    } catch (const ParseError& error) {
      if (error.token() != token) {
        detail = "wrong token '" + error.token() + "' for: " + text;
        return false;
      }
      // The position must land inside the token's span on its line.
      int line = 1;
      int column = 1;
      bool inside = false;
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (line == error.line() && text.compare(i, token.size(), token) == 0) {
          inside = inside || (error.column() >= column &&
                              error.column() < column + static_cast<int>(token.size()));
        }
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      if (!inside && token != "<end>") {
        detail = "position outside token for: " + text;
        return false;
      }
    } catch (const Error&) {
      // Structured non-parse error also acceptable for the last case? No:
      // these inputs must raise ParseError specifically.
      detail = "expected ParseError for: " + text;
      return false;
    }
  }
  detail = "1000 scenarios + 6 malformed probes";
  return true;
}

// 10. Fixed seeds give byte-identical reports, run to run.
bool determinism(std::string& detail) {
  const char* text =
      "state coin { heads: 1 @ 1; tails: 1 @ -1 }\n"
      "state spin { up: 0.6 @ 1; down: 0.8 @ -1 }\n"
      "measure m1 on coin seed 7\n"
      "measure m2 on spin seed 8\n"
      "family f = [coin, spin]\n"
      "query q = nec not abs(up)\n"
      "verify coin\n"
      "grade m1\n"
      "axioms\n";
  const auto run_once = [&] {
    const auto parsed = parse_scenario(text);
    const auto report = run_scenario(parsed, RunOptions{"determinism", std::nullopt, {}});
    return report_to_json(report).dump(2) + "\n---\n" + report_to_table(report) + "---\n" +
           to_edge_list_json(report.graph) + to_dot(report.graph);
  };
  const std::string first = run_once();
  const std::string second = run_once();
  detail = std::to_string(first.size()) + " bytes compared";
  return first == second && !first.empty();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Born-rule frequencies within 0.01 over 100k seeded collapses", born_rule_frequency},
      {2, "forced branch marks the other four labels possible in sorted order",
       forced_branch_ordering},
      {3, "relation axioms hold on 1000 random contexts with exhaustive triples",
       relation_axioms},
      {4, "probability 1/2 grades strictly above 1/3", grade_comparison},
      {5, "graph distances compose and reachability matches brute force",
       graph_composition},
      {6, "necessity equals not-possibly-not on 200 generated cases", modal_duality},
      {7, "deterministic in one context is not necessary across the family",
       deterministic_vs_necessary},
      {8, "algebra verdicts on {0,1} and {0.5,0.3,0.2} with replayable counterexample",
       algebra_verdicts},
      {9, "DSL round-trip on 1000 generated scenarios; error positions in-token",
       dsl_round_trip},
      {10, "fixed seeds give byte-identical output", determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& error) {
      detail = std::string("exception: ") + error.what();
    }
    std::printf("[%s] %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.description, detail.c_str());
    failures += ok ? 0 : 1;
  }
  return failures;
}
