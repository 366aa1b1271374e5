#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchlab/algebra.hpp"
#include "branchlab/branch_graph.hpp"
#include "branchlab/collapse.hpp"
#include "branchlab/errors.hpp"
#include "branchlab/json_io.hpp"
#include "branchlab/modal.hpp"
#include "branchlab/possibility.hpp"
#include "branchlab/runner.hpp"
#include "branchlab/scenario.hpp"
#include "branchlab/state.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const branchlab::OrderedJson& value) {
  using value_t = branchlab::OrderedJson::value_t;
  switch (value.type()) {
    case value_t::null:
      return py::none();
    case value_t::boolean:
      return py::bool_(value.get<bool>());
    case value_t::number_integer:
      return py::int_(value.get<long long>());
    case value_t::number_unsigned:
      return py::int_(value.get<unsigned long long>());
    case value_t::number_float:
      return py::float_(value.get<double>());
    case value_t::string:
      return py::str(value.get<std::string>());
    case value_t::array: {
      py::list list;
      for (const auto& element : value) {
        list.append(json_to_py(element));
      }
      return list;
    }
    case value_t::object: {
      py::dict dict;
      for (const auto& [key, element] : value.items()) {
        dict[py::str(key)] = json_to_py(element);
      }
      return dict;
    }
    default:
      return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace branchlab;

  m.doc() = "Collapse simulation, possibility grading and modal checks over "
            "finite superpositions";

  py::register_exception<Error>(m, "BranchlabError");

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def(py::init([](double norm, double zero, double grade) {
             return Tolerances{norm, zero, grade};
           }),
           py::arg("norm") = 1e-9, py::arg("zero") = 1e-12, py::arg("grade") = 1e-9)
      .def_readwrite("norm", &Tolerances::norm)
      .def_readwrite("zero", &Tolerances::zero)
      .def_readwrite("grade", &Tolerances::grade);

  py::class_<Amplitude>(m, "Amplitude")
      .def(py::init([](double re, double im) { return Amplitude{re, im}; }),
           py::arg("re"), py::arg("im") = 0.0)
      .def_readwrite("re", &Amplitude::re)
      .def_readwrite("im", &Amplitude::im)
      .def("norm_squared", &Amplitude::norm_squared);

  py::class_<EigenBranch>(m, "EigenBranch")
      .def(py::init([](std::string label, const Amplitude& amplitude, double eigenvalue) {
             return EigenBranch{std::move(label), amplitude, eigenvalue};
           }),
           py::arg("label"), py::arg("amplitude"), py::arg("eigenvalue") = 0.0)
      .def_readwrite("label", &EigenBranch::label)
      .def_readwrite("amplitude", &EigenBranch::amplitude)
      .def_readwrite("eigenvalue", &EigenBranch::eigenvalue)
      .def("born_probability", &EigenBranch::born_probability);

  py::class_<WaveFunction>(m, "WaveFunction")
      .def(py::init([](std::string name, std::vector<EigenBranch> branches) {
             return WaveFunction{std::move(name), std::move(branches)};
           }),
           py::arg("observable_name"), py::arg("branches"))
      .def_readwrite("observable_name", &WaveFunction::observable_name)
      .def_readwrite("branches", &WaveFunction::branches)
      .def("probability_sum", &WaveFunction::probability_sum);

  m.def("born_probability", &born_probability, py::arg("branch"));
  m.def(
      "validate",
      [](const WaveFunction& wf, const Tolerances& tol) {
        std::vector<std::string> messages;
        for (const auto& violation : validate(wf, tol)) {
          messages.push_back(violation.message());
        }
        return messages;
      },
      py::arg("wf"), py::arg("tol") = Tolerances{});
  m.def("normalize", &normalize, py::arg("wf"), py::arg("tol") = Tolerances{});

  py::class_<CollapseRecord>(m, "CollapseRecord")
      .def_readonly("measurement_id", &CollapseRecord::measurement_id)
      .def_readonly("observable_name", &CollapseRecord::observable_name)
      .def_readonly("realized_label", &CollapseRecord::realized_label)
      .def_readonly("realized_eigenvalue", &CollapseRecord::realized_eigenvalue)
      .def_readonly("realized_probability", &CollapseRecord::realized_probability)
      .def_readonly("possible_labels", &CollapseRecord::possible_labels)
      .def_readonly("absurd_labels", &CollapseRecord::absurd_labels)
      .def_readonly("seed_used", &CollapseRecord::seed_used)
      .def_readonly("source", &CollapseRecord::source)
      .def("to_dict",
           [](const CollapseRecord& record) { return json_to_py(collapse_record_to_json(record)); })
      .def("to_json_text",
           [](const CollapseRecord& record) { return collapse_record_to_json(record).dump(2); });

  m.def("collapse_random", &collapse_random, py::arg("wf"), py::arg("seed"),
        py::arg("measurement_id") = "m", py::arg("tol") = Tolerances{});
  m.def("collapse_forced", &collapse_forced, py::arg("wf"), py::arg("label"),
        py::arg("measurement_id") = "m", py::arg("tol") = Tolerances{});

  py::class_<PossibilityContext>(m, "PossibilityContext")
      .def_readonly("source", &PossibilityContext::source)
      .def_readonly("realized_label", &PossibilityContext::realized_label);

  m.def("make_context",
        py::overload_cast<WaveFunction, std::string_view, const Tolerances&>(&make_context),
        py::arg("source"), py::arg("realized_label"), py::arg("tol") = Tolerances{});
  m.def("make_context",
        py::overload_cast<const CollapseRecord&, const Tolerances&>(&make_context),
        py::arg("record"), py::arg("tol") = Tolerances{});

  m.def("is_possible_for", &is_possible_for, py::arg("ctx"), py::arg("label"));
  m.def(
      "is_possible_tout_court",
      [](const std::vector<PossibilityContext>& universe, std::string_view label) {
        return is_possible_tout_court(universe, label);
      },
      py::arg("universe"), py::arg("label"));
  m.def("classify_deterministic", &classify_deterministic, py::arg("ctx"));
  m.def("classify_absurd", &classify_absurd, py::arg("ctx"), py::arg("label"));

  py::enum_<Grade>(m, "Grade")
      .value("MORE_POSSIBLE", Grade::kMorePossible)
      .value("SAME_GRADE", Grade::kSameGrade)
      .value("LESS_POSSIBLE", Grade::kLessPossible);

  m.def("more_possible", &more_possible, py::arg("ctx"), py::arg("a"), py::arg("b"));

  py::class_<GradeClass>(m, "GradeClass")
      .def_readonly("probability", &GradeClass::probability)
      .def_readonly("labels", &GradeClass::labels);

  py::class_<GradeOrdering>(m, "GradeOrdering")
      .def_readonly("realized_label", &GradeOrdering::realized_label)
      .def_readonly("classes", &GradeOrdering::classes)
      .def("to_dict",
           [](const GradeOrdering& ordering) { return json_to_py(grade_ordering_to_json(ordering)); });

  m.def("grade_ordering", &grade_ordering, py::arg("ctx"));

  py::class_<OrderingBounds>(m, "OrderingBounds")
      .def_readonly("lower", &OrderingBounds::lower)
      .def_readonly("upper", &OrderingBounds::upper);

  m.def("bounds", &bounds, py::arg("ordering"));

  py::class_<AxiomReport>(m, "AxiomReport")
      .def_readonly("irreflexive", &AxiomReport::irreflexive)
      .def_readonly("asymmetric", &AxiomReport::asymmetric)
      .def_readonly("transitive", &AxiomReport::transitive)
      .def("all_hold", &AxiomReport::all_hold)
      .def("to_dict",
           [](const AxiomReport& report) { return json_to_py(axiom_report_to_json(report)); });

  m.def(
      "check_relation_axioms",
      [](const std::vector<PossibilityContext>& contexts) {
        return check_relation_axioms(contexts);
      },
      py::arg("contexts"));

  py::class_<ContextFamily>(m, "ContextFamily")
      .def(py::init([](std::string name, std::vector<WaveFunction> members) {
             return ContextFamily{std::move(name), std::move(members)};
           }),
           py::arg("name"), py::arg("members"))
      .def_readwrite("name", &ContextFamily::name)
      .def_readwrite("members", &ContextFamily::members);

  m.def("is_impossible", &is_impossible, py::arg("family"), py::arg("label"),
        py::arg("tol") = Tolerances{});
  m.def("is_necessary", &is_necessary, py::arg("family"), py::arg("label"),
        py::arg("tol") = Tolerances{});

  py::class_<ModalFormula>(m, "ModalFormula")
      .def_static("atom", &ModalFormula::atom, py::arg("label"))
      .def_static("negation", &ModalFormula::negation, py::arg("f"))
      .def_static("possibly", &ModalFormula::possibly, py::arg("f"))
      .def_static("necessarily", &ModalFormula::necessarily, py::arg("f"))
      .def_static("deterministic", &ModalFormula::deterministic, py::arg("label"))
      .def_static("absurd", &ModalFormula::absurd, py::arg("label"))
      .def("depth", &ModalFormula::depth)
      .def("__eq__", [](const ModalFormula& a, const ModalFormula& b) { return a == b; })
      .def("__str__", [](const ModalFormula& f) { return format_formula(f); });

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("value", &EvalResult::value)
      .def_readonly("witnesses", &EvalResult::witnesses);

  m.def("eval_formula", &eval_formula, py::arg("family"), py::arg("formula"),
        py::arg("tol") = Tolerances{});
  m.def("parse_formula", &parse_formula, py::arg("text"));
  m.def("format_formula", &format_formula, py::arg("formula"));

  py::class_<VertexId>(m, "VertexId")
      .def(py::init([](std::string measurement_id, std::string label) {
             return VertexId{std::move(measurement_id), std::move(label)};
           }),
           py::arg("measurement_id"), py::arg("label"))
      .def_readwrite("measurement_id", &VertexId::measurement_id)
      .def_readwrite("label", &VertexId::label)
      .def("text", &VertexId::text);

  py::class_<BranchGraph>(m, "BranchGraph")
      .def(py::init<>())
      .def("empty", &BranchGraph::empty)
      .def_property_readonly("vertex_count",
                             [](const BranchGraph& graph) { return graph.vertices.size(); })
      .def_property_readonly("edge_count",
                             [](const BranchGraph& graph) { return graph.edges.size(); });

  m.def("extend", &extend, py::arg("graph"), py::arg("record"),
        py::arg("attach_at") = std::nullopt);
  m.def("compose", &compose, py::arg("r"), py::arg("s"));
  m.def("distance", &distance, py::arg("graph"), py::arg("from_vertex"),
        py::arg("to_vertex"));
  m.def("transitive_possibility", &transitive_possibility, py::arg("graph"),
        py::arg("from_vertex"), py::arg("to_vertex"), py::arg("tol") = Tolerances{});
  m.def("to_edge_list_json", &to_edge_list_json, py::arg("graph"));
  m.def("to_dot", &to_dot, py::arg("graph"));

  py::class_<ProbabilitySet>(m, "ProbabilitySet")
      .def_static("from_wavefunction", &ProbabilitySet::from_wavefunction, py::arg("wf"),
                  py::arg("tol") = Tolerances{})
      .def_static("from_values", &ProbabilitySet::from_values, py::arg("values"),
                  py::arg("tol") = Tolerances{})
      .def_readonly("values", &ProbabilitySet::values)
      .def_readonly("carrier", &ProbabilitySet::carrier);

  py::class_<AlgebraReport>(m, "AlgebraReport")
      .def("to_list",
           [](const AlgebraReport& report) { return json_to_py(algebra_report_to_json(report)); });

  m.def("verify", &verify, py::arg("probability_set"), py::arg("tol") = Tolerances{},
        py::arg("carrier_cap") = 64);

  py::class_<MeasureStep>(m, "MeasureStep")
      .def_readonly("id", &MeasureStep::id)
      .def_readonly("state_name", &MeasureStep::state_name)
      .def_readonly("seed", &MeasureStep::seed)
      .def_readonly("force_label", &MeasureStep::force_label);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("states", &Scenario::states)
      .def_readonly("script", &Scenario::script)
      .def_readonly("families", &Scenario::families)
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  py::class_<ParsedScenario>(m, "ParsedScenario")
      .def_readonly("scenario", &ParsedScenario::scenario)
      .def_readonly("warnings", &ParsedScenario::warnings);

  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("tol") = Tolerances{});
  m.def("round_trip", &round_trip, py::arg("scenario"));

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("scenario_name", &RunReport::scenario_name)
      .def_readonly("records", &RunReport::records)
      .def_readonly("warnings", &RunReport::warnings)
      .def_property_readonly("graph", [](const RunReport& report) { return report.graph; })
      .def("to_dict", [](const RunReport& report) { return json_to_py(report_to_json(report)); })
      .def("to_json_text",
           [](const RunReport& report) { return report_to_json(report).dump(2) + "\n"; })
      .def("to_table", [](const RunReport& report) { return report_to_table(report); });

  m.def(
      "run_scenario",
      [](const ParsedScenario& parsed, const std::string& name,
         std::optional<std::uint64_t> seed_override, const Tolerances& tol) {
        RunOptions options;
        options.scenario_name = name;
        options.seed_override = seed_override;
        options.tol = tol;
        return run_scenario(parsed, options);
      },
      py::arg("parsed"), py::arg("name") = "scenario",
      py::arg("seed_override") = std::nullopt, py::arg("tol") = Tolerances{});
}
