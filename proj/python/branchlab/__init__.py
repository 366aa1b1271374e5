"""Collapse simulation, possibility grading and modal checks over finite
superpositions.

The heavy lifting lives in the C++ extension module ``branchlab._core``;
this package re-exports its public surface.
"""

from branchlab._core import (  # noqa: F401
    AlgebraReport,
    Amplitude,
    AxiomReport,
    BranchGraph,
    BranchlabError,
    CollapseRecord,
    ContextFamily,
    EigenBranch,
    EvalResult,
    Grade,
    GradeClass,
    GradeOrdering,
    MeasureStep,
    ModalFormula,
    OrderingBounds,
    ParsedScenario,
    PossibilityContext,
    ProbabilitySet,
    RunReport,
    Scenario,
    Tolerances,
    VertexId,
    WaveFunction,
    born_probability,
    bounds,
    check_relation_axioms,
    classify_absurd,
    classify_deterministic,
    collapse_forced,
    collapse_random,
    compose,
    distance,
    eval_formula,
    extend,
    format_formula,
    grade_ordering,
    is_impossible,
    is_necessary,
    is_possible_for,
    is_possible_tout_court,
    make_context,
    more_possible,
    normalize,
    parse_formula,
    parse_scenario,
    round_trip,
    run_scenario,
    to_dot,
    to_edge_list_json,
    transitive_possibility,
    validate,
    verify,
)

__version__ = "0.1.0"
