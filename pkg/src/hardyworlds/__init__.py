"""Possible-world and counterfactual analysis of Hardy-type two-qubit
experiments.

The package builds two-region, two-setting, two-outcome quantum experiments
whose statistics contain exact zeros, enumerates the possible worlds those
statistics admit, and model-checks counterfactual statements about changed
experiment choices under configurable locality policies.
"""

from .analysis import (
    ComparisonReport,
    DeterministicStrategy,
    DivergenceExample,
    FeasibilityReport,
    FlowReport,
    FormulaCatalog,
    SuiteReport,
    catalog,
    frame_comparison,
    information_flow,
    lhv_feasibility,
    theorem_suite,
)
from .errors import (
    CounterfactualAntecedentError,
    DomainError,
    EntailmentNestingError,
    FormulaError,
    FormulaSyntaxError,
    HardyWorldsError,
    InconsistentModelError,
    InvalidModelError,
    UnknownWorldError,
)
from .formulas import (
    And,
    Counterfactual,
    Entails,
    Formula,
    Implies,
    Not,
    Or,
    OutcomeAtom,
    SettingAtom,
    parse,
    pretty_print,
)
from .labels import FrameOrdering, Outcome, Region, Setting
from .modelio import dump_model, load_model, parse_model, save_model
from .quantum import (
    BipartiteState,
    ExperimentConfig,
    HardyConstraintReport,
    JointProbabilityTable,
    MeasurementBasis,
    canonical_hardy_model,
    hardy_family,
    hardy_scan,
    joint_probability,
    probability_table,
    verify_hardy_constraints,
)
from .semantics import (
    AccessibleSet,
    CounterfactualTruth,
    LocalityCondition,
    TruthReport,
    VacuousFlag,
    accessible_worlds,
    eval_counterfactual,
    eval_model,
    eval_world,
    worlds_satisfying,
)
from .worlds import World, WorldModel, enumerate_worlds

__version__ = "0.1.0"

__all__ = [
    "AccessibleSet",
    "And",
    "BipartiteState",
    "ComparisonReport",
    "Counterfactual",
    "CounterfactualAntecedentError",
    "CounterfactualTruth",
    "DeterministicStrategy",
    "DivergenceExample",
    "DomainError",
    "Entails",
    "EntailmentNestingError",
    "ExperimentConfig",
    "FeasibilityReport",
    "FlowReport",
    "Formula",
    "FormulaCatalog",
    "FormulaError",
    "FormulaSyntaxError",
    "FrameOrdering",
    "HardyConstraintReport",
    "HardyWorldsError",
    "Implies",
    "InconsistentModelError",
    "InvalidModelError",
    "JointProbabilityTable",
    "LocalityCondition",
    "MeasurementBasis",
    "Not",
    "Or",
    "Outcome",
    "OutcomeAtom",
    "Region",
    "Setting",
    "SettingAtom",
    "SuiteReport",
    "TruthReport",
    "UnknownWorldError",
    "VacuousFlag",
    "World",
    "WorldModel",
    "accessible_worlds",
    "canonical_hardy_model",
    "catalog",
    "dump_model",
    "enumerate_worlds",
    "eval_counterfactual",
    "eval_model",
    "eval_world",
    "frame_comparison",
    "hardy_family",
    "hardy_scan",
    "information_flow",
    "joint_probability",
    "lhv_feasibility",
    "load_model",
    "parse",
    "parse_model",
    "pretty_print",
    "probability_table",
    "save_model",
    "theorem_suite",
    "verify_hardy_constraints",
    "worlds_satisfying",
]
