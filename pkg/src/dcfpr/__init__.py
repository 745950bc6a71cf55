"""Decision engine for consistent fuzzy preference relations over D numbers.

Builds reciprocal preference matrices (classical or D-number valued) from
n-1 consecutive pairwise judgments, derives rankings, credibility-weighted
priority weights, weight intervals, and an inconsistency degree, and
exposes the pipeline through JSON documents, a CLI, and an HTTP service.
"""

from .dnumber import (
    CERTAIN_INDIFFERENCE,
    DEFAULT_TOLERANCE,
    Component,
    DNumber,
    MassTolerance,
    NotReducible,
    chain_subtract,
)
from .relations import (
    DPreferenceMatrix,
    FuzzyPreferenceRelation,
    Problem,
    ValidationReport,
    Violation,
    build_cfpr,
    build_dcfpr,
    raw_dcfpr,
    reduce,
    shift_parameter,
    verify,
)
from .solver import (
    EXACT_SIZE_LIMIT,
    PRESET_LAMBDAS,
    IMatrix,
    LambdaTooSmall,
    ProbabilityMatrix,
    Ranking,
    SizeLimit,
    SolutionBundle,
    WeightInterval,
    WeightSolution,
    completed_i_matrix,
    i_matrix,
    inconsistency_degree,
    probability_matrix,
    solve,
    solve_weights,
    triangulate,
    triangular_view,
    weight_intervals,
)
from .documents import (
    Diagnostic,
    ParseError,
    SchemaError,
    emit_report,
    parse_problem,
    problem_document,
    solution_document,
)

__version__ = "0.1.0"

__all__ = [
    "CERTAIN_INDIFFERENCE",
    "DEFAULT_TOLERANCE",
    "EXACT_SIZE_LIMIT",
    "PRESET_LAMBDAS",
    "Component",
    "DNumber",
    "DPreferenceMatrix",
    "Diagnostic",
    "FuzzyPreferenceRelation",
    "IMatrix",
    "LambdaTooSmall",
    "MassTolerance",
    "NotReducible",
    "ParseError",
    "ProbabilityMatrix",
    "Problem",
    "Ranking",
    "SchemaError",
    "SizeLimit",
    "SolutionBundle",
    "ValidationReport",
    "Violation",
    "WeightInterval",
    "WeightSolution",
    "build_cfpr",
    "build_dcfpr",
    "chain_subtract",
    "completed_i_matrix",
    "emit_report",
    "i_matrix",
    "inconsistency_degree",
    "parse_problem",
    "probability_matrix",
    "problem_document",
    "raw_dcfpr",
    "reduce",
    "shift_parameter",
    "solution_document",
    "solve",
    "solve_weights",
    "triangulate",
    "triangular_view",
    "verify",
    "weight_intervals",
]
