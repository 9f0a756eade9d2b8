"""Probabilistic weighted automata over infinite words.

Exact (rational-arithmetic) evaluation of quantitative languages on
ultimately periodic words under positive, almost-sure, nondeterministic
and universal semantics; closure constructions; decision procedures for
the decidable threshold problems; and statistical/enumerative oracles.
"""

from .construct import (
    AcceptanceKind,
    BooleanAutomaton,
    cobuchi_to_buchi_positive,
    initial_choice,
    limsup_sum,
    normalize_initial,
    support_of,
    synchronized_product,
    threshold_boolean,
    uniformized_support,
    weight_accepting_states,
)
from .core import (
    Alphabet,
    LassoWord,
    RunSegmentWeights,
    Semantics,
    SupportGraph,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
    negate_weights,
    periodic_value,
    rat,
    support_automaton,
    uniformize,
    validate,
)
from .decide import (
    ClassificationEntry,
    DecisionUnsupported,
    Problem,
    Status,
    classification_table,
    classify,
    closure_table,
    decide_disc,
    decide_sup,
    explain_sup,
    optimal_discounted_value,
)
from .docfmt import (
    AutomatonDocument,
    DocumentError,
    TransitionRecord,
    automaton_to_document,
    document_to_automaton,
    parse_document,
    parse_word_part,
    serialize_document,
)
from .markov import (
    ProductChain,
    RecurrentClass,
    ValueDistribution,
    absorption_probabilities,
    bottom_sccs,
    build_product,
    class_value,
    stationary_distribution,
)
from .oracle import (
    FIXTURE_NAMES,
    Fixture,
    SampleReport,
    enumerate_lassos,
    fixture,
    monte_carlo,
)
from .semantics import EvaluationRequest, evaluate, value_distribution

__all__ = [
    "AcceptanceKind",
    "Alphabet",
    "AutomatonDocument",
    "BooleanAutomaton",
    "ClassificationEntry",
    "DecisionUnsupported",
    "DocumentError",
    "EvaluationRequest",
    "FIXTURE_NAMES",
    "Fixture",
    "LassoWord",
    "Problem",
    "ProductChain",
    "RecurrentClass",
    "RunSegmentWeights",
    "SampleReport",
    "Semantics",
    "Status",
    "SupportGraph",
    "TransitionRecord",
    "ValueDistribution",
    "ValueFunction",
    "ValueKind",
    "WeightedAutomaton",
    "absorption_probabilities",
    "automaton_to_document",
    "bottom_sccs",
    "build_product",
    "class_value",
    "classification_table",
    "classify",
    "closure_table",
    "cobuchi_to_buchi_positive",
    "decide_disc",
    "decide_sup",
    "document_to_automaton",
    "enumerate_lassos",
    "evaluate",
    "explain_sup",
    "fixture",
    "initial_choice",
    "limsup_sum",
    "monte_carlo",
    "negate_weights",
    "normalize_initial",
    "optimal_discounted_value",
    "parse_document",
    "parse_word_part",
    "periodic_value",
    "rat",
    "serialize_document",
    "stationary_distribution",
    "support_automaton",
    "support_of",
    "synchronized_product",
    "threshold_boolean",
    "uniformize",
    "uniformized_support",
    "validate",
    "value_distribution",
    "weight_accepting_states",
]
