"""Ambiguity analysis and disambiguation for nondeterministic Büchi automata.

The package decides how ambiguous a Büchi automaton is (finite with an
exact degree, polynomially or exponentially growing, countably or
uncountably infinite on a single word), translates arbitrary automata into
finitely ambiguous ones, and ships an independent brute-force oracle on
ultimately periodic words that cross-checks every result at desk scale.
"""

__version__ = "0.1.0"

from .core import (
    LassoWord,
    Nba,
    PathWitness,
    Scc,
    enumerate_paths,
    is_trim,
    reachable_states,
    sccs,
    trim_nba,
)
from .degree import (
    BoundedMatrix,
    DegreeResult,
    decide_degree_exceeds,
    exact_degree,
    letter_matrices,
    omega_closure_hash,
)
from .disambiguation import (
    PairState,
    SplitTree,
    build_split_tree,
    check_run_tree_correspondence,
    disambiguate,
    initial_pair,
    pair_successors,
)
from .errors import (
    AmbigError,
    DepthExceededError,
    EmptyLanguageError,
    ExceedsMaxError,
    HashSymbolClashError,
    LengthExceededError,
    NotShiftableError,
    NotTrimError,
    ParseError,
    PreconditionViolatedError,
    SearchSpaceExceededError,
    UnknownSymbolError,
)
from .fileformat import (
    format_lasso,
    format_symbols,
    parse_automaton,
    parse_lasso,
    parse_symbols,
    serialize_automaton,
)
from .oracle import (
    Cardinality,
    LassoGraph,
    LassoSweeper,
    RunCardinality,
    count_runs,
    count_runs_nfa,
    iter_lassos,
    lasso_equiv_sample,
    lasso_member,
    random_nba,
)
from .patterns import (
    AmbiguityClass,
    AmbiguityTag,
    PatternKind,
    PatternWitness,
    classify,
    compute_dpa,
    find_eda,
    find_ida,
    shift_pattern,
)

__all__ = [
    "AmbigError",
    "AmbiguityClass",
    "AmbiguityTag",
    "BoundedMatrix",
    "Cardinality",
    "DegreeResult",
    "DepthExceededError",
    "EmptyLanguageError",
    "ExceedsMaxError",
    "HashSymbolClashError",
    "LassoGraph",
    "LassoSweeper",
    "LassoWord",
    "LengthExceededError",
    "Nba",
    "NotShiftableError",
    "NotTrimError",
    "PairState",
    "ParseError",
    "PathWitness",
    "PatternKind",
    "PatternWitness",
    "PreconditionViolatedError",
    "RunCardinality",
    "Scc",
    "SearchSpaceExceededError",
    "SplitTree",
    "UnknownSymbolError",
    "build_split_tree",
    "check_run_tree_correspondence",
    "classify",
    "compute_dpa",
    "count_runs",
    "count_runs_nfa",
    "decide_degree_exceeds",
    "disambiguate",
    "enumerate_paths",
    "exact_degree",
    "find_eda",
    "find_ida",
    "format_lasso",
    "format_symbols",
    "initial_pair",
    "is_trim",
    "iter_lassos",
    "lasso_equiv_sample",
    "lasso_member",
    "letter_matrices",
    "omega_closure_hash",
    "parse_automaton",
    "parse_lasso",
    "parse_symbols",
    "random_nba",
    "reachable_states",
    "sccs",
    "serialize_automaton",
    "shift_pattern",
    "trim_nba",
]
