"""Synchronizing automata and ideal regular languages."""

__version__ = "0.1.0"

from .automata import (
    Acceptor,
    Partition,
    Semiautomaton,
    acceptor,
    all_words,
    check_homomorphism,
    congruences_from_root,
    enumerate_congruences,
    find_isomorphism,
    image,
    is_isomorphic,
    kernel,
    load_automaton,
    minimize,
    parse_automaton,
    quotient,
    run,
    semiautomaton,
    serialize_automaton,
    to_dot,
)
from .aw import aw_language, build_aw, verify_aw
from .constants import (
    constants_language,
    find_constant,
    find_sink,
    has_constant,
    has_constant_oracle,
    is_constant,
    partial_syn_language,
    prop5_check,
    prop6_check,
    z_nonempty,
)
from .decomp import (
    Decomposition,
    LiftResult,
    automaton_of_decomposition,
    cerny_probes,
    extract_decomposition,
    lift,
    verify_decomposition,
    verify_lift,
)
from .errors import (
    AlphabetMismatch,
    AutFormatError,
    AutomatonError,
    BudgetExceeded,
    PreconditionError,
    TheoremViolation,
)
from .kernels import BACKEND
from .languages import Language, ideal_kind, left_principal, principal_ideal
from .synchro import (
    cerny_automaton,
    is_finitely_generated,
    is_synchronizing,
    minimal_reset_words,
    rc_search,
    shortest_reset,
    syn_language,
    theorem4_witness,
)
from .syntactic import syntactic_complexity, transition_semigroup
from .words import suffix_prefix_match
