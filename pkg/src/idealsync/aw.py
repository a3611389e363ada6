"""The prefix automaton ``A_w``: minimal acceptor of ``w^-1 Sigma* w``.

State ``i`` is the prefix ``w[:i]``; reading ``a`` moves to the longest
suffix of ``w[:i] a`` that is a prefix of ``w``.  Initial and only final
state is ``|w|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import (
    Acceptor,
    Semiautomaton,
    all_words,
    image,
    is_isomorphic,
    is_strongly_connected,
    minimize,
    run,
)
from .errors import PreconditionError
from .languages import Language, left_principal, left_quotient, longest_word, universal
from .synchro import is_finitely_generated, minimal_reset_words, resets, shortest_reset
from .words import prefix_table, suffix_prefix_match


def build_aw(w, alphabet) -> Acceptor:
    alphabet = tuple(alphabet)
    w = tuple(w)
    if not w:
        raise PreconditionError("w must be non-empty")
    for s in w:
        if s not in alphabet:
            raise ValueError(f"symbol {s!r} not in alphabet")
    n = len(w)
    return Acceptor(Semiautomaton(alphabet, prefix_table(w, alphabet)), n, {n})


def aw_language(w, alphabet) -> Language:
    """``w^-1 Sigma* w``; the empty word gives ``Sigma*``."""
    if not tuple(w):
        return universal(alphabet)
    return left_quotient(left_principal(w, alphabet), w)


@dataclass
class AwReport:
    w: tuple[str, ...]
    checks: dict[str, bool] = field(default_factory=dict)
    threshold: int | None = None
    longest_minimal_reset: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


def verify_aw(w, alphabet) -> AwReport:
    w = tuple(w)
    A = build_aw(w, alphabet)
    n = len(w)
    report = AwReport(w)
    c = report.checks
    c["state_count"] = A.n_states == n + 1
    c["minimal"] = is_isomorphic(minimize(A), A)
    c["strongly_connected"] = is_strongly_connected(A)
    c["w_resets_to_full_prefix"] = image(A, A.states, w) == frozenset([n])
    c["all_length_w_words_reset"] = all(resets(A, u) for u in all_words(alphabet, n, n))
    # past length |w| the landing state is u ^s w, whatever the start
    c["state_independent_landing"] = all(
        run(A, i, u) == len(suffix_prefix_match(u, w))
        for u in all_words(alphabet, n, n)
        for i in A.states
    )
    syn_min = minimal_reset_words(A)
    c["finitely_generated"] = is_finitely_generated(A)
    longest = longest_word(syn_min)
    report.longest_minimal_reset = longest
    c["minimal_reset_words_short"] = longest is not None and longest <= n
    report.threshold = shortest_reset(A).threshold
    return report
