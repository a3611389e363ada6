"""Transition semigroups and the closed-form syntactic complexity of
``w^-1 Sigma* w``."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import Acceptor, minimize
from .aw import build_aw
from .errors import BudgetExceeded, PreconditionError
from .synchro import resets

DEFAULT_SEMIGROUP_CAP = 10**6

Transformation = tuple[int, ...]


def transition_semigroup(A: Acceptor, cap: int = DEFAULT_SEMIGROUP_CAP, minimal: bool = True) -> dict[Transformation, tuple[str, ...]]:
    """Transformations realized by non-empty words, each with its shortest
    (then alphabet-least) witness.

    Computed on the minimal acceptor unless ``minimal`` is False, in which
    case the transition semigroup of ``A`` itself is returned.
    """
    if minimal:
        A = minimize(A)
    delta = A.delta
    n = A.n_states
    letters = [tuple(delta[q][a] for q in range(n)) for a in range(len(A.alphabet))]
    found: dict[Transformation, tuple[int, ...]] = {}
    queue: deque[Transformation] = deque()
    for a, t in enumerate(letters):
        if t not in found:
            found[t] = (a,)
            queue.append(t)
    while queue:
        t = queue.popleft()
        for a, g in enumerate(letters):
            # apply t, then the letter
            s = tuple(g[x] for x in t)
            if s not in found:
                if len(found) >= cap:
                    raise BudgetExceeded(f"semigroup exceeds {cap} elements")
                found[s] = found[t] + (a,)
                queue.append(s)
    return {t: A.decode(word) for t, word in found.items()}


def inner_factors(w) -> set[tuple[str, ...]]:
    w = tuple(w)
    n = len(w)
    return {w[i:j] for i in range(1, n) for j in range(i + 1, n)}


@dataclass(frozen=True)
class WordClasses:
    fact: frozenset
    suff: frozenset
    pref: frozenset
    pref_syn_adjusted: frozenset


def word_classes(w, alphabet) -> WordClasses:
    w = tuple(w)
    if not w:
        raise PreconditionError("w must be non-empty")
    n = len(w)
    fact = inner_factors(w)
    suffixes = {w[i:] for i in range(1, n)}
    prefixes = {w[:i] for i in range(1, n)}
    suff = suffixes - fact
    pref = prefixes - suffixes - fact
    A = build_aw(w, alphabet)
    pref_syn = {x for x in pref if resets(A, x)}
    return WordClasses(frozenset(fact), frozenset(suff), frozenset(pref), frozenset(pref_syn))


@dataclass(frozen=True)
class SyntacticComplexity:
    formula: int
    oracle: int
    length: int
    pref: int
    fact: int
    suff: int
    subtrahend: int
    literal_subtrahend: int

    @property
    def match(self) -> bool:
        return self.formula == self.oracle

    def as_dict(self) -> dict:
        return {
            "formula": self.formula,
            "oracle": self.oracle,
            "pref": self.pref,
            "fact": self.fact,
            "suff": self.suff,
            "subtrahend": self.subtrahend,
            "match": self.match,
        }


def syntactic_complexity(w, alphabet, cap: int = DEFAULT_SEMIGROUP_CAP) -> SyntacticComplexity:
    """Closed form ``|w| + 1 + |Pref| + |Fact| + |Suff| - |Pref ∩ Syn(A_w)|``
    next to the size of the transition semigroup of ``A_w``.

    ``literal_subtrahend`` counts every prefix of ``w`` (empty and full
    included) that resets ``A_w``; it is reported for comparison only.
    """
    w = tuple(w)
    classes = word_classes(w, alphabet)
    A = build_aw(w, alphabet)
    formula = (
        len(w) + 1 + len(classes.pref) + len(classes.fact) + len(classes.suff)
        - len(classes.pref_syn_adjusted)
    )
    oracle = len(transition_semigroup(A, cap))
    literal = sum(1 for i in range(len(w) + 1) if resets(A, w[:i]))
    return SyntacticComplexity(
        formula,
        oracle,
        len(w),
        len(classes.pref),
        len(classes.fact),
        len(classes.suff),
        len(classes.pref_syn_adjusted),
        literal,
    )
