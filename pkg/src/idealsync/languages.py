"""Regular-language operations on complete acceptors.

A :class:`Language` wraps the canonical minimal acceptor, so two handles
are equal exactly when they denote the same language.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .automata import Acceptor, Semiautomaton, coreachable, minimize, reachable, run
from .errors import AlphabetMismatch, PreconditionError
from .words import prefix_table


@dataclass(frozen=True)
class Language:
    acceptor: Acceptor

    @classmethod
    def of(cls, A: Acceptor) -> "Language":
        return cls(minimize(A))

    @property
    def alphabet(self):
        return self.acceptor.alphabet

    def __contains__(self, word) -> bool:
        return self.acceptor.accepts(word)


def language(x) -> Language:
    if isinstance(x, Language):
        return x
    if isinstance(x, Acceptor):
        return Language.of(x)
    raise TypeError(f"expected Language or Acceptor, got {type(x).__name__}")


def explore(
    alphabet: Sequence[str],
    start: Hashable,
    step: Callable[[Hashable, int], Hashable],
    is_final: Callable[[Hashable], bool],
) -> tuple[Acceptor, list]:
    """Breadth-first deterministic construction over hashable configurations.

    Returns the acceptor (state i is ``configs[i]``) and the configuration list.
    """
    index = {start: 0}
    configs = [start]
    table = []
    i = 0
    while i < len(configs):
        row = []
        for a in range(len(alphabet)):
            nxt = step(configs[i], a)
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(configs)
                configs.append(nxt)
            row.append(j)
        table.append(tuple(row))
        i += 1
    finals = frozenset(i for i, c in enumerate(configs) if is_final(c))
    return Acceptor(Semiautomaton(alphabet, table), 0, finals), configs


def universal(alphabet) -> Language:
    return Language.of(Acceptor(Semiautomaton(alphabet, [(0,) * len(alphabet)]), 0, {0}))


def empty(alphabet) -> Language:
    return Language.of(Acceptor(Semiautomaton(alphabet, [(0,) * len(alphabet)]), 0, ()))


def _check_alphabets(*acceptors):
    first = acceptors[0].alphabet
    for A in acceptors[1:]:
        if A.alphabet != first:
            raise AlphabetMismatch(f"{first} != {A.alphabet}")


_RULES = {
    "intersection": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
}


def product_acceptor(A: Acceptor, B: Acceptor, rule) -> Acceptor:
    _check_alphabets(A, B)
    da, db = A.delta, B.delta
    acc, _ = explore(
        A.alphabet,
        (A.initial, B.initial),
        lambda c, a: (da[c[0]][a], db[c[1]][a]),
        lambda c: rule(c[0] in A.finals, c[1] in B.finals),
    )
    return acc


def combine(L1, L2, op: str) -> Language:
    L1, L2 = language(L1), language(L2)
    try:
        rule = _RULES[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return Language.of(product_acceptor(L1.acceptor, L2.acceptor, rule))


def intersection(L1, L2) -> Language:
    return combine(L1, L2, "intersection")


def union(L1, L2) -> Language:
    return combine(L1, L2, "union")


def difference(L1, L2) -> Language:
    return combine(L1, L2, "difference")


def complement(L) -> Language:
    A = language(L).acceptor
    return Language.of(Acceptor(A.base, A.initial, set(A.states) - A.finals))


def is_empty(L) -> bool:
    A = language(L).acceptor
    return not A.finals


def includes(L1, L2) -> bool:
    """True iff ``L2`` is a subset of ``L1``."""
    return is_empty(difference(L2, L1))


def equals(L1, L2) -> bool:
    L1, L2 = language(L1), language(L2)
    _check_alphabets(L1.acceptor, L2.acceptor)
    return L1 == L2


def _trim(A: Acceptor) -> set[int]:
    return set(reachable(A, [A.initial])) & coreachable(A, A.finals)


def is_finite(L) -> bool:
    A = language(L).acceptor
    useful = _trim(A)
    color = dict.fromkeys(useful, 0)

    # iterative DFS cycle detection restricted to useful states
    for root in useful:
        if color[root]:
            continue
        stack = [(root, iter(A.delta[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            for t in it:
                if t not in color:
                    continue
                if color[t] == 1:
                    return False
                if color[t] == 0:
                    color[t] = 1
                    stack.append((t, iter(A.delta[t])))
                    break
            else:
                color[q] = 2
                stack.pop()
    return True


def longest_word(L) -> int | None:
    """Length of the longest word of a finite language; None when the
    language is infinite, -1 when it is empty."""
    if not is_finite(L):
        return None
    A = language(L).acceptor
    useful = _trim(A)
    if A.initial not in useful:
        return -1
    memo: dict[int, int] = {}

    def longest(q):
        if q not in memo:
            best = 0 if q in A.finals else -1
            for t in A.delta[q]:
                if t in useful:
                    best = max(best, 1 + longest(t))
            memo[q] = best
        return memo[q]

    return longest(A.initial)


def shortest_word(L) -> tuple[str, ...] | None:
    """Lexicographically least among the shortest accepted words."""
    A = language(L).acceptor
    parent = {A.initial: None}
    queue = deque([A.initial])
    while queue:
        q = queue.popleft()
        if q in A.finals:
            letters = []
            while parent[q] is not None:
                q, a = parent[q]
                letters.append(a)
            return A.decode(reversed(letters))
        for a, t in enumerate(A.delta[q]):
            if t not in parent:
                parent[t] = (q, a)
                queue.append(t)
    return None


def left_quotient(L, w) -> Language:
    """``{v : wv in L}``."""
    A = language(L).acceptor
    return Language.of(Acceptor(A.base, run(A, A.initial, w), A.finals))


def right_quotient(L, w) -> Language:
    """``{v : vw in L}``."""
    A = language(L).acceptor
    finals = {q for q in A.states if run(A, q, w) in A.finals}
    return Language.of(Acceptor(A.base, A.initial, finals))


def prepend_closure(L, proper: bool = False) -> Language:
    """``Sigma* L`` (or ``Sigma+ L`` when ``proper``) by tracking the states
    of runs started at every input position."""
    A = language(L).acceptor
    delta, q0 = A.delta, A.initial
    start = frozenset() if proper else frozenset([q0])
    acc, _ = explore(
        A.alphabet,
        start,
        lambda S, a: frozenset(delta[q][a] for q in S) | {q0},
        lambda S: bool(S & A.finals),
    )
    return Language.of(acc)


def append_closure(L, proper: bool = False) -> Language:
    """``L Sigma*`` (or ``L Sigma+`` when ``proper``)."""
    A = language(L).acceptor
    delta, finals = A.delta, A.finals
    acc, _ = explore(
        A.alphabet,
        (A.initial, False),
        lambda c, a: (delta[c[0]][a], c[1] or c[0] in finals),
        lambda c: c[1] or (not proper and c[0] in finals),
    )
    return Language.of(acc)


def append_letter(L, symbol: str) -> Language:
    """``L a``: accept after reading ``a`` from a state that was final."""
    A = language(L).acceptor
    delta, finals = A.delta, A.finals
    letter = A.base.letter(symbol)
    acc, _ = explore(
        A.alphabet,
        (A.initial, False),
        lambda c, a: (delta[c[0]][a], a == letter and c[0] in finals),
        lambda c: c[1],
    )
    return Language.of(acc)


@dataclass(frozen=True)
class IdealKind:
    left: bool
    right: bool

    @property
    def two_sided(self) -> bool:
        return self.left and self.right

    def flags(self) -> list[str]:
        return [name for name in ("left", "right", "two_sided") if getattr(self, name)]


def ideal_kind(L) -> IdealKind:
    L = language(L)
    A = L.acceptor
    if not A.finals:
        return IdealKind(False, False)
    right = all(t in A.finals for f in A.finals for t in A.delta[f])
    left = prepend_closure(L) == L
    return IdealKind(left, right)


def _nonempty_word(w, alphabet):
    w = tuple(w)
    if not w:
        raise PreconditionError("w must be non-empty")
    bad = [s for s in w if s not in alphabet]
    if bad:
        raise ValueError(f"symbol {bad[0]!r} not in alphabet")
    return w


def principal_ideal(w, alphabet) -> Language:
    """``Sigma* w Sigma*`` on prefix states plus an accepting sink."""
    alphabet = tuple(alphabet)
    w = _nonempty_word(w, alphabet)
    n = len(w)
    table = [tuple(t for t in row) for row in prefix_table(w, alphabet)[:n]]
    table.append((n,) * len(alphabet))
    return Language.of(Acceptor(Semiautomaton(alphabet, table), 0, {n}))


def left_principal(w, alphabet) -> Language:
    """``Sigma* w``."""
    alphabet = tuple(alphabet)
    w = _nonempty_word(w, alphabet)
    return Language.of(Acceptor(Semiautomaton(alphabet, prefix_table(w, alphabet)), 0, {len(w)}))
