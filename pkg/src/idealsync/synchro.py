"""Synchronization: pair and power automata, reset words and reset languages,
maximal fixed sets, finitely generated automata, and exhaustive searches."""

from __future__ import annotations

import json
import random
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from . import kernels
from .automata import (
    Acceptor,
    Semiautomaton,
    all_words,
    image,
    is_strongly_connected,
    serialize_automaton,
)
from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .languages import (
    Language,
    append_closure,
    difference,
    is_empty,
    is_finite,
    prepend_closure,
    principal_ideal,
    union,
)

DEFAULT_SUBSET_CAP = 1 << 20
DEFAULT_ENUM_BUDGET = 1 << 20


# -- subsets as bitmasks -------------------------------------------------------


def to_mask(states) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def from_mask(mask: int) -> frozenset[int]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(A) -> int:
    return (1 << A.base.n_states) - 1


def power_closure(A, start, cap: int = DEFAULT_SUBSET_CAP):
    """Reachable subsets from ``start`` (a state set or mask) in BFS order,
    with the flat successor-index table."""
    base = A.base
    mask = start if isinstance(start, int) else to_mask(start)
    return kernels.power_closure(base.flat(), base.n_states, len(base.alphabet), mask, cap)


def power_acceptor(A, start, is_final, cap: int = DEFAULT_SUBSET_CAP) -> tuple[Acceptor, list[int]]:
    """Power automaton from ``start`` with finals chosen by ``is_final(mask)``."""
    masks, trans = power_closure(A, start, cap)
    k = len(A.base.alphabet)
    table = [tuple(trans[i * k : (i + 1) * k]) for i in range(len(masks))]
    finals = frozenset(i for i, m in enumerate(masks) if is_final(m))
    return Acceptor(Semiautomaton(A.base.alphabet, table), 0, finals), masks


def bfs_word(A, start, is_target, cap: int = DEFAULT_SUBSET_CAP):
    """Shortest, then alphabet-least, word taking ``start`` to a subset
    satisfying ``is_target``; None if no reachable subset qualifies."""
    masks, trans = power_closure(A, start, cap)
    k = len(A.base.alphabet)
    target = next((i for i, m in enumerate(masks) if is_target(m)), None)
    if target is None:
        return None
    parent = {0: None}
    for pos, j in enumerate(trans):
        if j not in parent:
            parent[j] = (pos // k, pos % k)
    letters = []
    i = target
    while parent[i] is not None:
        i, a = parent[i]
        letters.append(a)
    return A.base.decode(reversed(letters))


def is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def pair_index(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


def pairs_reaching(A, is_good) -> set[tuple[int, int]]:
    """Configurations of the pair automaton (1- and 2-element subsets, with
    singletons encoded as ``(p, p)``) from which a good configuration is
    reachable.  Backward breadth-first search, O(n^2 |Sigma|)."""
    delta = A.base.delta
    n = len(delta)
    k = len(A.base.alphabet)
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {}
    configs = [(p, q) for p in range(n) for q in range(p, n)]
    for c in configs:
        for a in range(k):
            preds.setdefault(pair_index(delta[c[0]][a], delta[c[1]][a]), []).append(c)
    good = {c for c in configs if is_good(c)}
    queue = deque(good)
    while queue:
        for c in preds.get(queue.popleft(), ()):
            if c not in good:
                good.add(c)
                queue.append(c)
    return good


def is_synchronizing(A) -> bool:
    n = A.base.n_states
    good = pairs_reaching(A, lambda c: c[0] == c[1])
    return all((p, q) in good for p in range(n) for q in range(p + 1, n))


# -- reset words ---------------------------------------------------------------


def syn_acceptor(A, cap: int = DEFAULT_SUBSET_CAP) -> Acceptor:
    acc, _ = power_acceptor(A, full_mask(A), is_singleton, cap)
    return acc


def syn_language(A, cap: int = DEFAULT_SUBSET_CAP) -> Language:
    return Language.of(syn_acceptor(A, cap))


def resets(A, word) -> bool:
    return len(image(A, A.base.states, word)) == 1


@dataclass(frozen=True)
class SynReport:
    synchronizing: bool
    shortest: tuple[str, ...] | None = None
    threshold: int | None = None
    syn_language: Language | None = None


def shortest_reset(A, cap: int = DEFAULT_SUBSET_CAP, with_language: bool = False) -> SynReport:
    word = bfs_word(A, full_mask(A), is_singleton, cap)
    lang = syn_language(A, cap) if with_language else None
    if word is None:
        return SynReport(False, syn_language=lang)
    return SynReport(True, word, len(word), lang)


def reset_threshold(A, cap: int = DEFAULT_SUBSET_CAP) -> int | None:
    return shortest_reset(A, cap).threshold


# -- maximal fixed sets, deficiency, Theorem 4 / Theorem 9 searches -----------


def maximal_fixed_set(A, u) -> tuple[frozenset[int], int]:
    """``(m(u), k(u))``: iterate ``S <- S.u`` from the full state set."""
    u = tuple(u)
    if not u:
        raise PreconditionError("u must be non-empty")
    S = frozenset(A.base.states)
    k = 0
    while True:
        T = image(A, S, u)
        if T == S:
            return S, k
        S, k = T, k + 1


def deficiency(A, u) -> int:
    return A.base.n_states - len(image(A, A.base.states, u))


def _search_extension(A, start, suffix, accept, max_len):
    """BFS over configurations ``start.tau`` (length, then alphabet order)
    for the first ``tau`` with ``accept(start.tau.suffix)``."""
    base = A.base
    delta = base.delta
    start = frozenset(start)
    suffix = base.encode(suffix)

    def apply(S, letters):
        for a in letters:
            S = frozenset(delta[q][a] for q in S)
        return S

    seen = {start: ()}
    frontier = [start]
    for length in range(max_len + 1):
        for S in frontier:
            if accept(apply(S, suffix)):
                return base.decode(seen[S])
        if length == max_len:
            break
        nxt = []
        for S in frontier:
            for a in range(len(base.alphabet)):
                T = frozenset(delta[q][a] for q in S)
                if T not in seen:
                    seen[T] = seen[S] + (a,)
                    nxt.append(T)
        frontier = nxt
    return None


def extend_deficiency(A, u, v) -> tuple[str, ...]:
    """Some ``tau`` with ``df(u tau v) > k`` where ``df(u) = df(v) = k > 1``."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise PreconditionError("u and v must be non-empty")
    k = deficiency(A, u)
    if k <= 1 or deficiency(A, v) != k:
        raise PreconditionError(f"need df(u) = df(v) > 1, got {k} and {deficiency(A, v)}")
    if not is_synchronizing(A):
        raise PreconditionError("automaton is not synchronizing")
    n = A.base.n_states
    if k >= n - 1:
        raise PreconditionError("u already resets; the deficiency cannot grow")
    tau = _search_extension(
        A, image(A, A.base.states, u), v, lambda S: len(S) < n - k, k + 1
    )
    if tau is None:
        raise TheoremViolation(
            f"no tau of length <= {k + 1} raises the deficiency of u={''.join(u)} "
            f"v={''.join(v)}",
            serialize_automaton(A),
        )
    return tau


@dataclass(frozen=True)
class Theorem4Verdict:
    kind: str  # "PowerResets" or "Sandwich"
    k: int
    tau: tuple[str, ...] | None
    word: tuple[str, ...]


def theorem4_witness(A, v, finitely_generated: bool | None = None) -> Theorem4Verdict:
    """Either ``v^k(v)`` resets, or some ``tau`` with ``|tau| <= n - 1`` makes
    ``v^k tau v^k`` reset."""
    v = tuple(v)
    if not v:
        raise PreconditionError("v must be non-empty")
    if not is_synchronizing(A):
        raise PreconditionError("automaton is not synchronizing")
    if finitely_generated is None:
        finitely_generated = is_finitely_generated(A)
    if not finitely_generated:
        raise PreconditionError("automaton is not finitely generated")
    _, k = maximal_fixed_set(A, v)
    vk = v * k
    if resets(A, vk):
        return Theorem4Verdict("PowerResets", k, None, vk)
    n = A.base.n_states
    tau = _search_extension(
        A, image(A, A.base.states, vk), vk, lambda S: len(S) == 1, n - 1
    )
    if tau is None:
        raise TheoremViolation(
            f"no tau of length <= {n - 1} with v^k tau v^k resetting, v={''.join(v)}",
            serialize_automaton(A),
        )
    return Theorem4Verdict("Sandwich", k, tau, vk + tau + vk)


# -- minimal reset words ---------------------------------------------------------


def minimal_reset_words(A, cap: int = DEFAULT_SUBSET_CAP) -> Language:
    """Reset words none of whose proper prefixes or suffixes reset."""
    syn = syn_language(A, cap)
    return difference(syn, union(prepend_closure(syn, proper=True), append_closure(syn, proper=True)))


def is_finitely_generated(A, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    return is_synchronizing(A) and is_finite(minimal_reset_words(A, cap))


# -- Theorem 8 probe ---------------------------------------------------------------


def subset_syn_language(A, S, cap: int = DEFAULT_SUBSET_CAP) -> Language:
    """Words collapsing the subset ``S`` to one state."""
    acc, _ = power_acceptor(A, S, is_singleton, cap)
    return Language.of(acc)


@dataclass
class Theorem8Report:
    finitely_generated: bool
    checked: int = 0
    agreements: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations or not self.finitely_generated


def theorem8_probe(A, samples: int = 8, max_len: int = 4, cap: int = DEFAULT_SUBSET_CAP) -> Theorem8Report:
    """Compare ``Syn(S)`` with ``Syn(m(u))`` for reachable ``1 < |S| < n`` and
    up to ``samples`` non-empty words ``u`` fixing ``S`` (length <= max_len)."""
    if not is_synchronizing(A):
        raise PreconditionError("automaton is not synchronizing")
    report = Theorem8Report(is_finitely_generated(A, cap))
    n = A.base.n_states
    masks, _ = power_closure(A, full_mask(A), cap)
    cache: dict[frozenset, Language] = {}

    def syn_of(S):
        if S not in cache:
            cache[S] = subset_syn_language(A, S, cap)
        return cache[S]

    for mask in masks:
        S = from_mask(mask)
        if not 1 < len(S) < n:
            continue
        found = 0
        for u in all_words(A.base.alphabet, max_len, min_len=1):
            if found >= samples:
                break
            if image(A, S, u) != S:
                continue
            found += 1
            m, _ = maximal_fixed_set(A, u)
            report.checked += 1
            if syn_of(S) == syn_of(m):
                report.agreements += 1
            else:
                report.violations.append(
                    {"subset": sorted(S), "u": "".join(u), "m": sorted(m)}
                )
    return report


# -- fixtures and enumeration ------------------------------------------------------


def cerny_automaton(n: int, alphabet: Sequence[str] = ("a", "b")) -> Semiautomaton:
    """``a`` rotates ``i -> i+1 mod n``; ``b`` sends 0 to 1 and fixes the rest."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    table = [((i + 1) % n, 1 if i == 0 else i) for i in range(n)]
    return Semiautomaton(tuple(alphabet), table)


def enumerate_semiautomata(
    n: int, alphabet: Sequence[str], budget: int = DEFAULT_ENUM_BUDGET
) -> Iterator[Semiautomaton]:
    """Every total table, in lexicographic order of the row-major image sequence."""
    alphabet = tuple(alphabet)
    k = len(alphabet)
    total = n ** (n * k)
    if total > budget:
        raise BudgetExceeded(f"{total} tables exceed the enumeration budget {budget}")
    for images in product(range(n), repeat=n * k):
        yield Semiautomaton(alphabet, [images[q * k : (q + 1) * k] for q in range(n)])


def random_semiautomaton(rng: random.Random, n: int, alphabet: Sequence[str]) -> Semiautomaton:
    k = len(alphabet)
    return Semiautomaton(tuple(alphabet), [tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)])


def random_scsa(rng: random.Random, n: int, alphabet: Sequence[str] = ("a", "b")) -> Semiautomaton:
    """Rejection-sample a strongly connected synchronizing automaton."""
    while True:
        A = random_semiautomaton(rng, n, alphabet)
        if is_strongly_connected(A) and is_synchronizing(A):
            return A


def scsa_corpus(seed: int, count: int, max_states: int = 5, alphabet=("a", "b")) -> list[Semiautomaton]:
    """``count`` strongly connected synchronizing automata with 2..max_states
    states, drawn from ``random.Random(seed)`` (Mersenne Twister)."""
    rng = random.Random(seed)
    return [random_scsa(rng, rng.randint(2, max_states), alphabet) for _ in range(count)]


# -- exhaustive reset-complexity search --------------------------------------------


@dataclass
class SearchReport:
    query: str
    parameters: dict
    witnesses: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    def as_dict(self) -> dict:
        return {
            "query": self.query,
            "parameters": self.parameters,
            "witnesses": self.witnesses,
            "counts": self.counts,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self, timing: bool = True) -> str:
        d = self.as_dict()
        if not timing:
            d["elapsed_ms"] = None
        return json.dumps(d, indent=2, sort_keys=False)


def syn_equals(A, target: Language) -> bool:
    """Exact test ``Syn(A) == L[target]`` by a product breadth-first search."""
    base = A.base
    T = target.acceptor
    if T.alphabet != base.alphabet:
        raise ValueError("alphabet mismatch")
    finals = [q in T.finals for q in T.states]
    return kernels.power_equals_dfa(
        base.flat(), base.n_states, len(base.alphabet), full_mask(A),
        T.base.flat(), T.initial, finals,
    )


def rc_search(
    w,
    alphabet: Sequence[str],
    n_max: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    max_witnesses: int | None = None,
) -> SearchReport:
    """For each ``n <= n_max``, all n-state semiautomata whose reset language
    is exactly ``Sigma* w Sigma*``."""
    alphabet = tuple(alphabet)
    w = tuple(w)
    started = time.perf_counter()
    ideal = principal_ideal(w, alphabet)
    k = len(alphabet)
    letters = [alphabet.index(s) for s in w]
    report = SearchReport(
        "rc-search",
        {"w": "".join(w), "alphabet": list(alphabet), "n_max": n_max},
    )
    for n in range(1, n_max + 1):
        total = n ** (n * k)
        if total > budget:
            raise BudgetExceeded(f"{total} tables at n={n} exceed the budget {budget}")
        found = []
        count = 0
        full = (1 << n) - 1
        for idx, images in enumerate(product(range(n), repeat=n * k)):
            # w itself must reset; cheap filter before the exact comparison
            mask = full
            for a in letters:
                img = 0
                q = 0
                m = mask
                while m:
                    if m & 1:
                        img |= 1 << images[q * k + a]
                    m >>= 1
                    q += 1
                mask = img
            if mask & (mask - 1):
                continue
            A = Semiautomaton(alphabet, [images[q * k : (q + 1) * k] for q in range(n)])
            if syn_equals(A, ideal):
                count += 1
                if max_witnesses is None or len(found) < max_witnesses:
                    found.append({"index": idx, "aut": serialize_automaton(A)})
        report.counts[str(n)] = {"tables": total, "witnesses": count}
        report.witnesses[str(n)] = found
    report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    return report


def cerny_bound_holds(n_states: int, threshold: int) -> bool:
    return threshold <= (n_states - 1) ** 2


def sqrt_bound_holds(n_states: int, shortest: int) -> bool:
    """``n_states >= sqrt(shortest) + 1``, evaluated exactly."""
    return n_states - 1 >= 0 and (n_states - 1) ** 2 >= shortest

