"""Reset left regular decompositions and the lift onto the prefix-automaton
class.

A strongly connected synchronizing automaton corresponds to the family of
its landing classes ``I_q = {u : Q.u = {q}}``; the lift refines those
classes by the longest suffix shared with a shortest reset word ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .automata import (
    Acceptor,
    Semiautomaton,
    check_homomorphism,
    congruences_from_root,
    is_isomorphic,
    is_strongly_connected,
    kernel,
    quotient,
    reachable,
)
from .aw import aw_language
from .errors import PreconditionError
from .languages import (
    Language,
    append_letter,
    equals,
    explore,
    ideal_kind,
    includes,
    intersection,
    is_empty,
    principal_ideal,
    shortest_word,
    union,
    universal,
)
from .synchro import (
    DEFAULT_SUBSET_CAP,
    bfs_word,
    full_mask,
    is_singleton,
    is_synchronizing,
    power_acceptor,
    shortest_reset,
    sqrt_bound_holds,
    syn_language,
)
from .words import failure_table, prefix_step, prefix_table


def _require_scsa(A):
    if not is_strongly_connected(A):
        raise PreconditionError("automaton is not strongly connected")
    if not is_synchronizing(A):
        raise PreconditionError("automaton is not synchronizing")


@dataclass(frozen=True)
class Decomposition:
    parts: Mapping[object, Language]

    @property
    def indices(self) -> list:
        return list(self.parts)

    @property
    def alphabet(self):
        return next(iter(self.parts.values())).alphabet

    def union(self) -> Language:
        total = None
        for part in self.parts.values():
            total = part if total is None else union(total, part)
        return total


def extract_decomposition(A, cap: int = DEFAULT_SUBSET_CAP) -> Decomposition:
    _require_scsa(A)
    parts = {}
    for q in A.base.states:
        acc, _ = power_acceptor(A, full_mask(A), lambda m, q=q: m == 1 << q, cap)
        parts[q] = Language.of(acc)
    return Decomposition(parts)


@dataclass
class DecompositionReport:
    checks: dict[str, bool] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, problem: str | None = None):
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed and problem:
            self.problems.append(problem)


def _landing_sets(source: Acceptor, target: Acceptor) -> frozenset[int]:
    """States of ``target`` reached by reading words accepted by ``source``."""
    da, db = source.delta, target.delta
    _, configs = explore(
        source.alphabet,
        (source.initial, target.initial),
        lambda c, a: (da[c[0]][a], db[c[1]][a]),
        lambda c: False,
    )
    return frozenset(t for s, t in configs if s in source.finals)


def _all_into(target: Acceptor, start: frozenset[int]) -> Language:
    """``{u : start.u is inside target's finals}``."""
    delta = target.delta
    acc, _ = explore(
        target.alphabet,
        start,
        lambda S, a: frozenset(delta[q][a] for q in S),
        lambda S: S <= target.finals,
    )
    return Language.of(acc)


def completeness_violations(D: Decomposition) -> Language:
    """Words ``u`` outside ``I`` with ``I u`` inside a single part; empty
    exactly when the completeness condition holds."""
    total = D.union()
    absorbed = None
    for part in D.parts.values():
        start = frozenset()
        for other in D.parts.values():
            start |= _landing_sets(other.acceptor, part.acceptor)
        U = _all_into(part.acceptor, start)
        absorbed = U if absorbed is None else union(absorbed, U)
    return intersection(absorbed, _complement_of(total))


def _complement_of(L: Language) -> Language:
    A = L.acceptor
    return Language.of(Acceptor(A.base, A.initial, set(A.states) - A.finals))


def verify_decomposition(D: Decomposition) -> DecompositionReport:
    report = DecompositionReport()
    if not D.parts:
        report.record("nonempty_family", False, "no parts")
        return report
    alphabet = D.alphabet
    for i, part in D.parts.items():
        if part.alphabet != alphabet:
            raise PreconditionError(f"part {i} has alphabet {part.alphabet}")
    for (i, L), (j, M) in combinations(D.parts.items(), 2):
        report.record(
            "disjoint", is_empty(intersection(L, M)), f"parts {i} and {j} overlap"
        )
    for i, L in D.parts.items():
        report.record("left_ideals", ideal_kind(L).left, f"part {i} is not a left ideal")
    for i, L in D.parts.items():
        for a in alphabet:
            shifted = append_letter(L, a)
            hit = any(includes(M, shifted) for M in D.parts.values())
            report.record(
                "letter_closure", hit, f"part {i} followed by {a!r} fits no single part"
            )
    witness = shortest_word(completeness_violations(D))
    report.record(
        "completeness",
        witness is None,
        None if witness is None else f"{''.join(witness)!r} is absorbed but outside the union",
    )
    report.record("union_two_sided", ideal_kind(D.union()).two_sided, "union is not a two-sided ideal")
    return report


def automaton_of_decomposition(D: Decomposition) -> Semiautomaton:
    """States are the parts in ``D.indices`` order; ``i --a--> j`` iff
    ``I_i a`` lies inside ``I_j``."""
    indices = D.indices
    alphabet = D.alphabet
    table = []
    for i in indices:
        row = []
        for a in alphabet:
            shifted = append_letter(D.parts[i], a)
            target = next(
                (j for j, idx in enumerate(indices) if includes(D.parts[idx], shifted)),
                None,
            )
            if target is None:
                raise PreconditionError(f"part {i} followed by {a!r} fits no single part")
            row.append(target)
        table.append(tuple(row))
    return Semiautomaton(alphabet, table)


# -- lifting ----------------------------------------------------------------------


@dataclass(frozen=True)
class LiftResult:
    B: Acceptor
    w: tuple[str, ...]
    phi: tuple[int, ...]
    class_labels: tuple[tuple[int, int], ...]

    def label_words(self) -> list[tuple[int, tuple[str, ...]]]:
        return [(i, self.w[:p]) for i, p in self.class_labels]


def lift(A, word=None, cap: int = DEFAULT_SUBSET_CAP) -> LiftResult:
    """Product of ``A``'s dynamics with the prefix automaton of ``w``,
    closed from (landing state of ``w``, full prefix).

    ``w`` defaults to the alphabet-least shortest reset word.  Passing a
    longer reset word is allowed so that its failure can be observed.
    """
    _require_scsa(A)
    base = A.base
    if word is None:
        w = bfs_word(A, full_mask(A), is_singleton, cap)
    else:
        w = tuple(word)
        base.encode(w)
    land = set(base.states)
    for s in w:
        land = {base.delta[q][base.letter(s)] for q in land}
    if len(land) != 1:
        raise PreconditionError(f"{''.join(w)!r} does not reset the automaton")
    (q_w,) = land
    fail = failure_table(w)
    delta = base.delta
    alphabet = base.alphabet
    B, configs = explore(
        alphabet,
        (q_w, len(w)),
        lambda c, a: (delta[c[0]][a], prefix_step(w, fail, c[1], alphabet[a])),
        lambda c: c == (q_w, len(w)),
    )
    return LiftResult(
        B, w, tuple(q for q, _ in configs), tuple(configs)
    )


def sigma_classes(A, w, cap: int = DEFAULT_SUBSET_CAP) -> dict[tuple[int, int], Language]:
    """Non-empty classes of reset words grouped by (landing state, longest
    suffix that is a prefix of ``w``)."""
    base = A.base
    delta = base.delta
    ptab = prefix_table(tuple(w), base.alphabet)
    start = (full_mask(A), 0)

    def step(c, a):
        mask, p = c
        nxt = 0
        for q in range(base.n_states):
            if mask >> q & 1:
                nxt |= 1 << delta[q][a]
        return nxt, ptab[p][a]

    acc, configs = explore(base.alphabet, start, step, lambda c: False)
    out = {}
    for mask, p in sorted({c for c in configs if is_singleton(c[0])}, key=lambda c: (c[0], c[1])):
        label = (mask.bit_length() - 1, p)
        finals = [i for i, c in enumerate(configs) if c == (mask, p)]
        out[label] = Language.of(Acceptor(acc.base, 0, finals))
    return dict(sorted(out.items()))


@dataclass
class LiftReport:
    checks: dict[str, bool] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)
    norms: tuple[int | None, int, int | None] = (None, 0, None)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name, passed, problem=None):
        self.checks[name] = passed
        if not passed and problem:
            self.problems.append(problem)


def verify_lift(A, r: LiftResult, cap: int = DEFAULT_SUBSET_CAP) -> LiftReport:
    report = LiftReport()
    alphabet = A.base.alphabet
    w = r.w
    B = r.B
    report.record(
        "language", equals(Language.of(B), aw_language(w, alphabet)), "L[B] differs from w^-1 Sigma* w"
    )
    syn_A = syn_language(A, cap)
    syn_B = syn_language(B, cap)
    ideal = principal_ideal(w, alphabet) if w else universal(alphabet)
    report.record("syn_contains_principal", includes(syn_B, ideal), "Syn(B) misses Sigma* w Sigma*")
    report.record("syn_inside_source", includes(syn_A, syn_B), "Syn(B) is not inside Syn(A)")
    hom = check_homomorphism(r.phi, B, A)
    report.record("homomorphism", hom.ok and hom.surjective, "phi is not a surjective homomorphism")
    report.record(
        "quotient_isomorphic",
        hom.ok and is_isomorphic(quotient(B.base, kernel(r.phi)), A.base),
        "B/ker(phi) is not isomorphic to A",
    )
    norm_A = len(shortest_word(syn_A))
    norm_B = len(shortest_word(syn_B))
    report.norms = (norm_A, len(w), norm_B)
    report.record("norms", norm_A == len(w) == norm_B, f"norms {report.norms} differ")
    trim = len(reachable(B, [B.initial])) == B.n_states and is_strongly_connected(B)
    report.record("trim", trim, "B is not trim")
    classes = sigma_classes(A, w, cap)
    bad = [lab for lab, L in classes.items() if not ideal_kind(L).left]
    report.record("classes_left_ideals", not bad, f"classes {bad} are not left ideals")
    missing = [lab for lab in r.class_labels if lab not in classes]
    report.record("labels_are_classes", not missing, f"labels {missing} name empty classes")
    return report


# -- conjecture probes -----------------------------------------------------------


@dataclass
class ProbeReport:
    instances: int = 0
    congruences: int = 0
    equality: list[int] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "instances": self.instances,
            "congruences_checked": self.congruences,
            "equality_cases": self.equality,
            "violations": self.violations,
        }


def _sqrt_bound_index(norm: int) -> int:
    """Largest index ``k`` with ``k < sqrt(norm) + 1``."""
    k = 1
    while k * k < norm:  # (k+1-1)^2 < norm
        k += 1
    return k


def cerny_probes(corpus, cap: int = DEFAULT_SUBSET_CAP, budget: int = 1_000_000) -> ProbeReport:
    """Falsification probes: ``k >= sqrt(||Syn(A)||) + 1`` for each source,
    and ``||Syn(B/rho)|| < ||Syn(B)||`` for every congruence of the lift
    with index below ``sqrt(||Syn(B)||) + 1``."""
    from .automata import serialize_automaton

    report = ProbeReport()
    for idx, A in enumerate(corpus):
        report.instances += 1
        k = A.base.n_states
        norm = shortest_reset(A, cap).threshold
        if not sqrt_bound_holds(k, norm):
            report.violations.append(
                {"index": idx, "kind": "sqrt_bound", "states": k, "norm": norm,
                 "aut": serialize_automaton(A)}
            )
        if (k - 1) ** 2 == norm:
            report.equality.append(idx)
        r = lift(A, cap=cap)
        norm_B = len(r.w)
        if norm_B == 0:
            continue
        for P in congruences_from_root(r.B, _sqrt_bound_index(norm_B), budget):
            report.congruences += 1
            Q = quotient(r.B.base, P)
            t = shortest_reset(Q, cap).threshold
            if t is not None and t >= norm_B:
                report.violations.append(
                    {"index": idx, "kind": "quotient_norm", "index_rho": len(P.blocks),
                     "norm_quotient": t, "norm_lift": norm_B, "aut": serialize_automaton(A)}
                )
    return report
