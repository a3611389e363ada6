"""Constants of a regular language, read off its minimal acceptor.

With a non-accepting sink ``s``, a word is a constant iff it squeezes the
state set to at most two states (one of which is then ``s``); without a
sink it must reset the acceptor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automata import Acceptor, Semiautomaton, coreachable, image, minimize, reachable
from .errors import PreconditionError
from .languages import Language, intersection, is_empty
from .synchro import (
    DEFAULT_SUBSET_CAP,
    bfs_word,
    full_mask,
    is_synchronizing,
    pairs_reaching,
    popcount,
    power_acceptor,
    power_closure,
    syn_language,
    to_mask,
)


def find_sink(A_L: Acceptor) -> int | None:
    """The non-accepting state fixed by every letter, if any."""
    for q in A_L.states:
        if q not in A_L.finals and all(t == q for t in A_L.delta[q]):
            return q
    return None


def _threshold(A_L, sink):
    if sink is None:
        return lambda mask: popcount(mask) == 1
    return lambda mask: popcount(mask) <= 2


def is_constant(A_L: Acceptor, u) -> bool:
    size = len(image(A_L, A_L.states, u))
    return size <= 2 if find_sink(A_L) is not None else size == 1


def _good_pair(sink):
    return lambda c: c[0] == c[1] or sink in c


def has_constant(A_L: Acceptor) -> bool:
    """Pairwise criterion on the pair automaton: every pair of distinct
    non-sink states must reach a singleton or a pair containing the sink."""
    sink = find_sink(A_L)
    if sink is None:
        return is_synchronizing(A_L)
    good = pairs_reaching(A_L, _good_pair(sink))
    others = [q for q in A_L.states if q != sink]
    return all((p, q) in good for i, p in enumerate(others) for q in others[i + 1 :])


def has_constant_oracle(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    """Search the power automaton from the full state set for a subset
    meeting the constant threshold."""
    masks, _ = power_closure(A_L, full_mask(A_L), cap)
    accept = _threshold(A_L, find_sink(A_L))
    return any(accept(m) for m in masks)


def find_constant(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP):
    """Build a constant by repeatedly collapsing two non-sink states of the
    current image; None when the language has no constant."""
    sink = find_sink(A_L)
    if sink is None:
        return bfs_word(A_L, full_mask(A_L), lambda m: popcount(m) == 1, cap)
    if not has_constant(A_L):
        return None
    word: tuple[str, ...] = ()
    current = frozenset(A_L.states)
    while len(current) > 2:
        p, q = sorted(s for s in current if s != sink)[:2]
        step = bfs_word(
            A_L, to_mask((p, q)), lambda m: popcount(m) == 1 or bool(m >> sink & 1), cap
        )
        word += step
        current = image(A_L, current, step)
    return word


def constants_language(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> Language:
    acc, _ = power_acceptor(A_L, full_mask(A_L), _threshold(A_L, find_sink(A_L)), cap)
    return Language.of(acc)


def partial_syn_language(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> Language:
    """Words taking the state set into ``{s, q}`` (``q = s`` allowed)."""
    sink = find_sink(A_L)
    if sink is None:
        raise PreconditionError("partial reset words need a non-accepting sink")
    acc, _ = power_acceptor(
        A_L, full_mask(A_L), lambda m: popcount(m) <= 2 and bool(m >> sink & 1), cap
    )
    return Language.of(acc)


def dead_states(A_L: Acceptor) -> set[int]:
    return set(A_L.states) - coreachable(A_L, A_L.finals)


def complement_contains_right_ideal(A_L: Acceptor) -> bool:
    """Some reachable state cannot reach a final state."""
    live = coreachable(A_L, A_L.finals)
    return any(q not in live for q in reachable(A_L, [A_L.initial]))


def z_nonempty(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    """Whether some word is a factor of no word of ``L``.

    Runs are started from every reachable state at once; ``u`` is a factor
    of ``L`` iff one of them is still live after ``u``.  Dead states never
    revive, so ``Z(L)`` is non-empty iff some configuration holds no live
    state.
    """
    live_mask = to_mask(coreachable(A_L, A_L.finals))
    masks, _ = power_closure(A_L, to_mask(reachable(A_L, [A_L.initial])), cap)
    return any(m & live_mask == 0 for m in masks)


@dataclass(frozen=True)
class CriterionCheck:
    criterion: bool
    direct: bool

    @property
    def agree(self) -> bool:
        return self.criterion == self.direct


def _direct(A_L, cap):
    sync = is_synchronizing(A_L)
    if not sync:
        return False, False
    meets = not is_empty(intersection(A_L, syn_language(A_L, cap)))
    return sync, meets


def prop5_check(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> CriterionCheck:
    """Synchronizing with a reset word inside ``L`` vs. ``C(L)`` non-empty
    and no right ideal inside the complement."""
    sync, meets = _direct(A_L, cap)
    criterion = has_constant(A_L) and not complement_contains_right_ideal(A_L)
    return CriterionCheck(criterion, sync and meets)


def prop6_check(A_L: Acceptor, cap: int = DEFAULT_SUBSET_CAP) -> CriterionCheck:
    """Synchronizing with every reset word outside ``L`` vs. ``Z(L)``
    non-empty and a right ideal inside the complement."""
    sync, meets = _direct(A_L, cap)
    criterion = z_nonempty(A_L, cap) and complement_contains_right_ideal(A_L)
    return CriterionCheck(criterion, sync and not meets)


def require_minimal(A: Acceptor) -> Acceptor:
    M = minimize(A)
    if M.n_states != A.n_states:
        raise PreconditionError("acceptor is not minimal")
    return A


def _canonical(A: Acceptor):
    M = minimize(A)
    return M.n_states, M.delta, M.finals, M


def minimal_acceptors(n: int, alphabet=("a", "b"), with_sink: bool | None = None) -> list[Acceptor]:
    """Every complete minimal acceptor with exactly ``n`` states, one per
    isomorphism class, in canonical numbering.  ``with_sink`` filters on
    the presence of a non-accepting sink."""
    from itertools import product

    alphabet = tuple(alphabet)
    seen = {}
    for table in product(range(n), repeat=n * len(alphabet)):
        rows = [table[q * len(alphabet) : (q + 1) * len(alphabet)] for q in range(n)]
        base = Semiautomaton(alphabet, rows)
        for fmask in range(1 << n):
            A = Acceptor(base, 0, [q for q in range(n) if fmask >> q & 1])
            size, delta, finals, M = _canonical(A)
            if size != n or (delta, finals) in seen:
                continue
            if with_sink is not None and (find_sink(M) is not None) != with_sink:
                continue
            seen[(delta, finals)] = M
    return list(seen.values())


def random_minimal_acceptors(
    seed: int, count: int, n: int = 5, alphabet=("a", "b")
) -> list[Acceptor]:
    """Seeded random minimal acceptors with exactly ``n`` states.

    Even-indexed instances are drawn with state ``n-1`` forced to be a
    non-accepting sink.  Draws that are not minimal are rejected.
    """
    rng = random.Random(seed)
    alphabet = tuple(alphabet)
    out = []
    while len(out) < count:
        sink = len(out) % 2 == 0
        rows = [tuple(rng.randrange(n) for _ in alphabet) for _ in range(n)]
        finals = [q for q in range(n) if rng.random() < 0.5]
        if sink:
            rows[n - 1] = (n - 1,) * len(alphabet)
            finals = [q for q in finals if q != n - 1]
        size, _, _, M = _canonical(Acceptor(Semiautomaton(alphabet, rows), 0, finals))
        if size == n:
            out.append(M)
    return out
