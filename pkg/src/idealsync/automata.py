"""Complete deterministic automata and their structural algebra.

States are dense integers ``0..n-1``.  A word is any sequence of symbol
tokens; a plain ``str`` works when every token is a single character.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import AlphabetMismatch, AutFormatError, BudgetExceeded, PreconditionError

MAX_CONGRUENCE_STATES = 10


@dataclass(frozen=True)
class Semiautomaton:
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if not self.alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbol")
        if not self.delta:
            raise ValueError("at least one state is required")
        n, k = len(self.delta), len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"incomplete transition table at state {q}")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"transition target {t} out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    @property
    def base(self) -> "Semiautomaton":
        return self

    def letter(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise ValueError(f"symbol {symbol!r} not in alphabet") from None

    def encode(self, word: Iterable[str]) -> tuple[int, ...]:
        index = {s: i for i, s in enumerate(self.alphabet)}
        try:
            return tuple(index[s] for s in word)
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def decode(self, letters: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.alphabet[a] for a in letters)

    def flat(self) -> list[int]:
        return [t for row in self.delta for t in row]


@dataclass(frozen=True)
class Acceptor:
    base: Semiautomaton
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        n = self.base.n_states
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for f in self.finals:
            if not 0 <= f < n:
                raise ValueError(f"final state {f} out of range")

    @property
    def alphabet(self):
        return self.base.alphabet

    @property
    def delta(self):
        return self.base.delta

    @property
    def n_states(self):
        return self.base.n_states

    @property
    def states(self):
        return self.base.states

    def encode(self, word):
        return self.base.encode(word)

    def decode(self, letters):
        return self.base.decode(letters)

    def accepts(self, word) -> bool:
        return run(self.base, self.initial, word) in self.finals

    __contains__ = accepts


def semiautomaton(alphabet, delta) -> Semiautomaton:
    return Semiautomaton(tuple(alphabet), tuple(tuple(r) for r in delta))


def acceptor(alphabet, delta, initial, finals) -> Acceptor:
    return Acceptor(semiautomaton(alphabet, delta), initial, frozenset(finals))


# -- running ---------------------------------------------------------------


def run(A, q: int, word) -> int:
    """Fold ``word`` over ``q`` left to right."""
    base = A.base
    delta = base.delta
    for a in base.encode(word):
        q = delta[q][a]
    return q


def run_letters(delta, q, letters):
    for a in letters:
        q = delta[q][a]
    return q


def image(A, states: Iterable[int], word) -> frozenset[int]:
    base = A.base
    delta = base.delta
    current = set(states)
    for a in base.encode(word):
        current = {delta[q][a] for q in current}
    return frozenset(current)


# -- graph structure ---------------------------------------------------------


def reachable(A, sources: Iterable[int]) -> list[int]:
    """States reachable from ``sources`` in breadth-first order."""
    delta = A.base.delta
    order = list(dict.fromkeys(sources))
    seen = set(order)
    i = 0
    while i < len(order):
        for t in delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def coreachable(A, targets: Iterable[int]) -> set[int]:
    delta = A.base.delta
    preds = [[] for _ in delta]
    for q, row in enumerate(delta):
        for t in row:
            preds[t].append(q)
    seen = set(targets)
    stack = list(seen)
    while stack:
        for p in preds[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def is_strongly_connected(A) -> bool:
    n = A.base.n_states
    return len(reachable(A, [0])) == n and len(coreachable(A, [0])) == n


# -- minimization ------------------------------------------------------------


def renumber(A: Acceptor, order: Sequence[int]) -> Acceptor:
    """Restrict ``A`` to the states in ``order`` (closed under delta) and
    relabel them by their position."""
    new = {q: i for i, q in enumerate(order)}
    delta = A.base.delta
    table = [tuple(new[t] for t in delta[q]) for q in order]
    finals = frozenset(new[q] for q in order if q in A.finals)
    return Acceptor(Semiautomaton(A.alphabet, table), new[A.initial], finals)


def equivalence_classes(A: Acceptor, states: Sequence[int]) -> dict[int, int]:
    """Moore refinement of right-language equivalence on ``states``."""
    delta = A.base.delta
    block = {q: int(q in A.finals) for q in states}
    count = len(set(block.values()))
    while True:
        signatures = {}
        refined = {}
        for q in states:
            sig = (block[q],) + tuple(block[t] for t in delta[q])
            refined[q] = signatures.setdefault(sig, len(signatures))
        if len(signatures) == count:
            return refined
        block, count = refined, len(signatures)


def minimize(A: Acceptor) -> Acceptor:
    """Reachable, state-merged acceptor in canonical breadth-first numbering."""
    live = reachable(A, [A.initial])
    block = equivalence_classes(A, live)
    rep = {}
    for q in live:
        rep.setdefault(block[q], q)
    delta = A.base.delta
    merged = [
        tuple(rep[block[t]] for t in delta[q]) if q in block else delta[q]
        for q in range(A.n_states)
    ]
    quotiented = Acceptor(
        Semiautomaton(A.alphabet, merged),
        rep[block[A.initial]],
        frozenset(rep[block[f]] for f in A.finals if f in block),
    )
    return renumber(quotiented, reachable(quotiented, [quotiented.initial]))


# -- partitions and congruences --------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Set partition of ``0..n-1`` with blocks ordered by least element."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = sorted((frozenset(b) for b in self.blocks), key=min)
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(len(seen))):
            raise ValueError("blocks must cover 0..n-1")
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, set[int]] = {}
        for q, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(q)
        return cls(tuple(frozenset(g) for g in groups.values()))

    @property
    def index(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def labels(self) -> tuple[int, ...]:
        out = [0] * self.size
        for i, b in enumerate(self.blocks):
            for q in b:
                out[q] = i
        return tuple(out)


def is_congruence(A, P: Partition) -> bool:
    base = A.base
    if P.size != base.n_states:
        raise PreconditionError("partition does not cover the state set")
    lab = P.labels()
    for blk in P.blocks:
        for a in range(len(base.alphabet)):
            if len({lab[base.delta[q][a]] for q in blk}) > 1:
                return False
    return True


def quotient(A, P: Partition):
    """Quotient by a congruence; acceptors keep ``[q0]`` and ``F/rho``."""
    if not is_congruence(A, P):
        raise PreconditionError("partition is not a congruence")
    base = A.base
    lab = P.labels()
    table = [tuple(lab[t] for t in base.delta[min(b)]) for b in P.blocks]
    qbase = Semiautomaton(base.alphabet, table)
    if isinstance(A, Acceptor):
        return Acceptor(qbase, lab[A.initial], frozenset(lab[f] for f in A.finals))
    return qbase


def _restricted_growth(n: int, max_blocks: int) -> Iterator[list[int]]:
    labels = [0] * n

    def extend(i, used):
        if i == n:
            yield labels
            return
        for v in range(min(used + 1, max_blocks)):
            labels[i] = v
            yield from extend(i + 1, max(used, v + 1))

    if n:
        yield from extend(1, 1)


def enumerate_congruences(A, max_index: int) -> Iterator[Partition]:
    """Every congruence of index at most ``max_index``, each exactly once."""
    base = A.base
    n = base.n_states
    if max_index < 1:
        raise PreconditionError("max_index must be at least 1")
    if n > MAX_CONGRUENCE_STATES:
        raise PreconditionError(
            f"congruence enumeration is limited to {MAX_CONGRUENCE_STATES} states"
        )
    delta = base.delta
    k = len(base.alphabet)
    for lab in _restricted_growth(n, max_index):
        ok = True
        for a in range(k):
            first = {}
            for q in range(n):
                img = lab[delta[q][a]]
                if first.setdefault(lab[q], img) != img:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Partition.from_labels(lab)


def congruence_closure(A, labels: Sequence[int], p: int, q: int) -> tuple[int, ...]:
    """Finest congruence containing the one given by ``labels`` and (p, q)."""
    delta = A.base.delta
    parent = list(range(len(delta)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []
    first = {}
    for s, lab in enumerate(labels):
        if lab in first:
            pending.append((first[lab], s))
        else:
            first[lab] = s
    pending.append((p, q))
    while pending:
        x, y = pending.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for a in range(len(delta[0])):
            pending.append((delta[x][a], delta[y][a]))
    roots = {}
    return tuple(roots.setdefault(find(s), len(roots)) for s in range(len(delta)))


def congruence_lattice(A, max_index: int | None = None, budget: int = 100_000):
    """All congruences, as joins of principal ones, for automata too big for
    partition enumeration.  Yields those of index <= ``max_index``."""
    n = A.base.n_states
    start = tuple(range(n))
    seen = {start}
    queue = deque([start])
    while queue:
        labels = queue.popleft()
        index = max(labels) + 1
        if max_index is None or index <= max_index:
            yield Partition.from_labels(labels)
        for p in range(n):
            for q in range(p + 1, n):
                if labels[p] == labels[q]:
                    continue
                nxt = congruence_closure(A, labels, p, q)
                if nxt not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(f"more than {budget} congruences")
                    seen.add(nxt)
                    queue.append(nxt)


def congruences_from_root(A, max_index: int, budget: int = 1_000_000) -> Iterator[Partition]:
    """Every congruence of index at most ``max_index`` of an automaton whose
    states are all reachable from its root (the initial state, or 0).

    A quotient map is forced by the quotient table once the root's class is
    fixed, so the search branches only on quotient transitions, giving each
    congruence once in first-appearance labelling.
    """
    base = A.base
    delta = base.delta
    n, k = len(delta), len(base.alphabet)
    root = A.initial if isinstance(A, Acceptor) else 0
    if len(reachable(A, [root])) != n:
        raise PreconditionError("not every state is reachable from the root")
    if max_index < 1:
        raise PreconditionError("max_index must be at least 1")
    order = reachable(A, [root])
    steps = [(q, a) for q in order for a in range(k)]
    visits = [0]

    def search(pos, phi, eta, used):
        visits[0] += 1
        if visits[0] > budget:
            raise BudgetExceeded(f"congruence search exceeded {budget} steps")
        while pos < len(steps):
            q, a = steps[pos]
            t = delta[q][a]
            key = (phi[q], a)
            if key in eta:
                if phi[t] is None:
                    phi[t] = eta[key]
                elif phi[t] != eta[key]:
                    return
            elif phi[t] is not None:
                eta[key] = phi[t]
            else:
                for v in range(min(used + 1, max_index)):
                    yield from search(
                        pos,
                        phi[:t] + [v] + phi[t + 1 :],
                        {**eta, key: v},
                        max(used, v + 1),
                    )
                return
            pos += 1
        yield Partition.from_labels(phi)

    phi = [None] * n
    phi[root] = 0
    yield from search(0, phi, {}, 1)


# -- homomorphisms and isomorphism ------------------------------------------


@dataclass(frozen=True)
class HomomorphismCheck:
    ok: bool
    surjective: bool

    def __bool__(self):
        return self.ok


def _same_alphabet(A, B):
    if A.base.alphabet != B.base.alphabet:
        raise AlphabetMismatch(f"{A.base.alphabet} != {B.base.alphabet}")


def check_homomorphism(phi: Sequence[int], A, B) -> HomomorphismCheck:
    _same_alphabet(A, B)
    a_delta, b_delta = A.base.delta, B.base.delta
    if len(phi) != len(a_delta) or any(not 0 <= t < len(b_delta) for t in phi):
        return HomomorphismCheck(False, False)
    ok = all(
        phi[a_delta[q][a]] == b_delta[phi[q]][a]
        for q in range(len(a_delta))
        for a in range(len(A.base.alphabet))
    )
    return HomomorphismCheck(ok, ok and set(phi) == set(range(len(b_delta))))


def kernel(phi: Sequence[int]) -> Partition:
    return Partition.from_labels(phi)


def homomorphic_image(phi: Sequence[int], B) -> Semiautomaton:
    """The sub-automaton of ``B`` on ``phi``'s image, states in sorted order."""
    order = sorted(set(phi))
    new = {t: i for i, t in enumerate(order)}
    delta = B.base.delta
    return Semiautomaton(
        B.base.alphabet, [tuple(new[s] for s in delta[t]) for t in order]
    )


def _extend_iso(a_delta, b_delta, a_fin, b_fin, mapping, used):
    """Propagate ``mapping`` along transitions; then branch on unmapped states."""
    mapping = dict(mapping)
    used = set(used)
    queue = deque(mapping)
    k = len(a_delta[0])
    while queue:
        p = queue.popleft()
        q = mapping[p]
        for a in range(k):
            s, t = a_delta[p][a], b_delta[q][a]
            if s in mapping:
                if mapping[s] != t:
                    return None
            else:
                if t in used or (s in a_fin) != (t in b_fin):
                    return None
                mapping[s] = t
                used.add(t)
                queue.append(s)
    if len(mapping) == len(a_delta):
        return mapping
    p = min(s for s in range(len(a_delta)) if s not in mapping)
    for t in range(len(b_delta)):
        if t in used or (p in a_fin) != (t in b_fin):
            continue
        found = _extend_iso(
            a_delta, b_delta, a_fin, b_fin, {**mapping, p: t}, used | {t}
        )
        if found is not None:
            return found
    return None


def find_isomorphism(A, B) -> dict[int, int] | None:
    """A state bijection A -> B commuting with every letter (and with the
    initial/final data when both are acceptors), or None."""
    _same_alphabet(A, B)
    a_delta, b_delta = A.base.delta, B.base.delta
    if len(a_delta) != len(b_delta):
        return None
    acceptors = isinstance(A, Acceptor) and isinstance(B, Acceptor)
    a_fin = A.finals if acceptors else frozenset()
    b_fin = B.finals if acceptors else frozenset()
    if len(a_fin) != len(b_fin):
        return None
    if acceptors:
        if (A.initial in a_fin) != (B.initial in b_fin):
            return None
        return _extend_iso(
            a_delta, b_delta, a_fin, b_fin, {A.initial: B.initial}, {B.initial}
        )
    for t in range(len(b_delta)):
        found = _extend_iso(a_delta, b_delta, a_fin, b_fin, {0: t}, {t})
        if found is not None:
            return found
    return None


def is_isomorphic(A, B) -> bool:
    return find_isomorphism(A, B) is not None


# -- .aut and DOT ------------------------------------------------------------


def _ids(tokens, lineno, n=None):
    out = []
    for tok in tokens:
        if not tok.isdigit():
            raise AutFormatError(f"expected a decimal state id, got {tok!r}", lineno)
        v = int(tok)
        if n is not None and v >= n:
            raise AutFormatError(f"state {v} out of range 0..{n - 1}", lineno)
        out.append(v)
    return out


def parse_automaton(text: str | Iterable[str]):
    """Parse ``.aut`` text; returns an Acceptor when ``initial:`` is present."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = {}
    rows: dict[int, list[int]] = {}
    in_table = False
    alphabet = n = None
    last_line = 0
    for lineno, raw in enumerate(lines, 1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise AutFormatError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        tokens = rest.split()
        if in_table:
            if key in ("alphabet", "states", "initial", "finals", "table"):
                raise AutFormatError(f"header {key!r} after table", lineno)
            (state,) = _ids([key], lineno, n)
            if state in rows:
                raise AutFormatError(f"duplicate row for state {state}", lineno)
            if len(tokens) != len(alphabet):
                raise AutFormatError(
                    f"row for state {state} has {len(tokens)} entries, "
                    f"expected {len(alphabet)}",
                    lineno,
                )
            rows[state] = _ids(tokens, lineno, n)
            continue
        if key.isdigit():
            raise AutFormatError(f"transition row for state {key} before 'table:'", lineno)
        if key in header:
            raise AutFormatError(f"duplicate header {key!r}", lineno)
        if key == "alphabet":
            if not tokens:
                raise AutFormatError("empty alphabet", lineno)
            if len(set(tokens)) != len(tokens):
                raise AutFormatError("duplicate alphabet symbol", lineno)
            alphabet = tuple(tokens)
        elif key == "states":
            vals = _ids(tokens, lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise AutFormatError("'states' takes one positive count", lineno)
            n = vals[0]
        elif key in ("initial", "finals"):
            pass
        elif key == "table":
            if tokens:
                raise AutFormatError("'table:' takes no value", lineno)
            if alphabet is None or n is None:
                raise AutFormatError("'alphabet' and 'states' must precede 'table'", lineno)
            in_table = True
        else:
            raise AutFormatError(f"unknown header {key!r}", lineno)
        header[key] = (tokens, lineno)
    if not in_table:
        raise AutFormatError("missing 'table:' section", last_line or None)
    missing = [q for q in range(n) if q not in rows]
    if missing:
        raise AutFormatError(
            f"incomplete transition table: no row for state {missing[0]}", last_line
        )
    base = Semiautomaton(alphabet, [rows[q] for q in range(n)])
    if "initial" not in header:
        if "finals" in header:
            raise AutFormatError("'finals' given without 'initial'", header["finals"][1])
        return base
    tokens, lineno = header["initial"]
    init = _ids(tokens, lineno, n)
    if len(init) != 1:
        raise AutFormatError("'initial' takes exactly one state", lineno)
    finals = frozenset()
    if "finals" in header:
        tokens, lineno = header["finals"]
        finals = frozenset(_ids(tokens, lineno, n))
    return Acceptor(base, init[0], finals)


def load_automaton(path):
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def serialize_automaton(A) -> str:
    base = A.base
    lines = [f"alphabet: {' '.join(base.alphabet)}", f"states: {base.n_states}"]
    if isinstance(A, Acceptor):
        lines.append(f"initial: {A.initial}")
        if A.finals:
            lines.append("finals: " + " ".join(map(str, sorted(A.finals))))
    lines.append("table:")
    for q, row in enumerate(base.delta):
        lines.append(f"{q}: " + " ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def to_dot(A, name: str = "A") -> str:
    base = A.base
    is_acc = isinstance(A, Acceptor)
    out = [f"digraph {name} {{", "  rankdir=LR;"]
    if is_acc:
        out.append('  __start [shape=none, label="", width=0];')
    for q in base.states:
        shape = "doublecircle" if is_acc and q in A.finals else "circle"
        out.append(f"  {q} [shape={shape}];")
    if is_acc:
        out.append(f"  __start -> {A.initial};")
    for q, row in enumerate(base.delta):
        for a, t in enumerate(row):
            out.append(f'  {q} -> {t} [label="{base.alphabet[a]}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def all_words(alphabet: Sequence[str], max_len: int, min_len: int = 0):
    """Words over ``alphabet`` by length, then alphabet order."""
    for length in range(min_len, max_len + 1):
        yield from product(alphabet, repeat=length)
