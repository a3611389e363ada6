"""Words as token tuples, and the longest suffix-that-is-a-prefix operator."""

from __future__ import annotations

from typing import Sequence

Word = tuple[str, ...]


def as_word(word: Sequence[str]) -> Word:
    return tuple(word)


def is_prefix(u, w) -> bool:
    return len(u) <= len(w) and tuple(w[: len(u)]) == tuple(u)


def is_suffix(u, w) -> bool:
    return len(u) <= len(w) and tuple(w[len(w) - len(u) :]) == tuple(u)


def is_factor(u, w) -> bool:
    u, w = tuple(u), tuple(w)
    return any(w[i : i + len(u)] == u for i in range(len(w) - len(u) + 1))


def failure_table(w: Sequence[str]) -> list[int]:
    """``fail[i]`` is the length of the longest proper border of ``w[:i]``
    (``fail[0]`` is unused and set to 0)."""
    w = tuple(w)
    fail = [0] * (len(w) + 1)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k]
        if w[i] == w[k]:
            k += 1
        fail[i + 1] = k
    return fail


def prefix_step(w: Word, fail: list[int], i: int, symbol: str) -> int:
    """Length of ``(w[:i] + symbol) ^s w`` given that ``w[:i]`` is the
    current longest suffix-prefix."""
    n = len(w)
    while i and (i == n or w[i] != symbol):
        i = fail[i]
    if i < n and w[i] == symbol:
        i += 1
    return i


def suffix_prefix_match(u: Sequence[str], w: Sequence[str]) -> Word:
    """Longest suffix of ``u`` that is also a prefix of ``w``."""
    w = tuple(w)
    fail = failure_table(w)
    i = 0
    for symbol in u:
        i = prefix_step(w, fail, i, symbol)
    return w[:i]


def prefix_table(w: Sequence[str], alphabet: Sequence[str]) -> list[tuple[int, ...]]:
    """Transition table on prefix lengths ``0..|w|``: ``i --a--> |w[:i]a ^s w|``."""
    w = tuple(w)
    fail = failure_table(w)
    return [tuple(prefix_step(w, fail, i, a) for a in alphabet) for i in range(len(w) + 1)]
