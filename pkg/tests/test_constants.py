import itertools

import pytest

from idealsync.automata import acceptor, all_words, coreachable, image, minimize, reachable
from idealsync.aw import build_aw
from idealsync.constants import (
    complement_contains_right_ideal,
    constants_language,
    find_constant,
    find_sink,
    has_constant,
    has_constant_oracle,
    is_constant,
    minimal_acceptors,
    partial_syn_language,
    prop5_check,
    prop6_check,
    random_minimal_acceptors,
    z_nonempty,
)
from idealsync.errors import PreconditionError
from idealsync.languages import Language, includes, left_principal, universal
from idealsync.synchro import is_synchronizing, power_acceptor, resets, syn_language, to_mask

AB = ("a", "b")
SINGLE_A = acceptor(AB, [(1, 2), (2, 2), (2, 2)], 0, [1])
ODD_A = acceptor("a", [(1,), (0,)], 0, [1])
UNIVERSAL = acceptor(AB, [(0, 0)], 0, [0])


def test_sink_detection():
    assert find_sink(SINGLE_A) == 2
    assert find_sink(ODD_A) is None
    assert find_sink(UNIVERSAL) is None  # accepting, so not a dead sink


def test_is_constant_examples():
    assert is_constant(SINGLE_A, "a")
    assert image(SINGLE_A, SINGLE_A.states, "a") == {1, 2}
    assert not is_constant(ODD_A, "a")
    A = build_aw("aba", AB)
    for u in all_words(AB, 4):
        if resets(A, u):
            assert is_constant(A, u)


def test_has_constant_examples():
    assert has_constant(SINGLE_A)
    assert has_constant(build_aw("aba", AB))
    assert not has_constant(ODD_A)


def test_split_permutation_components():
    # {0, 1} is swapped by a; {2, 3} is a closed component on which both
    # letters permute, so the pair {2, 3} can never be squeezed; 4 is the sink
    A = acceptor(AB, [(1, 2), (0, 4), (3, 2), (2, 3), (4, 4)], 0, [0, 2])
    assert minimize(A).n_states == 5
    assert find_sink(A) == 4
    assert has_constant(A) is False
    assert has_constant_oracle(A) is False
    assert find_constant(A) is None


def test_find_constant_on_synchronizing():
    A = build_aw("abba", AB)
    u = find_constant(A)
    assert len(image(A, A.states, u)) == 1


def test_constants_language():
    A = build_aw("aba", AB)
    assert constants_language(A) == syn_language(A)
    assert ("a", "b", "a") in constants_language(A)
    assert ("a",) in constants_language(SINGLE_A)


def test_partial_syn_language():
    P = partial_syn_language(SINGLE_A)
    assert ("a",) in P and ("b",) in P and () not in P
    with pytest.raises(PreconditionError):
        partial_syn_language(ODD_A)


def test_z_and_right_ideal_examples():
    L = left_principal("ab", AB).acceptor
    assert not complement_contains_right_ideal(L)
    assert z_nonempty(SINGLE_A) and complement_contains_right_ideal(SINGLE_A)
    assert not z_nonempty(UNIVERSAL)
    assert image(SINGLE_A, [0, 1], "b") == {2}


def test_prop_examples():
    p5 = prop5_check(build_aw("aba", AB))
    assert p5.criterion and p5.direct
    p6 = prop6_check(SINGLE_A)
    assert p6.criterion and p6.direct
    p5 = prop5_check(UNIVERSAL)
    assert p5.criterion and p5.direct


def corpus():
    return (
        minimal_acceptors(1)
        + minimal_acceptors(2)
        + minimal_acceptors(3, with_sink=True)
        + random_minimal_acceptors(7, 120)
    )


def test_corpus_shapes():
    three = minimal_acceptors(3, with_sink=True)
    assert three and all(find_sink(A) is not None and A.n_states == 3 for A in three)
    rand = random_minimal_acceptors(7, 40)
    assert all(A.n_states == 5 for A in rand)
    assert sum(find_sink(A) is not None for A in rand) >= 20
    assert rand == random_minimal_acceptors(7, 40)


def test_decisions_agree_on_corpus():
    for A in corpus():
        verdict = has_constant(A)
        assert verdict == has_constant_oracle(A)
        if verdict:
            assert is_constant(A, find_constant(A))
        p5, p6 = prop5_check(A), prop6_check(A)
        assert p5.agree and p6.agree
        assert [p5.direct, p6.direct, not is_synchronizing(A)].count(True) == 1


def test_constants_contain_z():
    for A in corpus()[:150]:
        C = constants_language(A)
        # Z(L) as a language: words after which no run from a reachable state is live
        live = to_mask(coreachable(A, A.finals))
        Z, _ = power_acceptor(A, to_mask(reachable(A, [A.initial])), lambda m: m & live == 0)
        assert includes(C, Language.of(Z))
        assert z_nonempty(A) == bool(Z.finals)


def test_constant_definition_probe():
    """Bounded check of u1 u u2, u3 u u4 in L  =>  u1 u u4 in L."""
    short = list(all_words(AB, 2))
    for A in minimal_acceptors(3, with_sink=True)[:40] + [build_aw("aba", AB), SINGLE_A]:
        C = constants_language(A)
        for u in all_words(AB, 3):
            if u not in C:
                continue
            for u1, u2 in itertools.product(short, repeat=2):
                if not A.accepts(u1 + u + u2):
                    continue
                for u3, u4 in itertools.product(short, repeat=2):
                    if A.accepts(u3 + u + u4):
                        assert A.accepts(u1 + u + u4)
