import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealsync.automata import all_words, image, semiautomaton
from idealsync.aw import build_aw
from idealsync.errors import BudgetExceeded, PreconditionError
from idealsync.languages import equals, is_empty, principal_ideal, shortest_word
from idealsync.synchro import (
    cerny_automaton,
    deficiency,
    enumerate_semiautomata,
    extend_deficiency,
    is_finitely_generated,
    is_synchronizing,
    maximal_fixed_set,
    minimal_reset_words,
    random_semiautomaton,
    rc_search,
    resets,
    scsa_corpus,
    shortest_reset,
    syn_language,
    theorem4_witness,
    theorem8_probe,
)
from idealsync.automata import is_strongly_connected

from conftest import semiautomata

AB = ("a", "b")


def brute_threshold(A, max_len):
    for u in all_words(A.alphabet, max_len):
        if resets(A, u):
            return len(u)
    return None


def test_is_synchronizing_examples():
    assert is_synchronizing(semiautomaton(AB, [(0, 0)]))
    assert is_synchronizing(cerny_automaton(4))
    assert not is_synchronizing(semiautomaton(AB, [(1, 0), (0, 1)]))


def test_sync_iff_syn_nonempty_exhaustive():
    for n in (2, 3):
        for A in enumerate_semiautomata(n, AB):
            assert is_synchronizing(A) == (not is_empty(syn_language(A)))


@pytest.mark.parametrize("n, expected", [(3, 4), (4, 9), (5, 16)])
def test_cerny_thresholds(n, expected, backend):
    report = shortest_reset(cerny_automaton(n))
    assert report.synchronizing and report.threshold == expected
    assert len(report.shortest) == expected
    assert resets(cerny_automaton(n), report.shortest)


@given(semiautomata(max_states=4))
def test_shortest_reset_matches_brute_force(A):
    report = shortest_reset(A)
    expected = brute_threshold(A, 9)
    assert report.threshold == expected
    if expected is not None:
        # lexicographically least among the shortest
        assert report.shortest == next(
            u for u in all_words(AB, expected, expected) if resets(A, u)
        )
        assert expected <= (A.n_states - 1) ** 2


def test_non_synchronizing_report():
    report = shortest_reset(semiautomaton(AB, [(1, 0), (0, 1)]))
    assert not report.synchronizing and report.shortest is None and report.threshold is None


def test_syn_language_examples():
    A = build_aw("aba", AB)
    assert ("a", "a") in syn_language(A)
    assert is_empty(syn_language(semiautomaton(AB, [(1, 1), (0, 0)])))


def test_aw_threshold_at_most_length():
    for w in all_words(AB, 5, 1):
        assert shortest_reset(build_aw(w, AB)).threshold <= len(w)


def test_maximal_fixed_set_examples():
    C4 = cerny_automaton(4)
    assert maximal_fixed_set(C4, "a") == (frozenset(range(4)), 0)
    assert maximal_fixed_set(C4, "b") == (frozenset({1, 2, 3}), 1)


@given(semiautomata(max_states=6), st.lists(st.sampled_from(AB), min_size=1, max_size=4))
def test_maximal_fixed_set_laws(A, u):
    m, k = maximal_fixed_set(A, u)
    assert image(A, m, u) == m
    assert k <= A.n_states - len(m)
    for ell in (2, 3):
        assert maximal_fixed_set(A, u * ell)[0] == m


def test_deficiency_examples():
    assert deficiency(cerny_automaton(4), "") == 0
    assert deficiency(cerny_automaton(4), "b") == 1


def test_extend_deficiency_random():
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        A = random_semiautomaton(rng, rng.choice((4, 5)), AB)
        if not is_synchronizing(A):
            continue
        n = A.n_states
        words = list(all_words(AB, 3, 1))
        for u in words:
            k = deficiency(A, u)
            if not 1 < k < n - 1:
                continue
            for v in words:
                if deficiency(A, v) != k:
                    continue
                tau = extend_deficiency(A, u, v)
                assert len(tau) <= k + 1
                assert deficiency(A, tuple(u) + tau + tuple(v)) > k
                checked += 1
    assert checked > 50


def test_extend_deficiency_preconditions():
    C4 = cerny_automaton(4)
    with pytest.raises(PreconditionError):
        extend_deficiency(C4, "b", "b")  # deficiency 1
    A = semiautomaton(AB, [(0, 0), (0, 0), (0, 2)])
    with pytest.raises(PreconditionError):
        extend_deficiency(A, "a", "a")  # already resets


def test_theorem4_on_aw_aba():
    A = build_aw("aba", AB)
    # every short word has a power that resets A_aba
    for v in all_words(AB, 3, 1):
        verdict = theorem4_witness(A, v)
        assert verdict.kind == "PowerResets"
        assert resets(A, verdict.word)
    assert maximal_fixed_set(A, "b") == (frozenset([0]), 2)
    assert theorem4_witness(A, "b").k == 2


def test_theorem4_sandwich():
    # a fixes 0 and 2, so m(a) = {0, 2}; b then merges them
    A = semiautomaton(AB, [(0, 0), (0, 0), (2, 0)])
    verdict = theorem4_witness(A, "a")
    assert verdict.kind == "Sandwich"
    assert verdict.k == 1 and verdict.tau == ("b",)
    assert verdict.word == ("a", "b", "a") and resets(A, verdict.word)


def test_theorem4_refuses_non_finitely_generated():
    C4 = cerny_automaton(4)
    assert not is_finitely_generated(C4)
    with pytest.raises(PreconditionError):
        theorem4_witness(C4, "a")


def test_minimal_reset_words():
    for w in all_words(AB, 6, 1):
        A = build_aw(w, AB)
        assert is_finitely_generated(A)
        syn_min = minimal_reset_words(A)
        longest = max((len(u) for u in all_words(AB, len(w) + 2) if u in syn_min), default=0)
        assert longest <= len(w)


def test_principal_ideal_minimal_words():
    M = principal_ideal("ab", AB).acceptor
    syn_min = minimal_reset_words(M)
    words = [u for u in all_words(AB, 5) if u in syn_min]
    assert words == [("a", "b")]
    # brute-force filter of short reset words agrees
    short = [u for u in all_words(AB, 3) if resets(M, u)]
    minimal = [
        u for u in short
        if not any(resets(M, u[i:]) for i in range(1, len(u)))
        and not any(resets(M, u[:i]) for i in range(len(u)))
    ]
    assert minimal == [("a", "b")]


def test_theorem8_finitely_generated_agrees():
    for A in enumerate_semiautomata(3, AB):
        if is_synchronizing(A) and is_finitely_generated(A):
            report = theorem8_probe(A)
            assert not report.violations
    report = theorem8_probe(semiautomaton(AB, [(0, 0), (0, 0), (0, 2)]))
    assert report.finitely_generated and report.checked > 0 and not report.violations


def test_theorem8_violation_needs_infinite_generation():
    A = semiautomaton(AB, [(0, 0), (0, 1), (1, 2)])
    report = theorem8_probe(A)
    assert not report.finitely_generated
    assert report.violations and report.consistent


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_semiautomata(2, AB)) == 16
    tables = [A.delta for A in enumerate_semiautomata(3, AB)]
    assert len(tables) == 729 and len(set(tables)) == 729
    with pytest.raises(BudgetExceeded):
        next(enumerate_semiautomata(4, AB, budget=1000))


def test_scsa_corpus_is_deterministic():
    a = scsa_corpus(3, 20)
    assert a == scsa_corpus(3, 20)
    assert all(is_synchronizing(A) and is_strongly_connected(A) for A in a)
    assert a != scsa_corpus(4, 20)


@pytest.mark.parametrize("w", ["ab", "ba", "aa", "bb"])
def test_rc_search_two_letter_words(w, backend):
    report = rc_search(w, AB, 3)
    assert report.counts["2"]["witnesses"] == 0
    assert report.counts["3"]["witnesses"] >= 1
    for item in report.witnesses["3"]:
        from idealsync.automata import parse_automaton

        assert equals(syn_language(parse_automaton(item["aut"])), principal_ideal(w, AB))


def test_rc_search_single_letter():
    report = rc_search("a", AB, 2)
    assert report.counts["1"]["witnesses"] == 0
    assert report.counts["2"]["witnesses"] >= 1


def test_rc_search_report_shape():
    d = rc_search("ab", AB, 2).as_dict()
    assert list(d) == ["query", "parameters", "witnesses", "counts", "elapsed_ms"]
    with pytest.raises(BudgetExceeded):
        rc_search("ab", AB, 3, budget=100)
