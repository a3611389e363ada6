"""Acceptance suite: one test per criterion, each under its time limit.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with the
elapsed time and the figures it measured.  The line bypasses output
capture, so a plain ``pytest -v`` run doubles as the report.
"""

import random
import time

from idealsync.automata import all_words, is_isomorphic, is_strongly_connected, minimize
from idealsync.aw import build_aw, verify_aw
from idealsync.constants import (
    find_constant,
    has_constant,
    has_constant_oracle,
    is_constant,
    minimal_acceptors,
    prop5_check,
    prop6_check,
    random_minimal_acceptors,
)
from idealsync.decomp import (
    automaton_of_decomposition,
    cerny_probes,
    extract_decomposition,
    lift,
    verify_decomposition,
    verify_lift,
)
from idealsync.synchro import (
    cerny_automaton,
    is_finitely_generated,
    is_synchronizing,
    rc_search,
    resets,
    scsa_corpus,
    shortest_reset,
    theorem4_witness,
)
from idealsync.syntactic import syntactic_complexity
from idealsync.words import suffix_prefix_match

AB = ("a", "b")
CONSTANTS_SEED = 1
DECOMP_SEED = 7
LIFT_SEED = 11


def aw_words():
    return list(all_words(AB, 6, 1))


def constants_corpus():
    return minimal_acceptors(3, AB, with_sink=True) + random_minimal_acceptors(CONSTANTS_SEED, 500)


def decomp_corpus():
    return scsa_corpus(DECOMP_SEED, 100, 5)


def lift_corpus():
    return scsa_corpus(LIFT_SEED, 50, 5)


def report(capsys, number, ok, elapsed, limit, detail):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    with capsys.disabled():
        print(f"\nACCEPTANCE {number:>2} {status}  {elapsed:7.2f}s / {limit:g}s  {detail}")
    assert ok, detail
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_aw_suite(capsys):
    with Timer() as t:
        words = aw_words()
        failed = [("".join(w), verify_aw(w, AB).failures) for w in words]
        failed = [f for f in failed if f[1]]
        # canonical minimization is idempotent and keeps every state
        not_canonical = [w for w in words if minimize(minimize(build_aw(w, AB))) != minimize(build_aw(w, AB))]
    ok = len(words) == 126 and not failed and not not_canonical
    report(capsys, 1, ok, t.elapsed, 5, f"{len(words)} words, failures={failed[:3]}")


def match_oracle(u, w):
    for k in range(min(len(u), len(w)), -1, -1):
        if u[len(u) - k :] == w[:k]:
            return u[len(u) - k :]
    return ()


def test_criterion_02_suffix_prefix_match(capsys):
    with Timer() as t:
        words = list(all_words(AB, 6))
        mismatches = sum(
            suffix_prefix_match(u, w) != match_oracle(u, w) for u in words for w in words
        )
        rng = random.Random(2)
        identity_failures = 0
        for _ in range(1000):
            u, v, w = (tuple(rng.choice(AB) for _ in range(rng.randint(0, 8))) for _ in range(3))
            lhs = suffix_prefix_match(u + v, w)
            if lhs != suffix_prefix_match(suffix_prefix_match(u, w) + v, w):
                identity_failures += 1
            if len(v) >= len(w) and lhs != suffix_prefix_match(v, w):
                identity_failures += 1
    ok = mismatches == 0 and identity_failures == 0
    detail = f"{len(words) ** 2} pairs, mismatches={mismatches}, identity failures={identity_failures}"
    report(capsys, 2, ok, t.elapsed, 5, detail)


def test_criterion_03_syntactic_complexity(capsys):
    with Timer() as t:
        results = {w: syntactic_complexity(w, AB) for w in all_words(AB, 5, 1)}
    wrong = ["".join(w) for w, r in results.items() if not r.match]
    sigma = [results[tuple(w)].oracle for w in ("a", "ab", "aba")]
    ok = len(results) == 62 and not wrong and sigma == [2, 4, 7]
    report(capsys, 3, ok, t.elapsed, 30, f"{len(results)} words, mismatches={wrong}, sigma(a,ab,aba)={sigma}")


def test_criterion_04_reset_complexity_search(capsys, backend):
    counts = {}
    with Timer() as t:
        for w in ("ab", "ba", "aa", "bb"):
            c = rc_search(w, AB, 3).counts
            counts[w] = [c[str(n)]["witnesses"] for n in (1, 2, 3)]
        for w in ("aba", "aab"):
            c = rc_search(w, AB, 4).counts
            counts[w] = [c[str(n)]["witnesses"] for n in (1, 2, 3, 4)]
    ok = all(c[-1] >= 1 and not any(c[:-1]) for c in counts.values())
    report(capsys, 4, ok, t.elapsed, 300, f"[{backend.__name__}] witnesses per n: {counts}")


def test_criterion_05_cerny_thresholds(capsys, backend):
    with Timer() as t:
        thresholds = [shortest_reset(cerny_automaton(n)).threshold for n in (3, 4, 5)]
    report(capsys, 5, thresholds == [4, 9, 16], t.elapsed, 10, f"[{backend.__name__}] thresholds={thresholds}")


def test_criterion_06_constants(capsys):
    with Timer() as t:
        corpus = constants_corpus()
        disagree = bad_witness = positive = 0
        for A in corpus:
            verdict = has_constant(A)
            if verdict != has_constant_oracle(A):
                disagree += 1
            if verdict:
                positive += 1
                u = find_constant(A)
                if u is None or not is_constant(A, u):
                    bad_witness += 1
    ok = len(corpus) == 578 and disagree == 0 and bad_witness == 0
    detail = f"{len(corpus)} acceptors, {positive} with constants, disagreements={disagree}, bad witnesses={bad_witness}"
    report(capsys, 6, ok, t.elapsed, 120, detail)


def test_criterion_07_props_5_6(capsys):
    with Timer() as t:
        corpus = constants_corpus()
        disagree = trichotomy = 0
        tally = [0, 0, 0]
        for A in corpus:
            p5, p6 = prop5_check(A), prop6_check(A)
            if not (p5.agree and p6.agree):
                disagree += 1
            cases = [p5.direct, p6.direct, not is_synchronizing(A)]
            if cases.count(True) != 1:
                trichotomy += 1
            else:
                tally[cases.index(True)] += 1
    ok = disagree == 0 and trichotomy == 0
    detail = f"disagreements={disagree}, trichotomy failures={trichotomy}, split={tally}"
    report(capsys, 7, ok, t.elapsed, 120, detail)


def test_criterion_08_decomposition_round_trip(capsys):
    with Timer() as t:
        corpus = decomp_corpus()
        not_iso = unverified = 0
        for B in corpus:
            D = extract_decomposition(B)
            if not verify_decomposition(D).ok:
                unverified += 1
            if not is_isomorphic(automaton_of_decomposition(D), B):
                not_iso += 1
    ok = len(corpus) == 100 and not_iso == 0 and unverified == 0
    report(capsys, 8, ok, t.elapsed, 120, f"{len(corpus)} automata, not isomorphic={not_iso}, unverified={unverified}")


def test_criterion_09_lifting(capsys):
    with Timer() as t:
        corpus = [cerny_automaton(3), cerny_automaton(4)] + lift_corpus()
        failures = []
        for i, A in enumerate(corpus):
            r = verify_lift(A, lift(A))
            if not r.ok:
                failures.append((i, r.problems))
        # a reset word that is not shortest must be caught
        A = cerny_automaton(3)
        mutant = ("a",) + shortest_reset(A).shortest
        caught = not verify_lift(A, lift(A, mutant)).ok
    ok = not failures and caught
    report(capsys, 9, ok, t.elapsed, 120, f"{len(corpus)} automata, failures={failures[:3]}, mutation caught={caught}")


def theorem4_corpus():
    yield from (build_aw(w, AB) for w in aw_words())
    yield from (cerny_automaton(n) for n in (3, 4, 5))
    yield from constants_corpus()
    yield from decomp_corpus()
    yield from lift_corpus()


def test_criterion_10_theorem4(capsys):
    with Timer() as t:
        instances = checks = bad = 0
        for A in theorem4_corpus():
            if not is_synchronizing(A) or not is_finitely_generated(A):
                continue
            instances += 1
            for v in all_words(A.alphabet, 3, 1):
                checks += 1
                # a TheoremViolation here fails the test outright
                verdict = theorem4_witness(A, v, finitely_generated=True)
                if not resets(A, verdict.word):
                    bad += 1
    ok = instances > 0 and bad == 0
    report(capsys, 10, ok, t.elapsed, 120, f"{instances} automata, {checks} checks, non-resetting composites={bad}")


def test_criterion_11_cerny_probes(capsys):
    with Timer() as t:
        corpus = [cerny_automaton(n) for n in (3, 4, 5)] + decomp_corpus() + lift_corpus()
        probe = cerny_probes(corpus)
    cerny_equal = {0, 1, 2} <= set(probe.equality)
    ok = probe.ok and cerny_equal
    detail = (
        f"{probe.instances} automata, {probe.congruences} congruences, "
        f"violations={len(probe.violations)}, C_n equality={cerny_equal}"
    )
    report(capsys, 11, ok, t.elapsed, 300, detail)


def test_scsa_corpora_shape():
    for A in decomp_corpus() + lift_corpus():
        assert is_strongly_connected(A) and is_synchronizing(A) and A.n_states <= 5
