"""Acceptance suite: one check per criterion, each reported as a PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from randterms import SIG, random_model, random_term, random_word, rewrite  # noqa: E402
from relthy.builtins import builtin  # noqa: E402
from relthy.cospan import iso, to_cospan  # noqa: E402
from relthy.finrel import (Evaluator, Model, Relation, compose, eval_cospan, eval_term,  # noqa: E402
                           is_map, is_per, is_tabulation, leq, per_split, tabulate, transpose)
from relthy.laws import all_laws, law_signature  # noqa: E402
from relthy.search import count_models, enumerate_morphisms, iter_models  # noqa: E402
from relthy.split import verify_comparison  # noqa: E402
from relthy.terms import Gen, GeneratorSymbol, Theory, meet  # noqa: E402


def _random_rel(rng, n, m):
    return Relation.from_int(n, m, rng.getrandbits(n * m))


def criterion_1():
    """Structural laws decided by cospan isomorphism, under 1 s."""
    sig = law_signature()
    laws = all_laws(sig)
    start = time.perf_counter()
    bad = [law.name for law in laws
           if iso(to_cospan(law.lhs, sig), to_cospan(law.rhs, sig)) is None]
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 1, f"{len(laws)} laws, {len(bad)} failed, {elapsed:.3f}s"


def criterion_2():
    """The same laws hold in finite Rel at carriers 0..4, under 5 s."""
    sig = law_signature()
    laws = all_laws(sig)
    rng = random.Random(2)
    start = time.perf_counter()
    checked, bad = 0, []
    for na, nb in itertools.product(range(5), repeat=2):
        interp = {"f": _random_rel(rng, na, na), "g": _random_rel(rng, nb, nb)}
        model = Model(sig, {"A": na, "B": nb}, interp)
        for law in laws:
            checked += 1
            if eval_term(model, law.lhs) != eval_term(model, law.rhs):
                bad.append((law.name, na, nb))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 5, f"{checked} instances, {len(bad)} failed, {elapsed:.2f}s"


MEET_SIG = Theory(("A", "B"), (GeneratorSymbol("f", ("A",), ("B",)),
                               GeneratorSymbol("g", ("A",), ("B",))))
MEET_TERM = meet(Gen("f"), Gen("g"), MEET_SIG)


def _meet_case(ev, f, g):
    m = ev(MEET_TERM, {"f": f, "g": g})
    ok = m.rows == tuple(a & b for a, b in zip(f.rows, g.rows))
    subset = all(a & ~b == 0 for a, b in zip(f.rows, g.rows))
    return ok and subset == (m == f) and subset == leq(f, g)


def criterion_3(samples=100_000):
    """Diagrammatic meet is bitwise AND; inclusion is meet-equality."""
    start = time.perf_counter()
    checked = failed = 0
    evaluators = {}

    def ev_for(n, m):
        if (n, m) not in evaluators:
            evaluators[n, m] = Evaluator({"A": n, "B": m})
        return evaluators[n, m]

    for n, m in itertools.product(range(3), repeat=2):
        ev = ev_for(n, m)
        rels = [Relation.from_int(n, m, c) for c in range(1 << (n * m))]
        for f in rels:
            for g in rels:
                checked += 1
                failed += not _meet_case(ev, f, g)
    exhaustive = checked
    rng = random.Random(3)
    shapes = [(n, m) for n in range(4) for m in range(4) if max(n, m) == 3]
    for _ in range(samples):
        n, m = rng.choice(shapes)
        checked += 1
        failed += not _meet_case(ev_for(n, m), _random_rel(rng, n, m), _random_rel(rng, n, m))
    elapsed = time.perf_counter() - start
    detail = (f"{exhaustive} exhaustive + {checked - exhaustive} sampled pairs, "
              f"{failed} failed, {elapsed:.1f}s")
    return failed == 0 and elapsed < 30, detail


def criterion_4():
    """Labelled model counts agree with brute-force oracles."""
    expected = {
        "posets": {0: 1, 1: 1, 2: 3, 3: 19, 4: 219},
        "semigroups": {1: 1, 2: 8, 3: 113},
    }
    oracle = {"posets": oracles.count_posets,
              "semigroups": lambda n: len(oracles.semigroup_tables(n))}
    lines, ok = [], True
    slowest = 0.0
    for name, table in expected.items():
        for n, want in table.items():
            start = time.perf_counter()
            got = count_models(builtin(name), [n])
            slowest = max(slowest, time.perf_counter() - start)
            ref = oracle[name](n)
            ok &= str(got) == str(ref) == str(want)
            lines.append(f"{name}@{n}={got}")
    for n in range(6):
        ok &= count_models(builtin("sets"), [n]) == 1
        ok &= count_models(builtin("nonempty"), [n]) == (1 if n else 0)
    ok &= slowest < 300
    return ok, ", ".join(lines) + f"; sets=1, nonempty 0/1; slowest {slowest:.1f}s"


def criterion_5():
    """Verification mode finds only maps and agrees with fast mode."""
    start = time.perf_counter()
    pairs = nonmaps = mismatches = 0
    for name in ("posets", "semigroups"):
        th = builtin(name)
        models = [m for n in range(3) for m in iter_models(th, [n])]
        for F in models:
            for G in models:
                pairs += 1
                fast = sorted(m.components[0].rows for m in enumerate_morphisms(F, G))
                slow = list(enumerate_morphisms(F, G, verify=True))
                nonmaps += sum(not is_map(m.components[0]) for m in slow)
                mismatches += fast != sorted(m.components[0].rows for m in slow)
    elapsed = time.perf_counter() - start
    ok = nonmaps == 0 and mismatches == 0 and elapsed < 120
    return ok, f"{pairs} model pairs, {nonmaps} non-map components, {mismatches} mismatches, {elapsed:.1f}s"


def criterion_6():
    """Morphism counts: functions between sets, monotone maps between chains."""
    ok = True
    for nf, ng in itertools.product(range(4), repeat=2):
        F = Model(builtin("sets"), {"X": nf}, {})
        G = Model(builtin("sets"), {"X": ng}, {})
        ok &= sum(1 for _ in enumerate_morphisms(F, G)) == ng ** nf
    le = {(0, 0), (0, 1), (1, 1)}
    chain = Model(builtin("posets"), {"X": 2}, {"le": Relation.from_pairs(2, 2, le)})
    got = sum(1 for _ in enumerate_morphisms(chain, chain))
    want = len(oracles.monotone_maps(2, le, 2, le))
    ok &= got == want == 3
    return ok, f"sets |G|^|F| for |F|,|G| <= 3; chain2 -> chain2: {got} (oracle {want})"


def criterion_7():
    """Every PER at carriers <= 3 splits; tabulate reconstructs every relation."""
    start = time.perf_counter()
    pers = rels = failed = 0
    for n in range(4):
        for code in range(1 << (n * n)):
            e = Relation.from_int(n, n, code)
            if is_per(e):
                pers += 1
                sp = per_split(e)
                failed += not (compose(sp.s, sp.r) == e
                               and compose(sp.r, sp.s) == Relation.identity(sp.quotient))
    for n, m in itertools.product(range(4), repeat=2):
        for code in range(1 << (n * m)):
            f = Relation.from_int(n, m, code)
            tab = tabulate(f)
            rels += 1
            failed += not (is_tabulation(f, tab) and compose(transpose(tab.h), tab.k) == f)
    elapsed = time.perf_counter() - start
    return failed == 0 and elapsed < 60, f"{pers} PERs, {rels} relations, {failed} failed, {elapsed:.1f}s"


def criterion_8():
    """Split_per vs Split_eq(Split_cor) at k = 2: hom bijection and essential surjectivity."""
    start = time.perf_counter()
    rep = verify_comparison(2)
    elapsed = time.perf_counter() - start
    return rep.ok and elapsed < 120, f"{rep.checked} checks, {len(rep.failures)} failures, {elapsed:.2f}s"


def criterion_9(pairs=500, models=20):
    """Structurally equal pairs evaluate identically in random models."""
    rng = random.Random(9)
    found = counterexamples = 0
    while found < pairs:
        dom, cod = random_word(rng, SIG), random_word(rng, SIG)
        t = random_term(rng, dom, cod, 3)
        u = rewrite(rng, rewrite(rng, t))
        if iso(to_cospan(t, SIG), to_cospan(u, SIG)) is None:
            continue
        found += 1
        for _ in range(models):
            m = random_model(rng, max_size=3)
            counterexamples += eval_term(m, t) != eval_term(m, u)
    # the cospan semantics agrees with the term semantics too
    disagreements = 0
    for _ in range(pairs):
        t = random_term(rng, random_word(rng, SIG), random_word(rng, SIG), 4)
        m = random_model(rng, max_size=3)
        disagreements += eval_term(m, t) != eval_cospan(m, to_cospan(t, SIG))
    ok = counterexamples == 0 and disagreements == 0
    return ok, (f"{found} pairs x {models} models, {counterexamples} counterexamples; "
                f"term vs cospan evaluation: {disagreements} disagreements")


def criterion_10():
    """Regular-semigroup models match the operation-table oracle exactly."""
    th = builtin("regular-semigroups")
    ok = True
    counts = []
    for n in range(4):
        emitted = []
        for model in iter_models(th, [n]):
            rel = model.interp["m"]
            if not is_map(rel):
                ok = False
                continue
            table = {divmod(p, n): c for p, c in rel.pairs()}
            ok &= oracles.is_associative(n, table) and oracles.is_regular(n, table)
            emitted.append(tuple(sorted(table.items())))
        want = {tuple(sorted(t.items())) for t in oracles.regular_tables(n)}
        ok &= len(emitted) == len(set(emitted)) and set(emitted) == want
        counts.append(f"{n}:{len(emitted)}")
    return ok, "regular semigroups by size " + ", ".join(counts)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    return ok, f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, record_property):
    ok, line = run_criterion(number)
    record_property("acceptance", line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(i) for i in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
