"""Exhaustive search for finite models and lax morphisms between them.

Models are enumerated generator by generator (declaration order) and row by
row inside each generator's bit matrix, each row ranging over all subsets of
the codomain in increasing order.  Every term is monotone in the generator
interpretations, so a partially filled matrix gives a lower bound (unknown
rows empty) and an upper bound (unknown rows full) on every axiom side; a
branch is cut as soon as ``lhs_low <= rhs_high`` or ``rhs_low <= lhs_high``
fails.  An axiom is watched by the last generator it mentions and checked
exactly once that generator is complete.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import SearchSpaceTooLarge
from .finrel import Evaluator, Model, Relation, compose, leq, structural, tensor
from .terms import Theory, generators_of, size

DEFAULT_BUDGET = 2 ** 34


def default_budget() -> int:
    env = os.environ.get("RELTHY_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Checking a single model
# ---------------------------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    holds: bool
    # a pair in exactly one side, and which side it is in
    witness: Optional[tuple] = None
    side: Optional[str] = None


@dataclass
class CheckReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    @property
    def first_failure(self) -> Optional[AxiomResult]:
        return next((r for r in self.results if not r.holds), None)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"valid": self.ok, "axioms": {r.name: r.holds for r in self.results}}
        bad = self.first_failure
        if bad is not None:
            out["failure"] = {"axiom": bad.name, "pair": list(bad.witness), "side": bad.side}
        return out


def check_model(model: Model) -> CheckReport:
    """Evaluate both sides of every (desugared) axiom and compare."""
    theory = model.theory.desugared()
    ev = Evaluator(model.sizes)
    report = CheckReport()
    for ax in theory.axioms:
        lhs, rhs = ev(ax.lhs, model.interp), ev(ax.rhs, model.interp)
        if lhs == rhs:
            report.results.append(AxiomResult(ax.name, True))
            continue
        diff = next((x, y) for x, (a, b) in enumerate(zip(lhs.rows, rhs.rows)) if a != b
                    for y in [((a ^ b) & -(a ^ b)).bit_length() - 1])
        side = "lhs" if diff in lhs else "rhs"
        report.results.append(AxiomResult(ax.name, False, diff, side))
    return report


# ---------------------------------------------------------------------------
# Model enumeration
# ---------------------------------------------------------------------------

@dataclass
class SearchSpec:
    theory: Theory
    sizes: dict
    mode: str = "count"  # count | stream | first
    upto_iso: bool = False
    budget: int = field(default_factory=default_budget)
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.sizes, dict):
            self.sizes = dict(zip(self.theory.sorts, self.sizes, strict=True))
        if self.mode not in ("count", "stream", "first"):
            raise ValueError(f"unknown search mode {self.mode!r}")


def search_bits(theory: Theory, sizes: dict) -> int:
    """log2 of the number of unpruned candidate interpretations."""
    ws = lambda w: math.prod(sizes[s] for s in w)
    return sum(ws(g.dom) * ws(g.cod) for g in theory.generators)


class _Searcher:
    def __init__(self, theory: Theory, sizes: dict):
        self.theory = theory
        th = theory.desugared()
        self.sizes = {s: sizes[s] for s in theory.sorts}
        self.ev = Evaluator(self.sizes)
        ws = self.ev.word_size
        self.gens = [g.name for g in th.generators]
        self.shape = [(ws(g.dom), ws(g.cod)) for g in th.generators]
        index = {name: i for i, name in enumerate(self.gens)}
        self.watch = [[] for _ in self.gens]
        self.closed = []
        for ax in th.axioms:
            mentioned = generators_of(ax.lhs) | generators_of(ax.rhs)
            pair = (ax.lhs, ax.rhs)
            if mentioned:
                self.watch[max(index[g] for g in mentioned)].append(pair)
            else:
                self.closed.append(pair)
        for lst in self.watch:
            lst.sort(key=lambda p: size(p[0]) + size(p[1]))
        self.rows = [[0] * d for d, _ in self.shape]
        self.lo = {}
        self.hi = {}

    def _exact(self, gi):
        d, c = self.shape[gi]
        rel = Relation._make(d, c, tuple(self.rows[gi]))
        self.lo[self.gens[gi]] = self.hi[self.gens[gi]] = rel
        ev, interp = self.ev, self.lo
        return all(ev(l, interp) == ev(r, interp) for l, r in self.watch[gi])

    def _bounded(self, gi, filled):
        d, c = self.shape[gi]
        rows = self.rows[gi]
        name = self.gens[gi]
        self.lo[name] = Relation._make(d, c, tuple(rows[:filled]) + (0,) * (d - filled))
        self.hi[name] = Relation._make(d, c, tuple(rows[:filled]) + ((1 << c) - 1,) * (d - filled))
        ev, lo, hi = self.ev, self.lo, self.hi
        for l, r in self.watch[gi]:
            if not leq(ev(l, lo), ev(r, hi)) or not leq(ev(r, lo), ev(l, hi)):
                return False
        return True

    def run(self, prefix=None) -> Iterator[None]:
        """Yield once per model; the current interpretation is in ``self.rows``.

        ``prefix`` pins the first row of the first generator with rows, which
        is how the space is split into independent partitions.
        """
        ev = self.ev
        if not all(ev(l, {}) == ev(r, {}) for l, r in self.closed):
            return
        yield from self._gen(0, prefix)

    def _gen(self, gi, prefix):
        if gi == len(self.gens):
            yield None
            return
        d, _ = self.shape[gi]
        if d == 0:
            if self._exact(gi):
                yield from self._gen(gi + 1, prefix)
            return
        yield from self._row(gi, 0, prefix)

    def _row(self, gi, r, prefix):
        d, c = self.shape[gi]
        rows = self.rows[gi]
        last = r == d - 1
        if prefix is not None:
            choices, prefix = (prefix,), None
        else:
            choices = range(1 << c)
        for bits in choices:
            rows[r] = bits
            if last:
                if self._exact(gi):
                    yield from self._gen(gi + 1, prefix)
            elif self._bounded(gi, r + 1):
                yield from self._row(gi, r + 1, prefix)

    def model(self) -> Model:
        interp = {name: Relation._make(d, c, tuple(self.rows[i]))
                  for i, (name, (d, c)) in enumerate(zip(self.gens, self.shape))}
        return Model(self.theory, self.sizes, interp)

    def partitions(self):
        """Prefix values for the first generator that has rows, if any."""
        for d, c in self.shape:
            if d:
                return range(1 << c)
            break
        return None


def iter_models(theory: Theory, sizes) -> Iterator[Model]:
    if not isinstance(sizes, dict):
        sizes = dict(zip(theory.sorts, sizes, strict=True))
    s = _Searcher(theory, sizes)
    for _ in s.run():
        yield s.model()


def _count_partition(args):
    theory, sizes, prefix = args
    s = _Searcher(theory, sizes)
    return sum(1 for _ in s.run(prefix))


def count_models(theory: Theory, sizes, upto_iso: bool = False,
                 budget: Optional[int] = None, workers: int = 1) -> int:
    if not isinstance(sizes, dict):
        sizes = dict(zip(theory.sorts, sizes, strict=True))
    budget = default_budget() if budget is None else budget
    bits = search_bits(theory, sizes)
    if 2 ** bits > budget:
        raise SearchSpaceTooLarge(bits, budget)
    if upto_iso:
        return len({canonical_model_key(m) for m in iter_models(theory, sizes)})
    parts = _Searcher(theory, sizes).partitions()
    if workers > 1 and parts is not None:
        jobs = [(theory, sizes, p) for p in parts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_partition, jobs))
    return _count_partition((theory, sizes, None))


def enumerate_models(spec: SearchSpec):
    """Count, stream or find the first model, according to ``spec.mode``."""
    if spec.mode == "count":
        return count_models(spec.theory, spec.sizes, spec.upto_iso, spec.budget, spec.workers)
    models = iter_models(spec.theory, spec.sizes)
    if spec.upto_iso:
        models = _orbit_representatives(models)
    if spec.mode == "first":
        return next(models, None)
    return models


def _orbit_representatives(models):
    seen = set()
    for m in models:
        k = canonical_model_key(m)
        if k not in seen:
            seen.add(k)
            yield m


def _word_perm(word, sizes, perms):
    """Index map on the product carrier of ``word`` induced by per-sort permutations."""
    out = [0]
    for s in word:
        n, p = sizes[s], perms[s]
        out = [i * n + p[x] for i in out for x in range(n)]
    return out


def canonical_model_key(model: Model) -> tuple:
    """Least interpretation over all relabelings of the carriers."""
    th = model.theory
    sizes = model.sizes
    best = None
    for choice in itertools.product(*(itertools.permutations(range(sizes[s])) for s in th.sorts)):
        perms = dict(zip(th.sorts, choice))
        key = []
        for g in th.generators:
            dmap = _word_perm(g.dom, sizes, perms)
            cmap = _word_perm(g.cod, sizes, perms)
            key.append(tuple(sorted((dmap[i], cmap[j]) for i, j in model.interp[g.name].pairs())))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return (tuple(sizes[s] for s in th.sorts), best)


# ---------------------------------------------------------------------------
# Lax morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaxMorphism:
    components: tuple  # one Relation per sort, in declaration order
    sorts: tuple

    def component(self, sort: str) -> Relation:
        return self.components[self.sorts.index(sort)]

    def then(self, other: "LaxMorphism") -> "LaxMorphism":
        return LaxMorphism(tuple(compose(a, b) for a, b in zip(self.components, other.components)),
                           self.sorts)

    def to_json(self) -> dict:
        return {"components": {s: [list(p) for p in c.pairs()]
                               for s, c in zip(self.sorts, self.components)}}


def _along(word, comp):
    out = Relation.identity(1)
    for s in word:
        out = tensor(out, comp[s])
    return out


def structural_lax_ok(alpha: Relation) -> bool:
    """The lax conditions for dup, merge, del and new at one sort."""
    nf, ng = alpha.dom, alpha.cod
    aa = tensor(alpha, alpha)
    return (leq(compose(structural("dup", nf), aa), compose(alpha, structural("dup", ng)))
            and leq(compose(structural("merge", nf), alpha), compose(aa, structural("merge", ng)))
            and leq(structural("del", nf), compose(alpha, structural("del", ng)))
            and leq(compose(structural("new", nf), alpha), structural("new", ng)))


def is_lax(F: Model, G: Model, comp: dict) -> bool:
    """``F(f) ; a_cod <= a_dom ; G(f)`` for every generator and structural map."""
    if not all(structural_lax_ok(comp[s]) for s in F.theory.sorts):
        return False
    for g in F.theory.generators:
        left = compose(F.interp[g.name], _along(g.cod, comp))
        right = compose(_along(g.dom, comp), G.interp[g.name])
        if not leq(left, right):
            return False
    return True


def _candidates(nf, ng, verify):
    if verify:
        for code in range(1 << (nf * ng)):
            yield Relation.from_int(nf, ng, code)
    else:
        for fn in itertools.product(range(ng), repeat=nf):
            yield Relation.graph(fn, ng)


def enumerate_morphisms(F: Model, G: Model, verify: bool = False) -> Iterator[LaxMorphism]:
    """Lax transformations ``F -> G``.

    Fast mode ranges over function graphs only; ``verify=True`` ranges over
    every relation and relies on the structural lax conditions to rule out
    non-maps.
    """
    sorts = F.theory.sorts
    per_sort = []
    for s in sorts:
        cands = [a for a in _candidates(F.sizes[s], G.sizes[s], verify) if structural_lax_ok(a)]
        per_sort.append(cands)
    for choice in itertools.product(*per_sort):
        comp = dict(zip(sorts, choice))
        ok = True
        for g in F.theory.generators:
            if not leq(compose(F.interp[g.name], _along(g.cod, comp)),
                       compose(_along(g.dom, comp), G.interp[g.name])):
                ok = False
                break
        if ok:
            yield LaxMorphism(tuple(choice), sorts)


def identity_morphism(F: Model) -> LaxMorphism:
    sorts = F.theory.sorts
    return LaxMorphism(tuple(Relation.identity(F.sizes[s]) for s in sorts), sorts)
