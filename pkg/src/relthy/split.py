"""Idempotent-splitting completions over bounded fragments of finite Rel.

``Split_E`` has objects ``(X, a)`` with ``a`` an idempotent from the class E
(coreflexives, equivalence relations or partial equivalence relations) and
arrows ``f : (X, a) -> (Y, b)`` the relations with ``a ; f ; b = f``.  The
identity on ``(X, a)`` is ``a`` itself.  Only carriers up to a size bound
are materialized; the checks here verify the defining equations pointwise.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .finrel import (Relation, compose, is_coreflexive, is_equivalence,
                     is_per, is_symmetric, leq, meet_rel,
                     per_split, structural, tensor, transpose)

KINDS = {"cor": is_coreflexive, "eq": is_equivalence, "per": is_per}


@dataclass(frozen=True)
class SplitObject:
    base: int
    idem: Relation

    def __str__(self):
        return f"({self.base}, {self.idem})"


@dataclass(frozen=True)
class SplitArrow:
    src: SplitObject
    dst: SplitObject
    rel: Relation


@dataclass(frozen=True)
class FragmentSpec:
    max_size: int
    kind: str

    def __post_init__(self):
        if self.max_size < 0:
            raise ValueError("max_size must be non-negative")
        if self.kind not in KINDS:
            raise ValueError(f"unknown idempotent class {self.kind!r}; use cor, eq or per")


@dataclass
class Report:
    fragment: FragmentSpec
    property: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {"fragment": {"kind": self.fragment.kind, "max_size": self.fragment.max_size},
                "property": self.property, "checked": self.checked,
                "failures": list(self.failures)}


def endorelations(n: int):
    for code in range(1 << (n * n)):
        yield Relation.from_int(n, n, code)


def split_objects(frag: FragmentSpec) -> list:
    test = KINDS[frag.kind]
    return [SplitObject(n, a) for n in range(frag.max_size + 1)
            for a in endorelations(n) if test(a)]


def absorbs(a: Relation, f: Relation, b: Relation) -> bool:
    return compose(compose(a, f), b) == f


def is_split_arrow(f: SplitArrow) -> bool:
    return absorbs(f.src.idem, f.rel, f.dst.idem)


def hom(x: SplitObject, y: SplitObject) -> list:
    """All arrows ``x -> y``, as relations, in row-major code order."""
    return [r for code in range(1 << (x.base * y.base))
            for r in [Relation.from_int(x.base, y.base, code)] if absorbs(x.idem, r, y.idem)]


def identity_arrow(x: SplitObject) -> SplitArrow:
    return SplitArrow(x, x, x.idem)


def then(f: SplitArrow, g: SplitArrow) -> SplitArrow:
    if f.dst != g.src:
        raise ValueError("arrows are not composable")
    return SplitArrow(f.src, g.dst, compose(f.rel, g.rel))


def split_through_self(x: SplitObject, e: Relation):
    """Split an idempotent ``e`` on ``x`` through ``(X, e)`` with ``s = r = e``."""
    mid = SplitObject(x.base, e)
    return mid, SplitArrow(x, mid, e), SplitArrow(mid, x, e)


# ---------------------------------------------------------------------------
# Category laws
# ---------------------------------------------------------------------------

def verify_category(frag: FragmentSpec) -> Report:
    """Identities are arrows and act neutrally; hom-sets are closed under composition."""
    rep = Report(frag, "category")
    objs = split_objects(frag)
    homs = {(i, j): hom(x, y) for i, x in enumerate(objs) for j, y in enumerate(objs)}
    for i, x in enumerate(objs):
        if not absorbs(x.idem, x.idem, x.idem):
            rep.fail(f"identity of {x} is not an arrow")
        for j, y in enumerate(objs):
            for f in homs[i, j]:
                rep.checked += 1
                if compose(x.idem, f) != f or compose(f, y.idem) != f:
                    rep.fail(f"identity not neutral on {f}")
                for k, z in enumerate(objs):
                    targets = set(homs[j, k])
                    for g in targets:
                        if not absorbs(x.idem, compose(f, g), z.idem):
                            rep.fail(f"composite {f} ; {g} leaves the hom-set")
    return rep


def verify_hypergraph(frag: FragmentSpec) -> Report:
    """Frobenius structure of ``Split_E``: ``dup`` on ``(X, a)`` is ``a ; dup ; (a * a)``."""
    rep = Report(frag, "hypergraph")
    for x in split_objects(frag):
        a, n = x.idem, x.base
        aa = tensor(a, a)
        dup = compose(compose(a, structural("dup", n)), aa)
        merge = compose(compose(aa, structural("merge", n)), a)
        dele = compose(a, structural("del", n))
        new = compose(structural("new", n), a)
        laws = {
            "special": compose(dup, merge) == a,
            "counit": compose(dup, tensor(dele, a)) == a,
            "unit": compose(tensor(new, a), merge) == a,
            "cocommutative": compose(dup, structural("sym", n, n)) == dup,
            "coassociative": compose(dup, tensor(dup, a)) == compose(dup, tensor(a, dup)),
            "frobenius": compose(tensor(dup, a), tensor(a, merge)) == compose(merge, dup),
        }
        for name, ok in laws.items():
            rep.checked += 1
            if not ok:
                rep.fail(f"{name} fails on {x}")
    return rep


# ---------------------------------------------------------------------------
# Tabulation inside Split_E
# ---------------------------------------------------------------------------

def _projection(n: int, m: int, first: bool) -> Relation:
    return Relation.graph([(p // m if first else p % m) for p in range(n * m)], n if first else m)


def tabulate_split(r: SplitArrow):
    """Tabulate an arrow of ``Split_cor`` or ``Split_per``.

    The apex lives on ``X x Y``; it relates two pairs of ``r`` whose
    coordinates are related by the source and target idempotents (for
    coreflexives this is the coreflexive on the pairs of ``r``).
    """
    a, b, rel = r.src.idem, r.dst.idem, r.rel
    n, m = r.src.base, r.dst.base
    inside = [p for p in range(n * m) if rel.rows[p // m] >> (p % m) & 1] if m else []
    apex_rel = Relation.from_pairs(n * m, n * m, [
        (p, q) for p in inside for q in inside
        if (p // m, q // m) in a and (p % m, q % m) in b])
    apex = SplitObject(n * m, apex_rel)
    h = SplitArrow(apex, r.src, compose(compose(apex_rel, _projection(n, m, True)), a))
    k = SplitArrow(apex, r.dst, compose(compose(apex_rel, _projection(n, m, False)), b))
    return apex, h, k


def is_split_map(f: SplitArrow) -> bool:
    """Simple and total relative to the identities of ``Split_E``."""
    hc = transpose(f.rel)
    return leq(compose(hc, f.rel), f.dst.idem) and leq(f.src.idem, compose(f.rel, hc))


def check_split_tabulation(r: SplitArrow, apex: SplitObject, h: SplitArrow, k: SplitArrow,
                           kind: str) -> Optional[str]:
    if not KINDS[kind](apex.idem) or compose(apex.idem, apex.idem) != apex.idem:
        return "apex is not an object"
    if not (is_split_arrow(h) and is_split_arrow(k)):
        return "legs are not arrows"
    if not (is_split_map(h) and is_split_map(k)):
        return "legs are not maps"
    if compose(transpose(h.rel), k.rel) != r.rel:
        return "h° ; k does not reconstruct the arrow"
    kernel = meet_rel(compose(h.rel, transpose(h.rel)), compose(k.rel, transpose(k.rel)))
    if kernel != apex.idem:
        return "legs are not jointly monic"
    return None


def verify_tabular(frag: FragmentSpec, samples: int = 2000, seed: int = 0) -> Report:
    """Every arrow of the fragment admits a tabulation inside ``Split_E``.

    Exhaustive when ``max_size <= 2``; above that, ``samples`` arrows are
    drawn as ``a ; f ; b`` for uniformly random relations ``f``.
    """
    if frag.kind not in ("cor", "per"):
        raise ValueError("tabularity is checked for the cor and per completions")
    rep = Report(frag, "tabular")
    objs = split_objects(frag)
    if frag.max_size <= 2:
        arrows = (SplitArrow(x, y, f) for x in objs for y in objs for f in hom(x, y))
    else:
        rng = random.Random(seed)

        def draw():
            for _ in range(samples):
                x, y = rng.choice(objs), rng.choice(objs)
                f = Relation.from_int(x.base, y.base, rng.getrandbits(x.base * y.base))
                yield SplitArrow(x, y, compose(compose(x.idem, f), y.idem))
        arrows = draw()
    for r in arrows:
        rep.checked += 1
        apex, h, k = tabulate_split(r)
        err = check_split_tabulation(r, apex, h, k, frag.kind)
        if err:
            rep.fail(f"{r.rel} : {r.src} -> {r.dst}: {err}")
    return rep


# ---------------------------------------------------------------------------
# Effectivity
# ---------------------------------------------------------------------------

def is_split_per(x: SplitObject, e: Relation) -> bool:
    """``e`` is an endo-arrow on ``x`` that is symmetric and transitive."""
    return absorbs(x.idem, e, x.idem) and is_symmetric(e) and leq(compose(e, e), e)


def verify_effective(frag: FragmentSpec) -> Report:
    """Every PER splits, both in FinRel and in ``Split_per`` of the fragment."""
    if frag.kind != "per":
        raise ValueError("effectivity is checked for the per completion")
    rep = Report(frag, "effective")
    for n in range(frag.max_size + 1):
        for e in endorelations(n):
            if not is_per(e):
                continue
            rep.checked += 1
            sp = per_split(e)
            if compose(sp.s, sp.r) != e or compose(sp.r, sp.s) != Relation.identity(sp.quotient):
                rep.fail(f"FinRel splitting of {e} is wrong")
    for x in split_objects(frag):
        for e in hom(x, x):
            if not is_split_per(x, e):
                continue
            rep.checked += 1
            mid, s, r = split_through_self(x, e)
            if not (is_per(mid.idem) and is_split_arrow(s) and is_split_arrow(r)):
                rep.fail(f"splitting data for {e} on {x} is not in Split_per")
            elif then(s, r).rel != e or then(r, s).rel != mid.idem:
                rep.fail(f"{e} on {x} does not split")
    return rep


# ---------------------------------------------------------------------------
# Split_per versus Split_eq(Split_cor)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NestedObject:
    """An object of ``Split_eq(Split_cor(FinRel))``: an equivalence on a cor-object."""

    inner: SplitObject
    idem: Relation


def nested_objects(k: int) -> list:
    out = []
    for x in split_objects(FragmentSpec(k, "cor")):
        c = x.idem
        for e in hom(x, x):
            # equivalence relation in Split_cor: reflexive w.r.t. the identity c
            if leq(c, e) and is_symmetric(e) and leq(compose(e, e), e):
                out.append(NestedObject(x, e))
    return out


def nested_hom(p: NestedObject, q: NestedObject) -> list:
    return [f for f in hom(p.inner, q.inner) if absorbs(p.idem, f, q.idem)]


def compare_object(x: SplitObject) -> NestedObject:
    """Send ``(X, e)`` to ``((X, e ∩ 1), e)``."""
    dom = meet_rel(x.idem, Relation.identity(x.base))
    return NestedObject(SplitObject(x.base, dom), x.idem)


def _nested_iso(p: NestedObject, q: NestedObject) -> bool:
    if p == q:
        return True
    for u in nested_hom(p, q):
        for v in nested_hom(q, p):
            if compose(u, v) == p.idem and compose(v, u) == q.idem:
                return True
    return False


def verify_comparison(k: int) -> Report:
    """``Split_per(FinRel_k)`` vs ``Split_eq(Split_cor(FinRel_k))``.

    The comparison functor is the identity on underlying relations, so full
    faithfulness amounts to equal hom-sets for every object pair; essential
    surjectivity is witnessed by an isomorphic preimage for each object.
    """
    frag = FragmentSpec(k, "per")
    rep = Report(frag, "split_per ~ split_eq(split_cor)")
    pers = split_objects(frag)
    images = [compare_object(x) for x in pers]
    nested = nested_objects(k)
    nested_set = set(nested)
    for x, fx in zip(pers, images):
        rep.checked += 1
        if fx not in nested_set:
            rep.fail(f"image of {x} is not an object of Split_eq(Split_cor)")
    for x, fx in zip(pers, images):
        for y, fy in zip(pers, images):
            rep.checked += 1
            source = hom(x, y)
            target = nested_hom(fx, fy)
            if len(source) != len(target) or set(source) != set(target):
                rep.fail(f"hom-sets differ for {x} -> {y}: {len(source)} vs {len(target)}")
    by_base = {}
    for x, fx in zip(pers, images):
        by_base.setdefault(x.base, []).append(fx)
    for q in nested:
        rep.checked += 1
        if not any(_nested_iso(fx, q) for fx in by_base.get(q.inner.base, [])):
            rep.fail(f"{q} has no preimage up to isomorphism")
    return rep
