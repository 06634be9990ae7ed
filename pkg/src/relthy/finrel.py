"""Finite sets and relations: the category Rel restricted to finite carriers.

A relation ``X -> Y`` between finite sets of sizes ``m`` and ``n`` is stored
as ``m`` row bitmasks, one Python int per domain element, bit ``j`` of row
``i`` set when ``(i, j)`` is in the relation.  Products of carriers use the
mixed-radix encoding ``(x1, ..., xk) -> ((x1 * n2) + x2) * n3 + ...`` with
the first factor most significant; the empty product has size 1.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import (InterfaceMismatch, ModelError, NotAPer, NotEndo,
                     NotParallel, ParseError)
from .terms import (Del, Dup, Gen, Id, Merge, New, Par, Seq, Sym, Term,
                    Theory, typecheck)


def _bits(r: int) -> Iterator[int]:
    while r:
        low = r & -r
        yield low.bit_length() - 1
        r ^= low


@dataclass(frozen=True)
class FinSet:
    """A finite product of finite sets, indexed in mixed radix."""

    shape: tuple = ()

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def encode(self, elems) -> int:
        idx = 0
        for x, n in zip(elems, self.shape, strict=True):
            if not 0 <= x < n:
                raise ValueError(f"{x} out of range for factor of size {n}")
            idx = idx * n + x
        return idx

    def decode(self, idx: int) -> tuple:
        out = []
        for n in reversed(self.shape):
            idx, x = divmod(idx, n)
            out.append(x)
        return tuple(reversed(out))

    def __iter__(self):
        return (self.decode(i) for i in range(self.size))


class Relation:
    """An immutable relation between ``range(dom)`` and ``range(cod)``."""

    __slots__ = ("dom", "cod", "rows")

    def __init__(self, dom: int, cod: int, rows: Iterable[int] = None):
        rows = (0,) * dom if rows is None else tuple(rows)
        if len(rows) != dom:
            raise ValueError(f"expected {dom} rows, got {len(rows)}")
        limit = 1 << cod
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#b} has bits outside codomain of size {cod}")
        self.dom, self.cod, self.rows = dom, cod, rows

    @classmethod
    def _make(cls, dom, cod, rows):
        # trusted constructor for kernels that cannot produce stray bits
        rel = object.__new__(cls)
        rel.dom, rel.cod, rel.rows = dom, cod, rows
        return rel

    @classmethod
    def from_pairs(cls, dom: int, cod: int, pairs: Iterable) -> "Relation":
        rows = [0] * dom
        for i, j in pairs:
            if not (0 <= i < dom and 0 <= j < cod):
                raise ValueError(f"pair {(i, j)} out of range for {dom}x{cod}")
            rows[i] |= 1 << j
        return cls._make(dom, cod, tuple(rows))

    @classmethod
    def from_int(cls, dom: int, cod: int, code: int) -> "Relation":
        """Decode a bit matrix packed row-major, row 0 in the low bits."""
        mask = (1 << cod) - 1
        return cls._make(dom, cod, tuple((code >> (i * cod)) & mask for i in range(dom)))

    def to_int(self) -> int:
        code = 0
        for i, r in enumerate(self.rows):
            code |= r << (i * self.cod)
        return code

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return structural("id", n)

    @classmethod
    def empty(cls, dom: int, cod: int) -> "Relation":
        return cls._make(dom, cod, (0,) * dom)

    @classmethod
    def full(cls, dom: int, cod: int) -> "Relation":
        return cls._make(dom, cod, ((1 << cod) - 1,) * dom)

    @classmethod
    def graph(cls, fn: Iterable[int], cod: int) -> "Relation":
        """The relation ``{(x, fn[x])}`` of a function given as a list."""
        fn = list(fn)
        return cls.from_pairs(len(fn), cod, enumerate(fn))

    def pairs(self) -> list:
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def __len__(self):
        return sum(r.bit_count() for r in self.rows)

    def __contains__(self, pair):
        i, j = pair
        return 0 <= i < self.dom and 0 <= j < self.cod and bool(self.rows[i] >> j & 1)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return (self.dom, self.cod, self.rows) == (other.dom, other.cod, other.rows)

    def __hash__(self):
        return hash((self.dom, self.cod, self.rows))

    def __repr__(self):
        return f"Relation({self.dom}, {self.cod}, {self.pairs()})"

    def __str__(self):
        return format_relation(self)

    def __rshift__(self, other):
        return compose(self, other)

    def __matmul__(self, other):
        return tensor(self, other)

    def __and__(self, other):
        return meet_rel(self, other)

    def __or__(self, other):
        _parallel(self, other)
        return Relation._make(self.dom, self.cod,
                              tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other):
        return leq(self, other)

    @property
    def T(self) -> "Relation":
        return transpose(self)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def compose(f: Relation, g: Relation) -> Relation:
    """Diagrammatic composite ``f ; g``."""
    if f.cod != g.dom:
        raise InterfaceMismatch("", (f.cod,), (g.dom,))
    grows = g.rows
    out = []
    for r in f.rows:
        acc = 0
        while r:
            low = r & -r
            acc |= grows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return Relation._make(f.dom, g.cod, tuple(out))


def tensor(f: Relation, g: Relation) -> Relation:
    gc = g.cod
    out = []
    for fr in f.rows:
        ys = [y * gc for y in _bits(fr)]
        for gr in g.rows:
            acc = 0
            if gr:
                for shift in ys:
                    acc |= gr << shift
            out.append(acc)
    return Relation._make(f.dom * g.dom, f.cod * gc, tuple(out))


def transpose(f: Relation) -> Relation:
    out = [0] * f.cod
    for i, r in enumerate(f.rows):
        bit = 1 << i
        for j in _bits(r):
            out[j] |= bit
    return Relation._make(f.cod, f.dom, tuple(out))


def _parallel(f, g):
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise NotParallel(f"{f.dom}x{f.cod} vs {g.dom}x{g.cod}")


def meet_rel(f: Relation, g: Relation) -> Relation:
    _parallel(f, g)
    return Relation._make(f.dom, f.cod, tuple(a & b for a, b in zip(f.rows, g.rows)))


def leq(f: Relation, g: Relation) -> bool:
    _parallel(f, g)
    return all(a & ~b == 0 for a, b in zip(f.rows, g.rows))


@lru_cache(maxsize=4096)
def structural(kind: str, *shape: int) -> Relation:
    """The Frobenius structure of Rel on carriers of the given sizes.

    ``dup``/``merge``/``del``/``new``/``id`` take one size; ``sym`` takes the
    sizes of the two blocks being swapped.
    """
    if kind == "sym":
        a, b = shape
        rows = [0] * (a * b)
        for x in range(a):
            for y in range(b):
                rows[x * b + y] = 1 << (y * a + x)
        return Relation._make(a * b, a * b, tuple(rows))
    (n,) = shape
    if kind == "id":
        return Relation._make(n, n, tuple(1 << x for x in range(n)))
    if kind == "dup":
        return Relation._make(n, n * n, tuple(1 << (x * n + x) for x in range(n)))
    if kind == "merge":
        rows = [0] * (n * n)
        for x in range(n):
            rows[x * n + x] = 1 << x
        return Relation._make(n * n, n, tuple(rows))
    if kind == "del":
        return Relation._make(n, 1, (1,) * n)
    if kind == "new":
        return Relation._make(1, n, ((1 << n) - 1,))
    raise ValueError(f"unknown structural relation {kind!r}")


# ---------------------------------------------------------------------------
# Models and evaluation
# ---------------------------------------------------------------------------

class Model:
    """Carrier sizes per sort and one relation per generator symbol."""

    def __init__(self, theory: Theory, sizes, interp):
        if not isinstance(sizes, dict):
            sizes = dict(zip(theory.sorts, sizes, strict=True))
        self.theory = theory
        self.sizes = {s: sizes[s] for s in theory.sorts}
        self.interp = dict(interp)
        for s, n in self.sizes.items():
            if n < 0:
                raise ModelError(f"negative carrier size for sort {s!r}")
        for g in theory.generators:
            if g.name not in self.interp:
                raise ModelError(f"no interpretation for generator {g.name!r}")
            rel = self.interp[g.name]
            want = (self.word_size(g.dom), self.word_size(g.cod))
            if (rel.dom, rel.cod) != want:
                raise ModelError(f"generator {g.name!r} needs a {want[0]}x{want[1]} "
                                 f"relation, got {rel.dom}x{rel.cod}")
        extra = set(self.interp) - {g.name for g in theory.generators}
        if extra:
            raise ModelError(f"interpretations for undeclared generators {sorted(extra)}")

    def word_size(self, w) -> int:
        return math.prod(self.sizes[s] for s in w)

    def key(self) -> tuple:
        return (tuple(self.sizes[s] for s in self.theory.sorts),
                tuple(self.interp[g.name].rows for g in self.theory.generators))

    def __eq__(self, other):
        return isinstance(other, Model) and self.theory == other.theory and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Model({self.theory.name}, sizes={self.sizes})"

    def to_json(self) -> dict:
        return {"theory": self.theory.name,
                "sizes": {s: self.sizes[s] for s in self.theory.sorts},
                "model": {g.name: [list(p) for p in self.interp[g.name].pairs()]
                          for g in self.theory.generators}}

    @classmethod
    def from_json(cls, theory: Theory, data: dict) -> "Model":
        sizes = data["sizes"]
        if isinstance(sizes, list):
            sizes = dict(zip(theory.sorts, sizes, strict=True))
        ws = lambda w: math.prod(sizes[s] for s in w)
        interp = {}
        for g in theory.generators:
            pairs = data.get("model", {}).get(g.name, [])
            interp[g.name] = Relation.from_pairs(ws(g.dom), ws(g.cod), (tuple(p) for p in pairs))
        return cls(theory, sizes, interp)


class Evaluator:
    """Functorial evaluation of terms at fixed carrier sizes.

    Generator-free subterms are cached by identity, which pays off when the
    same axiom is evaluated under many interpretations during search.
    """

    def __init__(self, sizes: dict):
        self.sizes = sizes
        self._const = {}

    def word_size(self, w) -> int:
        n = 1
        for s in w:
            n *= self.sizes[s]
        return n

    def __call__(self, t: Term, interp: dict) -> Relation:
        return self._eval(t, interp)[0]

    def _eval(self, t, interp):
        # returns (relation, whether t is generator-free)
        if isinstance(t, Gen):
            return interp[t.name], False
        hit = self._const.get(id(t))
        if hit is not None and hit[0] is t:
            return hit[1], True
        if isinstance(t, Seq):
            a, ca = self._eval(t.first, interp)
            b, cb = self._eval(t.second, interp)
            out, const = compose(a, b), ca and cb
        elif isinstance(t, Par):
            a, ca = self._eval(t.left, interp)
            b, cb = self._eval(t.right, interp)
            out, const = tensor(a, b), ca and cb
        else:
            out, const = self._structural(t), True
        if const:
            self._const[id(t)] = (t, out)
        return out, const

    def _structural(self, t):
        if isinstance(t, Id):
            return structural("id", self.word_size(t.word))
        if isinstance(t, Sym):
            return structural("sym", self.word_size(t.left), self.word_size(t.right))
        n = self.sizes[t.sort]
        if isinstance(t, Dup):
            return structural("dup", n)
        if isinstance(t, Merge):
            return structural("merge", n)
        if isinstance(t, Del):
            return structural("del", n)
        if isinstance(t, New):
            return structural("new", n)
        raise TypeError(f"not a term: {t!r}")


def eval_term(model: Model, t: Term) -> Relation:
    typecheck(t, model.theory)
    return Evaluator(model.sizes)(t, model.interp)


def eval_cospan(model: Model, c) -> Relation:
    """Evaluate a cospan as a conjunctive query with existential inner wires.

    ``(i, o)`` is in the result when some assignment of carrier elements to
    all vertices satisfies every edge and restricts to ``i`` on the inputs
    and ``o`` on the outputs.  Inputs are fixed first, then outputs, then the
    inner vertices, each group ordered greedily so that edges become
    checkable as early as possible.
    """
    nv = len(c.sorts)
    size = [model.sizes[s] for s in c.sorts]
    edges = []
    for e in c.edges:
        edges.append((model.interp[e.label].rows, e.sources, e.targets,
                      [size[v] for v in e.sources], [size[v] for v in e.targets]))
    touching = [[] for _ in range(nv)]
    for k, (_, src, tgt, _, _) in enumerate(edges):
        for v in set(src) | set(tgt):
            touching[v].append(k)

    placed = set(c.inputs)
    outs = list(dict.fromkeys(v for v in c.outputs if v not in placed))
    inner = [v for v in range(nv) if v not in placed and v not in set(outs)]
    order = []
    for group in (outs, inner):
        left = set(group)
        while left:
            def score(v):
                ready = sum(1 for k in touching[v]
                            if all(u in placed or u == v for u in edges[k][1] + edges[k][2]))
                near = sum(1 for k in touching[v]
                           if any(u in placed for u in edges[k][1] + edges[k][2]))
                return (-ready, -near, len(touching[v]), v)
            v = min(left, key=score)
            left.discard(v)
            placed.add(v)
            order.append(v)

    # edges checked once their last vertex is placed; boundary-only edges up front
    rank = {v: i for i, v in enumerate(order)}
    due = [[] for _ in order]
    upfront = []
    for k, (_, src, tgt, _, _) in enumerate(edges):
        ranks = [rank[v] for v in src + tgt if v in rank]
        (due[max(ranks)] if ranks else upfront).append(k)

    val = [0] * nv

    def holds(k):
        rows, src, tgt, rs, rt = edges[k]
        i = 0
        for v, n in zip(src, rs):
            i = i * n + val[v]
        j = 0
        for v, n in zip(tgt, rt):
            j = j * n + val[v]
        return rows[i] >> j & 1

    n_out = len(outs)
    in_shape = FinSet(tuple(size[v] for v in c.inputs))
    out_sizes = [size[v] for v in c.outputs]
    cod = math.prod(out_sizes)

    def exists(pos):
        if pos == len(order):
            return True
        v = order[pos]
        for x in range(size[v]):
            val[v] = x
            if all(holds(k) for k in due[pos]) and exists(pos + 1):
                return True
        return False

    rows = []
    for i in range(in_shape.size):
        row = 0
        ok = True
        seen = {}
        for v, x in zip(c.inputs, in_shape.decode(i)):
            if seen.setdefault(v, x) != x:
                ok = False
                break
            val[v] = x
        if ok and all(holds(k) for k in upfront):
            def outer(pos):
                nonlocal row
                if pos == n_out:
                    o = 0
                    for v, n in zip(c.outputs, out_sizes):
                        o = o * n + val[v]
                    if not row >> o & 1 and exists(pos):
                        row |= 1 << o
                    return
                v = order[pos]
                for x in range(size[v]):
                    val[v] = x
                    if all(holds(k) for k in due[pos]):
                        outer(pos + 1)
            outer(0)
        rows.append(row)
    return Relation._make(in_shape.size, cod, tuple(rows))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def _endo(f, what):
    if f.dom != f.cod:
        raise NotEndo(f"{what} needs an endo-relation, got {f.dom}x{f.cod}")


def is_simple(f: Relation) -> bool:
    return all(r & (r - 1) == 0 for r in f.rows)


def is_total(f: Relation) -> bool:
    return all(f.rows)


def is_map(f: Relation) -> bool:
    return all(r and r & (r - 1) == 0 for r in f.rows)


def is_coreflexive(f: Relation) -> bool:
    _endo(f, "coreflexive")
    return all(r & ~(1 << x) == 0 for x, r in enumerate(f.rows))


def is_reflexive(f: Relation) -> bool:
    _endo(f, "reflexive")
    return all(r >> x & 1 for x, r in enumerate(f.rows))


def is_symmetric(f: Relation) -> bool:
    _endo(f, "symmetric")
    return transpose(f) == f


def is_transitive(f: Relation) -> bool:
    _endo(f, "transitive")
    return leq(compose(f, f), f)


def is_per(f: Relation) -> bool:
    return is_symmetric(f) and is_transitive(f)


def is_equivalence(f: Relation) -> bool:
    return is_per(f) and is_reflexive(f)


PROPERTIES = ("simple", "total", "map", "coreflexive", "reflexive",
              "symmetric", "transitive", "per", "equivalence")

_TESTS = {"simple": is_simple, "total": is_total, "map": is_map,
          "coreflexive": is_coreflexive, "reflexive": is_reflexive,
          "symmetric": is_symmetric, "transitive": is_transitive,
          "per": is_per, "equivalence": is_equivalence}


def classify(f: Relation) -> frozenset:
    """The properties from :data:`PROPERTIES` that ``f`` has.

    Endo-only properties are skipped for non-square relations.
    """
    names = PROPERTIES if f.dom == f.cod else PROPERTIES[:3]
    return frozenset(p for p in names if _TESTS[p](f))


# ---------------------------------------------------------------------------
# Tabulation and splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tabulation:
    h: Relation
    k: Relation

    @property
    def apex(self) -> int:
        return self.h.dom


def tabulate(f: Relation) -> Tabulation:
    """Represent ``f`` as ``h° ; k`` with ``h``, ``k`` jointly monic maps.

    The apex is the set of pairs of ``f`` in row-major order.
    """
    pairs = f.pairs()
    h = Relation.graph([i for i, _ in pairs], f.dom)
    k = Relation.graph([j for _, j in pairs], f.cod)
    tab = Tabulation(h, k)
    assert compose(transpose(h), k) == f
    assert len(set(pairs)) == len(pairs)
    return tab


def is_tabulation(f: Relation, tab: Tabulation) -> bool:
    """Check ``h° ; k = f`` and joint monicity ``h h° ∩ k k° = 1``."""
    h, k = tab.h, tab.k
    if not (is_map(h) and is_map(k)) or compose(transpose(h), k) != f:
        return False
    kernel = meet_rel(compose(h, transpose(h)), compose(k, transpose(k)))
    return kernel == Relation.identity(h.dom)


@dataclass(frozen=True)
class PerSplitting:
    quotient: int
    s: Relation
    r: Relation


def per_split(e: Relation) -> PerSplitting:
    """Split a partial equivalence relation through its set of classes."""
    if e.dom != e.cod or not is_per(e):
        raise NotAPer(f"{format_relation(e)} is not a partial equivalence relation")
    classes = {}
    pairs = []
    for x, row in enumerate(e.rows):
        if row >> x & 1:
            q = classes.setdefault(row, len(classes))
            pairs.append((x, q))
    s = Relation.from_pairs(e.dom, len(classes), pairs)
    r = transpose(s)
    split = PerSplitting(len(classes), s, r)
    assert compose(s, r) == e and compose(r, s) == Relation.identity(len(classes))
    return split


# ---------------------------------------------------------------------------
# Literal syntax:  rel m n { (i,j) ... }
# ---------------------------------------------------------------------------

_LITERAL = re.compile(r"\s*rel\s+(\d+)\s+(\d+)\s*\{(.*)\}\s*$", re.S)
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_relation(text: str) -> Relation:
    m = _LITERAL.match(text)
    if not m:
        raise ParseError(1, 1, f"not a relation literal: {text!r}")
    dom, cod, body = int(m.group(1)), int(m.group(2)), m.group(3)
    pairs = [(int(a), int(b)) for a, b in _PAIR.findall(body)]
    leftover = _PAIR.sub("", body).replace(",", "").strip()
    if leftover:
        raise ParseError(1, m.start(3) + 1, f"unexpected text in relation body: {leftover!r}")
    try:
        return Relation.from_pairs(dom, cod, pairs)
    except ValueError as exc:
        raise ParseError(1, 1, str(exc)) from None


def format_relation(f: Relation) -> str:
    body = ", ".join(f"({i},{j})" for i, j in f.pairs())
    return f"rel {f.dom} {f.cod} {{{body}}}"
