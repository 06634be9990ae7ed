"""Cospans of labeled hypergraphs: a normal form for diagrams.

A term denotes a hypergraph whose vertices are wires (labeled by sorts) and
whose hyperedges are generator boxes, together with two ordered lists of
interface vertices.  Two terms are equal modulo the commutative special
Frobenius laws and their coherence exactly when their cospans are
isomorphic, so ``iso`` and ``canonical_form`` decide that equality.

Interfaces may repeat vertices and need not cover all of them: that is how
``dup``/``merge``/``del``/``new`` show up.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import InterfaceMismatch
from .terms import (Del, Dup, Gen, Id, Merge, New, Par, Seq, Sym, Term,
                    Theory, typecheck)


class Edge(NamedTuple):
    label: str
    sources: tuple
    targets: tuple


@dataclass(frozen=True)
class Cospan:
    sorts: tuple
    edges: tuple = ()
    inputs: tuple = ()
    outputs: tuple = ()

    @property
    def dom(self) -> tuple:
        return tuple(self.sorts[v] for v in self.inputs)

    @property
    def cod(self) -> tuple:
        return tuple(self.sorts[v] for v in self.outputs)

    def then(self, other: "Cospan") -> "Cospan":
        return compose(self, other)

    def tensor(self, other: "Cospan") -> "Cospan":
        return tensor(self, other)

    def key(self) -> tuple:
        return (self.sorts, self.edges, self.inputs, self.outputs)

    def dump(self) -> str:
        """Deterministic plain-text rendering used by golden tests."""
        lines = ["vertices: " + " ".join(f"{i}:{s}" for i, s in enumerate(self.sorts))]
        for i, e in enumerate(self.edges):
            lines.append(f"edge {i}: {e.label} {list(e.sources)} -> {list(e.targets)}")
        lines.append(f"inputs: {list(self.inputs)}")
        lines.append(f"outputs: {list(self.outputs)}")
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        out = ["digraph cospan {", "  rankdir=LR;"]
        for i, s in enumerate(self.sorts):
            out.append(f'  v{i} [shape=point, xlabel="{s}"];')
        for i, e in enumerate(self.edges):
            out.append(f'  e{i} [shape=box, label="{e.label}"];')
            for p, v in enumerate(e.sources):
                out.append(f'  v{v} -> e{i} [headlabel="{p}", arrowhead=none];')
            for p, v in enumerate(e.targets):
                out.append(f'  e{i} -> v{v} [taillabel="{p}", arrowhead=none];')
        for k, v in enumerate(self.inputs):
            out.append(f'  in{k} [shape=plaintext, label="in{k}"];')
            out.append(f"  in{k} -> v{v} [style=dashed, arrowhead=none];")
        for k, v in enumerate(self.outputs):
            out.append(f'  out{k} [shape=plaintext, label="out{k}"];')
            out.append(f"  v{v} -> out{k} [style=dashed, arrowhead=none];")
        out.append("}")
        return "\n".join(out) + "\n"


EMPTY = Cospan(())


# ---------------------------------------------------------------------------
# Building cospans
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as representative so numbering is stable
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def tensor(c1: Cospan, c2: Cospan) -> Cospan:
    k = len(c1.sorts)
    shift = lambda vs: tuple(v + k for v in vs)
    edges = c1.edges + tuple(Edge(e.label, shift(e.sources), shift(e.targets))
                             for e in c2.edges)
    return Cospan(c1.sorts + c2.sorts, edges,
                  c1.inputs + shift(c2.inputs), c1.outputs + shift(c2.outputs))


def compose(c1: Cospan, c2: Cospan) -> Cospan:
    """Glue the outputs of ``c1`` to the inputs of ``c2``."""
    if c1.cod != c2.dom:
        raise InterfaceMismatch("", c1.cod, c2.dom)
    k = len(c1.sorts)
    n = k + len(c2.sorts)
    uf = _UnionFind(n)
    for a, b in zip(c1.outputs, c2.inputs):
        uf.union(a, b + k)
    sorts = c1.sorts + c2.sorts
    new_index = {}
    new_sorts = []
    for v in range(n):
        r = uf.find(v)
        if r not in new_index:
            new_index[r] = len(new_sorts)
            new_sorts.append(sorts[r])
    m = lambda v: new_index[uf.find(v)]
    edges = [Edge(e.label, tuple(m(v) for v in e.sources), tuple(m(v) for v in e.targets))
             for e in c1.edges]
    edges += [Edge(e.label, tuple(m(v + k) for v in e.sources),
                   tuple(m(v + k) for v in e.targets)) for e in c2.edges]
    return Cospan(tuple(new_sorts), tuple(edges),
                  tuple(m(v) for v in c1.inputs), tuple(m(v + k) for v in c2.outputs))


def identity(w) -> Cospan:
    w = tuple(w)
    r = tuple(range(len(w)))
    return Cospan(w, (), r, r)


def to_cospan(t: Term, sig: Theory) -> Cospan:
    typecheck(t, sig)
    return _build(t, sig)


def _build(t, sig):
    if isinstance(t, Gen):
        g = sig.generator(t.name)
        nd, nc = len(g.dom), len(g.cod)
        ins = tuple(range(nd))
        outs = tuple(range(nd, nd + nc))
        return Cospan(g.dom + g.cod, (Edge(g.name, ins, outs),), ins, outs)
    if isinstance(t, Seq):
        return compose(_build(t.first, sig), _build(t.second, sig))
    if isinstance(t, Par):
        return tensor(_build(t.left, sig), _build(t.right, sig))
    if isinstance(t, Id):
        return identity(t.word)
    if isinstance(t, Sym):
        na, nb = len(t.left), len(t.right)
        outs = tuple(range(na, na + nb)) + tuple(range(na))
        return Cospan(t.left + t.right, (), tuple(range(na + nb)), outs)
    if isinstance(t, Dup):
        return Cospan((t.sort,), (), (0,), (0, 0))
    if isinstance(t, Merge):
        return Cospan((t.sort,), (), (0, 0), (0,))
    if isinstance(t, Del):
        return Cospan((t.sort,), (), (0,), ())
    if isinstance(t, New):
        return Cospan((t.sort,), (), (), (0,))
    raise TypeError(f"not a term: {t!r}")


def relabel(c: Cospan, vperm, eperm=None) -> Cospan:
    """Rename vertex ``v`` to ``vperm[v]`` and move edge ``e`` to ``eperm[e]``."""
    n = len(c.sorts)
    sorts = [None] * n
    for v, s in enumerate(c.sorts):
        sorts[vperm[v]] = s
    if eperm is None:
        eperm = range(len(c.edges))
    edges = [None] * len(c.edges)
    for e, (lab, src, tgt) in zip(eperm, c.edges):
        edges[e] = Edge(lab, tuple(vperm[v] for v in src), tuple(vperm[v] for v in tgt))
    return Cospan(tuple(sorts), tuple(edges),
                  tuple(vperm[v] for v in c.inputs), tuple(vperm[v] for v in c.outputs))


# ---------------------------------------------------------------------------
# Colour refinement
# ---------------------------------------------------------------------------

def _rank(keys):
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _initial_keys(c: Cospan):
    ins, outs = defaultdict(list), defaultdict(list)
    for k, v in enumerate(c.inputs):
        ins[v].append(k)
    for k, v in enumerate(c.outputs):
        outs[v].append(k)
    return [(s, tuple(ins[v]), tuple(outs[v])) for v, s in enumerate(c.sorts)]


def _incidence(n, edges):
    inc = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for p, v in enumerate(e.sources):
            inc[v].append((i, 0, p))
        for p, v in enumerate(e.targets):
            inc[v].append((i, 1, p))
    return inc


def _refine(colors, edges, inc):
    """Iterate colour refinement until the partition is stable."""
    ncells = len(set(colors))
    while True:
        ecol = [(e.label, tuple(colors[v] for v in e.sources),
                 tuple(colors[v] for v in e.targets)) for e in edges]
        sig = [(colors[v], tuple(sorted((ecol[i], role, p) for i, role, p in inc[v])))
               for v in range(len(colors))]
        new = _rank(sig)
        k = len(set(new))
        if k == ncells:
            return new
        colors, ncells = new, k


def _individualize(colors, chosen):
    return _rank([(c, 0 if v in chosen else 1) for v, c in enumerate(colors)])


def _cells(colors):
    cells = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    return [cells[c] for c in sorted(cells)]


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def _certificate(c: Cospan, order) -> Cospan:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    edges = sorted(Edge(e.label, tuple(pos[v] for v in e.sources),
                        tuple(pos[v] for v in e.targets)) for e in c.edges)
    return Cospan(tuple(c.sorts[v] for v in order), tuple(edges),
                  tuple(pos[v] for v in c.inputs), tuple(pos[v] for v in c.outputs))


def canonical_form(c: Cospan) -> Cospan:
    """A relabeling of ``c`` that is identical for all isomorphic cospans.

    Individualization-refinement: refine, branch on every vertex of the first
    non-trivial cell, keep the lexicographically least certificate.  Vertices
    that touch nothing are interchangeable and never branched on.
    """
    n = len(c.sorts)
    inc = _incidence(n, c.edges)
    boundary = set(c.inputs) | set(c.outputs)
    loose = [not inc[v] and v not in boundary for v in range(n)]
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(colors, c.edges, inc)
        target = next((cell for cell in _cells(colors)
                       if len(cell) > 1 and not loose[cell[0]]), None)
        if target is None:
            order = sorted(range(n), key=lambda v: (colors[v], v))
            cert = _certificate(c, order)
            if best is None or cert.key() < best.key():
                best = cert
            return
        for v in target:
            search(_individualize(colors, (v,)))

    search(_rank(_initial_keys(c)))
    return best


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """``vertex_map[v]`` / ``edge_map[e]`` give the image in the second cospan."""

    vertex_map: tuple
    edge_map: tuple

    def inverse(self) -> "IsoWitness":
        return IsoWitness(_invert(self.vertex_map), _invert(self.edge_map))

    def then(self, other: "IsoWitness") -> "IsoWitness":
        return IsoWitness(tuple(other.vertex_map[v] for v in self.vertex_map),
                          tuple(other.edge_map[e] for e in self.edge_map))


def _invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_witness(c1: Cospan, c2: Cospan, w: IsoWitness) -> bool:
    vm, em = w.vertex_map, w.edge_map
    if len(vm) != len(c1.sorts) or sorted(vm) != list(range(len(c2.sorts))):
        return False
    if len(em) != len(c1.edges) or sorted(em) != list(range(len(c2.edges))):
        return False
    if any(c1.sorts[v] != c2.sorts[vm[v]] for v in range(len(vm))):
        return False
    for e, (lab, src, tgt) in enumerate(c1.edges):
        img = c2.edges[em[e]]
        if (img.label != lab or img.sources != tuple(vm[v] for v in src)
                or img.targets != tuple(vm[v] for v in tgt)):
            return False
    return (tuple(vm[v] for v in c1.inputs) == c2.inputs
            and tuple(vm[v] for v in c1.outputs) == c2.outputs)


def iso(c1: Cospan, c2: Cospan) -> Optional[IsoWitness]:
    """Find an interface-preserving isomorphism ``c1 -> c2``, if one exists."""
    n1 = len(c1.sorts)
    if (n1 != len(c2.sorts) or len(c1.edges) != len(c2.edges)
            or c1.dom != c2.dom or c1.cod != c2.cod
            or Counter(c1.sorts) != Counter(c2.sorts)
            or Counter(e.label for e in c1.edges) != Counter(e.label for e in c2.edges)):
        return None
    union = tensor(c1, c2)
    inc = _incidence(2 * n1, union.edges)
    boundary = set(union.inputs) | set(union.outputs)
    loose = [not inc[v] and v not in boundary for v in range(2 * n1)]
    target_edges = Counter(c2.edges)

    def search(colors):
        colors = _refine(colors, union.edges, inc)
        cells = _cells(colors)
        target = None
        for cell in cells:
            left = [v for v in cell if v < n1]
            if 2 * len(left) != len(cell):
                return None
            if target is None and len(left) > 1 and not loose[cell[0]]:
                target = cell
        if target is None:
            vmap = [0] * n1
            for cell in cells:
                for a, b in zip([v for v in cell if v < n1], [v for v in cell if v >= n1]):
                    vmap[a] = b - n1
            mapped = Counter(Edge(e.label, tuple(vmap[v] for v in e.sources),
                                  tuple(vmap[v] for v in e.targets)) for e in c1.edges)
            return vmap if mapped == target_edges else None
        v = target[0]
        for u in target:
            if u >= n1:
                found = search(_individualize(colors, (v, u)))
                if found is not None:
                    return found
        return None

    keys = _initial_keys(c1) + _initial_keys(c2)
    vmap = search(_rank(keys))
    if vmap is None:
        return None
    slots = defaultdict(list)
    for i, e in enumerate(c2.edges):
        slots[e].append(i)
    for lst in slots.values():
        lst.reverse()
    emap = [slots[Edge(e.label, tuple(vmap[v] for v in e.sources),
                       tuple(vmap[v] for v in e.targets))].pop() for e in c1.edges]
    w = IsoWitness(tuple(vmap), tuple(emap))
    assert is_witness(c1, c2, w), "isomorphism search produced a bad witness"
    return w


def equal_mod_frobenius(t: Term, u: Term, sig: Theory) -> Optional[IsoWitness]:
    """Structural equality of two terms modulo the Frobenius laws."""
    return iso(to_cospan(t, sig), to_cospan(u, sig))
