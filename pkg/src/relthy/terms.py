"""Signatures, string-diagram terms and axioms.

Terms are built from generator symbols and the structural pieces every
object of a hypergraph category carries: identities, symmetries and the
Frobenius structure ``dup``/``merge``/``del``/``new`` on single sorts.
Interfaces are *words* (tuples of sort names); the monoidal structure is
strict, so a word is just a flat tuple.

Derived connectives (converse, meet, inclusion) are desugared into this
primitive language rather than added as new constructors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (AxiomTypeError, InterfaceMismatch, NotParallel,
                     TheoryError, UnknownGenerator, UnknownSort)

Word = tuple  # tuple[str, ...]


def word(*sorts: str) -> Word:
    return tuple(sorts)


# ---------------------------------------------------------------------------
# Term syntax
# ---------------------------------------------------------------------------

class Term:
    """Base class of the term AST.  ``a >> b`` is sequencing, ``a @ b`` tensor."""

    __slots__ = ()

    def __rshift__(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Par":
        return Par(self, other)


@dataclass(frozen=True, slots=True)
class Gen(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Id(Term):
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))


@dataclass(frozen=True, slots=True)
class Sym(Term):
    left: Word
    right: Word

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


@dataclass(frozen=True, slots=True)
class Dup(Term):
    sort: str


@dataclass(frozen=True, slots=True)
class Merge(Term):
    sort: str


@dataclass(frozen=True, slots=True)
class Del(Term):
    sort: str


@dataclass(frozen=True, slots=True)
class New(Term):
    sort: str


@dataclass(frozen=True, slots=True)
class Seq(Term):
    first: Term
    second: Term


@dataclass(frozen=True, slots=True)
class Par(Term):
    left: Term
    right: Term


STRUCTURAL_SORTED = (Dup, Merge, Del, New)


# ---------------------------------------------------------------------------
# Signatures and theories
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    dom: Word
    cod: Word

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))


EQUATION = "equation"
INCLUSION = "inclusion"


@dataclass(frozen=True)
class Axiom:
    name: str
    lhs: Term
    rhs: Term
    kind: str = EQUATION

    def __post_init__(self):
        if self.kind not in (EQUATION, INCLUSION):
            raise ValueError(f"bad axiom kind {self.kind!r}")


@dataclass(frozen=True)
class Theory:
    """Sorts, generator symbols and axioms.

    Construction validates the invariants: names are unique, generator
    arities only use declared sorts and every axiom typechecks with both
    sides parallel.
    """

    sorts: tuple = ()
    generators: tuple = ()
    axioms: tuple = ()
    name: str = "anonymous"
    _gens: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        if len(set(self.sorts)) != len(self.sorts):
            raise TheoryError(f"duplicate sort in {list(self.sorts)}")
        gens = {}
        for g in self.generators:
            if g.name in gens:
                raise TheoryError(f"duplicate generator {g.name!r}")
            for s in g.dom + g.cod:
                if s not in self.sorts:
                    raise UnknownSort(s)
            gens[g.name] = g
        object.__setattr__(self, "_gens", gens)
        seen = set()
        for ax in self.axioms:
            if ax.name in seen:
                raise TheoryError(f"duplicate axiom {ax.name!r}")
            seen.add(ax.name)
            try:
                lt = typecheck(ax.lhs, self)
                rt = typecheck(ax.rhs, self)
            except (UnknownGenerator, UnknownSort, InterfaceMismatch) as exc:
                raise AxiomTypeError(ax.name, exc) from exc
            if lt != rt:
                raise AxiomTypeError(
                    ax.name, NotParallel(f"sides have types {lt} and {rt}"))

    def generator(self, name: str) -> GeneratorSymbol:
        try:
            return self._gens[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def has_generator(self, name: str) -> bool:
        return name in self._gens

    def axiom(self, name: str) -> Axiom:
        for ax in self.axioms:
            if ax.name == name:
                return ax
        raise KeyError(name)

    def desugared(self) -> "Theory":
        """The same theory with every inclusion compiled to an equation."""
        axioms = tuple(desugar_inclusion(ax, self) if ax.kind == INCLUSION else ax
                       for ax in self.axioms)
        return Theory(self.sorts, self.generators, axioms, self.name)


# ---------------------------------------------------------------------------
# Typechecking
# ---------------------------------------------------------------------------

def typecheck(t: Term, sig: Theory) -> tuple:
    """Return the ``(dom, cod)`` words of ``t``."""
    return _typecheck(t, sig, "")


def _child(pos, i):
    return f"{pos}.{i}" if pos else str(i)


def _check_sort(s, sig):
    if s not in sig.sorts:
        raise UnknownSort(s)


def _typecheck(t, sig, pos):
    if isinstance(t, Gen):
        g = sig.generator(t.name)
        return g.dom, g.cod
    if isinstance(t, Seq):
        d1, c1 = _typecheck(t.first, sig, _child(pos, 0))
        d2, c2 = _typecheck(t.second, sig, _child(pos, 1))
        if c1 != d2:
            raise InterfaceMismatch(pos, c1, d2)
        return d1, c2
    if isinstance(t, Par):
        d1, c1 = _typecheck(t.left, sig, _child(pos, 0))
        d2, c2 = _typecheck(t.right, sig, _child(pos, 1))
        return d1 + d2, c1 + c2
    if isinstance(t, Id):
        for s in t.word:
            _check_sort(s, sig)
        return t.word, t.word
    if isinstance(t, Sym):
        for s in t.left + t.right:
            _check_sort(s, sig)
        return t.left + t.right, t.right + t.left
    if isinstance(t, STRUCTURAL_SORTED):
        s = t.sort
        _check_sort(s, sig)
        if isinstance(t, Dup):
            return (s,), (s, s)
        if isinstance(t, Merge):
            return (s, s), (s,)
        if isinstance(t, Del):
            return (s,), ()
        return (), (s,)
    raise TypeError(f"not a term: {t!r}")


def generators_of(t: Term) -> frozenset:
    """Names of the generator symbols occurring in ``t``."""
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Gen):
            out.add(u.name)
        elif isinstance(u, Seq):
            stack += (u.first, u.second)
        elif isinstance(u, Par):
            stack += (u.left, u.right)
    return frozenset(out)


def size(t: Term) -> int:
    """Number of AST nodes."""
    if isinstance(t, Seq):
        return 1 + size(t.first) + size(t.second)
    if isinstance(t, Par):
        return 1 + size(t.left) + size(t.right)
    return 1


# ---------------------------------------------------------------------------
# Builders: structural generators extended to words
# ---------------------------------------------------------------------------

def seq(*ts: Term) -> Term:
    """Left-nested sequential composite."""
    out = ts[0]
    for t in ts[1:]:
        out = Seq(out, t)
    return out


def par(*ts: Term) -> Term:
    """Left-nested tensor, dropping identities on the empty word."""
    keep = [t for t in ts if t != Id(())]
    if not keep:
        return Id(())
    out = keep[0]
    for t in keep[1:]:
        out = Par(out, t)
    return out


def dup_word(w: Iterable[str]) -> Term:
    """w -> w w, copying every wire."""
    w = tuple(w)
    if not w:
        return Id(())
    out = Dup(w[0])
    for i in range(1, len(w)):
        pre, x = w[:i], w[i]
        # pre x -> pre pre x x -> pre x pre x
        out = Seq(par(out, Dup(x)),
                  par(Id(pre), Sym(pre, (x,)), Id((x,))))
    return out


def merge_word(w: Iterable[str]) -> Term:
    """w w -> w, the mirror image of :func:`dup_word`."""
    w = tuple(w)
    if not w:
        return Id(())
    out = Merge(w[0])
    for i in range(1, len(w)):
        pre, x = w[:i], w[i]
        out = Seq(par(Id(pre), Sym((x,), pre), Id((x,))),
                  par(out, Merge(x)))
    return out


def del_word(w: Iterable[str]) -> Term:
    return par(*(Del(s) for s in w))


def new_word(w: Iterable[str]) -> Term:
    return par(*(New(s) for s in w))


def cup(w: Iterable[str]) -> Term:
    """I -> w w, relating equal tuples."""
    w = tuple(w)
    return seq(new_word(w), dup_word(w)) if w else Id(())


def cap(w: Iterable[str]) -> Term:
    """w w -> I, accepting equal tuples."""
    w = tuple(w)
    return seq(merge_word(w), del_word(w)) if w else Id(())


def top(dom: Iterable[str], cod: Iterable[str]) -> Term:
    """The total relation dom -> cod."""
    return seq(del_word(dom), new_word(cod))


def converse(t: Term, sig: Theory) -> Term:
    """Bend both ends of ``t`` around: b -> a for ``t : a -> b``."""
    a, b = typecheck(t, sig)
    return seq(par(cup(a), Id(b)),
               par(Id(a), t, Id(b)),
               par(Id(a), cap(b)))


def meet(t: Term, u: Term, sig: Theory) -> Term:
    """Intersection of two parallel terms: copy, run both, merge."""
    tt, tu = typecheck(t, sig), typecheck(u, sig)
    if tt != tu:
        raise NotParallel(f"cannot meet {tt} with {tu}")
    dom, cod = tt
    return seq(dup_word(dom), par(t, u), merge_word(cod))


def desugar_inclusion(ax: Axiom, sig: Theory) -> Axiom:
    """Encode ``lhs <= rhs`` as the equation ``lhs /\\ rhs = lhs``."""
    if ax.kind != INCLUSION:
        raise ValueError(f"axiom {ax.name!r} is not an inclusion")
    return Axiom(ax.name, meet(ax.lhs, ax.rhs, sig), ax.lhs, EQUATION)
