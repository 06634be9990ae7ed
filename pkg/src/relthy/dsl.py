"""Parser and pretty-printer for ``.rat`` theory files.

Grammar::

    file    := { stmt }
    stmt    := "theory" IDENT
             | "sort" IDENT { "," IDENT }
             | "gen" IDENT ":" word "->" word
             | "axiom" IDENT ":" expr ( "=" | "<=" ) expr
    word    := IDENT | "[" [ IDENT { "," IDENT } ] "]"
    expr    := seq { "/\\" seq }
    seq     := par { ";" par }
    par     := atom { "*" atom }
    atom    := "(" expr ")" | "conv" "(" expr ")"
             | ( "dup" | "merge" | "del" | "new" ) [ "(" IDENT ")" ]
             | "id" [ "(" word ")" ] | "sym" [ "(" word "," word ")" ]
             | IDENT

``#`` starts a comment.  Bare ``dup``, ``id``, ``sym`` and friends are only
allowed when the theory declares exactly one sort.  Converse, meet and
inclusions are desugared while loading, so the resulting theory only holds
primitive terms and equations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (AxiomTypeError, InterfaceMismatch, NotParallel, ParseError,
                     RelthyError, UnknownGenerator, UnknownSort)
from .terms import (EQUATION, INCLUSION, Axiom, Del, Dup, Gen, GeneratorSymbol,
                    Id, Merge, New, Par, Seq, Sym, Term, Theory, converse,
                    desugar_inclusion, meet)

KEYWORDS = {"theory", "sort", "gen", "axiom", "conv", "dup", "merge", "del",
            "new", "id", "sym"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|<=|/\\|[=;*()\[\],:])
""", re.X)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(src: str):
    toks = []
    pos, line, col0 = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(line, pos - col0 + 1, f"unexpected character {src[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind == "ident":
            toks.append(_Tok("kw" if m.group() in KEYWORDS else "ident", m.group(),
                             line, pos - col0 + 1))
        elif kind == "op":
            toks.append(_Tok("op", m.group(), line, pos - col0 + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - col0 + 1))
    return toks


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(tok.line, tok.col, msg)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind in ("op", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of file"
            raise self.error(f"expected {text!r}, found {found!r}")

    def ident(self):
        tok = self.tok
        if tok.kind != "ident":
            found = tok.text or "end of file"
            raise self.error(f"expected an identifier, found {found!r}")
        self.i += 1
        return tok.text

    # statements -----------------------------------------------------------

    def file(self):
        name, sorts, gens, axioms = None, [], [], []
        while self.tok.kind != "eof":
            tok = self.tok
            if self.accept("theory"):
                name = self.ident()
            elif self.accept("sort"):
                sorts.append((self.ident(), tok))
                while self.accept(","):
                    sorts.append((self.ident(), tok))
            elif self.accept("gen"):
                g = self.ident()
                self.expect(":")
                dom = self.word()
                self.expect("->")
                cod = self.word()
                gens.append((GeneratorSymbol(g, dom, cod), tok))
            elif self.accept("axiom"):
                ax = self.ident()
                self.expect(":")
                lhs = self.expr()
                if self.accept("="):
                    kind = EQUATION
                elif self.accept("<="):
                    kind = INCLUSION
                else:
                    raise self.error(f"expected '=' or '<=' in axiom {ax!r}")
                rhs = self.expr()
                axioms.append((ax, kind, lhs, rhs, tok))
            else:
                raise self.error(f"expected a statement, found {tok.text!r}")
        return name, sorts, gens, axioms

    def word(self):
        if self.accept("["):
            out = []
            if not self.accept("]"):
                out.append(self.ident())
                while self.accept(","):
                    out.append(self.ident())
                self.expect("]")
            return tuple(out)
        return (self.ident(),)

    # expressions: raw nested tuples, elaborated once the signature is known

    def expr(self):
        t = self.seq()
        while self.accept("/\\"):
            t = ("meet", t, self.seq())
        return t

    def seq(self):
        t = self.par()
        while self.accept(";"):
            t = ("seq", t, self.par())
        return t

    def par(self):
        t = self.atom()
        while self.accept("*"):
            t = ("par", t, self.atom())
        return t

    def atom(self):
        tok = self.tok
        if self.accept("("):
            t = self.expr()
            self.expect(")")
            return t
        if self.accept("conv"):
            self.expect("(")
            t = self.expr()
            self.expect(")")
            return ("conv", t)
        for kw in ("dup", "merge", "del", "new"):
            if self.accept(kw):
                sort = None
                if self.accept("("):
                    sort = self.ident()
                    self.expect(")")
                return (kw, sort, tok)
        if self.accept("id"):
            w = None
            if self.accept("("):
                w = self.word()
                self.expect(")")
            return ("id", w, tok)
        if self.accept("sym"):
            a = b = None
            if self.accept("("):
                a = self.word()
                self.expect(",")
                b = self.word()
                self.expect(")")
            return ("sym", (a, b), tok)
        if tok.kind == "ident":
            self.i += 1
            return ("gen", tok.text, tok)
        raise self.error(f"expected a term, found {tok.text or 'end of file'!r}")


_STRUCT = {"dup": Dup, "merge": Merge, "del": Del, "new": New}


def _elaborate(raw, sig: Theory) -> Term:
    tag = raw[0]
    if tag == "seq":
        return Seq(_elaborate(raw[1], sig), _elaborate(raw[2], sig))
    if tag == "par":
        return Par(_elaborate(raw[1], sig), _elaborate(raw[2], sig))
    if tag == "meet":
        return meet(_elaborate(raw[1], sig), _elaborate(raw[2], sig), sig)
    if tag == "conv":
        return converse(_elaborate(raw[1], sig), sig)
    tok = raw[-1]

    def default_sort():
        if len(sig.sorts) != 1:
            raise ParseError(tok.line, tok.col,
                             f"bare {tag!r} needs an explicit sort when the theory "
                             f"has {len(sig.sorts)} sorts")
        return sig.sorts[0]

    if tag in _STRUCT:
        return _STRUCT[tag](raw[1] or default_sort())
    if tag == "id":
        return Id(raw[1] if raw[1] is not None else (default_sort(),))
    if tag == "sym":
        a, b = raw[1]
        if a is None:
            a = b = (default_sort(),)
        return Sym(a, b)
    if tag == "gen":
        return Gen(raw[1])
    raise AssertionError(tag)


def parse(src: str) -> Theory:
    """Parse ``.rat`` source into a theory whose axioms are all equations."""
    name, sorts, gens, raw_axioms = _Parser(src).file()
    try:
        sig = Theory(tuple(s for s, _ in sorts), tuple(g for g, _ in gens), (), name or "anonymous")
    except RelthyError as exc:
        tok = (sorts or gens)[0][1]
        raise ParseError(tok.line, tok.col, str(exc)) from None
    axioms = []
    for ax, kind, lhs, rhs, tok in raw_axioms:
        try:
            axiom = Axiom(ax, _elaborate(lhs, sig), _elaborate(rhs, sig), kind)
            if kind == INCLUSION:
                axiom = desugar_inclusion(axiom, sig)
        except (UnknownGenerator, UnknownSort, InterfaceMismatch, NotParallel) as exc:
            raise AxiomTypeError(ax, exc) from None
        axioms.append(axiom)
    return Theory(sig.sorts, sig.generators, tuple(axioms), sig.name)


def parse_file(path) -> Theory:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def parse_term(src: str, sig: Theory) -> Term:
    """Parse a single term against an existing signature."""
    p = _Parser(src)
    raw = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after term")
    return _elaborate(raw, sig)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def format_word(w) -> str:
    w = tuple(w)
    if len(w) == 1:
        return w[0]
    return "[" + ", ".join(w) + "]"


def format_term(t: Term, level: int = 0) -> str:
    """Render a primitive term; sorts are always explicit so parsing round-trips."""
    if isinstance(t, Seq):
        s = f"{format_term(t.first, 1)} ; {format_term(t.second, 2)}"
        return f"({s})" if level > 1 else s
    if isinstance(t, Par):
        s = f"{format_term(t.left, 2)} * {format_term(t.right, 3)}"
        return f"({s})" if level > 2 else s
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id({format_word(t.word)})"
    if isinstance(t, Sym):
        return f"sym({format_word(t.left)}, {format_word(t.right)})"
    for kw, cls in _STRUCT.items():
        if isinstance(t, cls):
            return f"{kw}({t.sort})"
    raise TypeError(f"not a term: {t!r}")


def format_theory(th: Theory) -> str:
    lines = [f"theory {th.name}"]
    if th.sorts:
        lines.append("sort " + ", ".join(th.sorts))
    for g in th.generators:
        lines.append(f"gen {g.name} : {format_word(g.dom)} -> {format_word(g.cod)}")
    for ax in th.axioms:
        op = "=" if ax.kind == EQUATION else "<="
        lines.append(f"axiom {ax.name}: {format_term(ax.lhs)} {op} {format_term(ax.rhs)}")
    return "\n".join(lines) + "\n"
