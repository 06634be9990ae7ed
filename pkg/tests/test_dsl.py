import pytest

from relthy.builtins import NAMES, SOURCES, builtin
from relthy.cospan import equal_mod_frobenius
from relthy.dsl import format_term, format_theory, parse, parse_term
from relthy.errors import AxiomTypeError, ParseError
from relthy.terms import Dup, Gen, Id, Merge, Par, Seq, Sym, converse, meet

POSETS = builtin("posets")


def test_posets_shape():
    assert POSETS.sorts == ("X",)
    assert [g.name for g in POSETS.generators] == ["le"]
    assert [a.name for a in POSETS.axioms] == ["reflexive", "transitive", "antisymmetric"]
    assert all(a.kind == "equation" for a in POSETS.axioms)


def test_builtin_shapes():
    assert len(builtin("effectoids").axioms) == 9
    assert len(builtin("gsa").axioms) == 10
    assert builtin("sets").generators == () and builtin("sets").axioms == ()
    assert len(builtin("nonempty").axioms) == 1


def test_empty_file():
    th = parse("")
    assert th.sorts == () and th.generators == () and th.axioms == ()


def test_precedence():
    t = parse_term("dup ; le * id ; merge", POSETS)
    assert t == Seq(Seq(Dup("X"), Par(Gen("le"), Id(("X",)))), Merge("X"))
    assert parse_term("le /\\ id", POSETS) == meet(Gen("le"), Id(("X",)), POSETS)
    assert parse_term("conv(le)", POSETS) == converse(Gen("le"), POSETS)
    assert parse_term("sym", POSETS) == Sym(("X",), ("X",))
    assert parse_term("id([])", POSETS) == Id(())
    assert parse_term("sym([X, X], X)", POSETS) == Sym(("X", "X"), ("X",))


def test_inclusion_desugars_to_meet():
    ax = POSETS.axiom("reflexive")
    assert ax.lhs == meet(Id(("X",)), Gen("le"), POSETS)
    assert ax.rhs == Id(("X",))


def test_type_error_names_axiom():
    src = "sort X\ngen le : X -> X\ngen m : [X, X] -> X\naxiom bad: le ; m = le\n"
    with pytest.raises(AxiomTypeError) as err:
        parse(src)
    assert err.value.name == "bad"


def test_unknown_generator_in_axiom():
    with pytest.raises(AxiomTypeError):
        parse("sort X\naxiom oops: nope = id\n")


def test_syntax_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("sort X\ngen le : X -> X\naxiom a: le ; = le\n")
    assert (err.value.line, err.value.col) == (3, 15)
    with pytest.raises(ParseError) as err:
        parse("sort X\n  gen le X -> X\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse("sort X\naxiom a: le ? le\n")


def test_bare_structure_needs_one_sort():
    with pytest.raises(ParseError):
        parse("sort A, B\naxiom a: dup ; merge = id\n")
    th = parse("sort A, B\naxiom a: dup(A) ; merge(A) = id(A)\n")
    assert th.axiom("a").rhs == Id(("A",))


@pytest.mark.parametrize("name", NAMES)
def test_print_parse_roundtrip(name):
    th = builtin(name)
    printed = format_theory(th)
    again = parse(printed)
    assert again == th
    assert format_theory(again) == printed


@pytest.mark.parametrize("name", NAMES)
def test_sources_parse(name):
    assert parse(SOURCES[name]).name.replace("_", "-") == name


def test_format_term_minimal_parens():
    t = Seq(Dup("X"), Par(Gen("le"), Seq(Gen("le"), Gen("le"))))
    assert format_term(t) == "dup(X) ; le * (le ; le)"
    assert parse_term(format_term(t), POSETS) == t


def test_structural_cli_examples():
    assert equal_mod_frobenius(parse_term("dup ; (del * id)", POSETS), Id(("X",)), POSETS)
    assert equal_mod_frobenius(parse_term("dup ; merge", POSETS), Id(("X",)), POSETS)
    assert equal_mod_frobenius(Gen("le"), parse_term("conv(le)", POSETS), POSETS) is None
