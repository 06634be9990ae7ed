"""relthy: a workbench for relational algebraic theories.

Terms are string diagrams over a signature, equality modulo the Frobenius
laws is decided on cospans of hypergraphs, and models are searched for in
finite relations.
"""
from .builtins import builtin
from .cospan import Cospan, canonical_form, equal_mod_frobenius, iso, to_cospan
from .dsl import format_theory, parse, parse_file, parse_term
from .errors import RelthyError
from .finrel import Model, Relation, eval_cospan, eval_term
from .search import check_model, count_models, enumerate_morphisms, iter_models
from .terms import (Axiom, Del, Dup, Gen, GeneratorSymbol, Id, Merge, New, Par,
                    Seq, Sym, Term, Theory, typecheck)

__version__ = "0.1.0"
