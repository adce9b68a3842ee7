"""Optiongraphs: option-preserving maps, congruences, quotients and game values."""

from .congruence import (
    Congruence,
    Lattice,
    Partition,
    all_congruences,
    congruence_lattice,
    is_congruence,
    is_simple,
    join,
    max_congruence,
    meet,
    parse_congruence,
    principal_congruence,
)
from .errors import OgError, ParseError, TheoremViolation
from .graph import (
    Optiongraph,
    Suboptiongraph,
    parse_optiongraph,
    reachable_closure,
    read_optiongraph,
    serialize,
    terminals,
    to_dot,
)
from .morphism import (
    OptionMap,
    are_isomorphic,
    canonical_form,
    compose,
    find_isomorphism,
    image,
    is_option_preserving,
    kernel,
)
from .quotient import minimize, quotient
from .sums import game_sum, product_map, sum_congruence
from .valuation import (
    INF,
    NimValue,
    Outcome,
    extended_nim,
    fim_partition,
    formal_birthday,
    is_rulegraph,
    misere_outcomes,
    outcomes_normal,
    remoteness,
    valuate,
)

__version__ = "0.1.0"

__all__ = [
    "all_congruences",
    "are_isomorphic",
    "canonical_form",
    "compose",
    "Congruence",
    "congruence_lattice",
    "extended_nim",
    "fim_partition",
    "find_isomorphism",
    "formal_birthday",
    "game_sum",
    "image",
    "INF",
    "is_congruence",
    "is_option_preserving",
    "is_rulegraph",
    "is_simple",
    "join",
    "kernel",
    "Lattice",
    "max_congruence",
    "meet",
    "minimize",
    "misere_outcomes",
    "NimValue",
    "OgError",
    "Optiongraph",
    "OptionMap",
    "Outcome",
    "outcomes_normal",
    "parse_congruence",
    "parse_optiongraph",
    "ParseError",
    "Partition",
    "principal_congruence",
    "product_map",
    "quotient",
    "reachable_closure",
    "read_optiongraph",
    "remoteness",
    "serialize",
    "Suboptiongraph",
    "sum_congruence",
    "terminals",
    "TheoremViolation",
    "to_dot",
    "valuate",
]
