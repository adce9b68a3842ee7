"""Game sums (box products), products of maps, and product congruences."""

from __future__ import annotations

from .congruence import Congruence, Partition, as_congruence, is_congruence
from .errors import OgError, TheoremViolation, UnverifiedMapError
from .graph import Optiongraph
from .morphism import OptionMap, is_option_preserving

DEFAULT_SEP = ","


def game_sum(c: Optiongraph, d: Optiongraph, sep: str = DEFAULT_SEP) -> Optiongraph:
    """``c + d``: positions are pairs ``(p, q)`` in row-major order, labelled ``"p,q"``.

    A move changes exactly one coordinate.
    """
    for lab in c.labels + d.labels:
        if sep in lab:
            raise OgError(
                f"label {lab!r} contains the pair separator {sep!r}; pick another separator"
            )
    m = d.n
    labels = [f"{a}{sep}{b}" for a in c.labels for b in d.labels]
    options = []
    for p in range(c.n):
        for q in range(m):
            row = [r * m + q for r in c.options[p]]
            row += [p * m + s for s in d.options[q] if p * m + s not in row]
            options.append(row)
    return Optiongraph(labels, options)


def product_map(f: OptionMap, g: OptionMap, sep: str = DEFAULT_SEP) -> OptionMap:
    """``(c, d) -> (f(c), g(d))`` between the two sums, verified."""
    if not (f.verified and g.verified):
        raise UnverifiedMapError("product_map needs verified option-preserving factors")
    src = game_sum(f.source, g.source, sep)
    tgt = game_sum(f.target, g.target, sep)
    m = g.target.n
    assignment = [
        f.assignment[p] * m + g.assignment[q] for p in range(f.source.n) for q in range(g.source.n)
    ]
    h = OptionMap(src, tgt, assignment)
    verdict = is_option_preserving(h)
    if not verdict:
        raise TheoremViolation(f"product of option-preserving maps fails: {verdict.reason}")
    return h


def sum_congruence(phi: Partition, psi: Partition, sep: str = DEFAULT_SEP) -> Congruence:
    """``(c, d) ~ (c', d')`` iff ``c phi c'`` and ``d psi d'``, on ``C + D``."""
    phi, psi = as_congruence(phi), as_congruence(psi)
    graph = game_sum(phi.graph, psi.graph, sep)
    k = len(psi.classes)
    class_of = [
        phi.class_of[p] * k + psi.class_of[q]
        for p in range(phi.graph.n)
        for q in range(psi.graph.n)
    ]
    out = Partition(graph, class_of)
    verdict = is_congruence(graph, out)
    if not verdict:
        raise TheoremViolation(f"product congruence is not a congruence: {verdict.reason}")
    return Congruence(graph, out.class_of)
