"""Quotient optiongraphs and executable witnesses for the isomorphism theorems.

Every witness builds its map directly from the definitions and then re-checks
that it is an isomorphism.  A failed re-check raises
:class:`~ogkit.errors.TheoremViolation`: the theorems guarantee success, so a
failure means a bug here rather than bad input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import (
    Congruence,
    Lattice,
    Partition,
    all_congruences,
    is_congruence,
    join,
    lattice_of,
    max_congruence,
    meet,
)
from .errors import GraphMismatchError, NotCongruenceError, OgError, TheoremViolation
from .graph import Optiongraph, Suboptiongraph
from .morphism import OptionMap, image, is_isomorphism, is_option_preserving, kernel


def class_label(graph: Optiongraph, members) -> str:
    return "{" + ",".join(sorted(graph.labels[p] for p in members)) + "}"


@dataclass(frozen=True)
class QuotientResult:
    quotient: Optiongraph
    canonical_map: OptionMap
    congruence: Congruence


def _congruence_on(graph: Optiongraph, theta: Partition) -> Congruence:
    if not (theta.graph is graph or theta.graph == graph):
        raise GraphMismatchError("congruence belongs to a different optiongraph")
    verdict = is_congruence(graph, theta)
    if not verdict:
        raise NotCongruenceError(f"cannot take a quotient by a non-congruence: {verdict.reason}")
    return theta if isinstance(theta, Congruence) else Congruence(graph, theta.class_of)


def quotient(graph: Optiongraph, theta: Partition) -> QuotientResult:
    """``graph / theta`` with positions ordered by each class's first member."""
    theta = _congruence_on(graph, theta)
    class_of = theta.class_of
    labels = [class_label(graph, members) for members in theta.classes]
    options = [
        sorted({class_of[q] for q in graph.options[members[0]]}) for members in theta.classes
    ]
    q_graph = Optiongraph(labels, options)
    f = OptionMap(graph, q_graph, class_of)
    if not is_option_preserving(f):
        raise TheoremViolation("canonical quotient map is not option preserving")
    return QuotientResult(q_graph, f, theta)


def minimize(graph: Optiongraph) -> QuotientResult:
    """The minimum quotient ``graph / max_congruence(graph)``."""
    return quotient(graph, max_congruence(graph))


def _iso_or_raise(f: OptionMap, what: str) -> OptionMap:
    verdict = is_isomorphism(f)
    if not verdict:
        raise TheoremViolation(f"{what}: claimed isomorphism fails ({verdict.reason})")
    return f


def first_iso_witness(f: OptionMap) -> OptionMap:
    """The isomorphism ``[p] -> f(p)`` from ``source / ker(f)`` onto the image of ``f``."""
    ker = kernel(f)
    q = quotient(f.source, ker)
    img = image(f)
    slot = {x: i for i, x in enumerate(img.embedding)}
    assignment = [slot[f.assignment[members[0]]] for members in ker.classes]
    return _iso_or_raise(OptionMap(q.quotient, img.graph, assignment), "first isomorphism")


def restrict_congruence(theta: Partition, sub: Suboptiongraph) -> Congruence:
    """``theta`` restricted to the positions of ``sub``, as a congruence on ``sub.graph``."""
    if not (theta.graph is sub.parent or theta.graph == sub.parent):
        raise GraphMismatchError("congruence and suboptiongraph have different parents")
    out = Partition(sub.graph, [theta.class_of[p] for p in sub.embedding])
    verdict = is_congruence(sub.graph, out)
    if not verdict:
        raise TheoremViolation(f"restriction is not a congruence: {verdict.reason}")
    return Congruence(sub.graph, out.class_of)


def extend_congruence(theta: Partition, sub: Suboptiongraph) -> Congruence:
    """Extend a congruence on ``sub.graph`` to the parent by singletons outside ``sub``."""
    if not (theta.graph is sub.graph or theta.graph == sub.graph):
        raise GraphMismatchError("congruence does not live on the suboptiongraph")
    parent = sub.parent
    offset = len(theta.classes)
    class_of = [-1] * parent.n
    for i, p in enumerate(sub.embedding):
        class_of[p] = theta.class_of[i]
    for p in range(parent.n):
        if class_of[p] < 0:
            class_of[p] = offset
            offset += 1
    out = Partition(parent, class_of)
    verdict = is_congruence(parent, out)
    if not verdict:
        raise TheoremViolation(f"extension is not a congruence: {verdict.reason}")
    return Congruence(parent, out.class_of)


@dataclass(frozen=True)
class SecondIsoWitness:
    restricted: Congruence  # theta restricted to C, on sub.graph
    tilde: Suboptiongraph  # classes of D/theta meeting C
    iso: OptionMap  # C / restricted -> tilde.graph


def second_iso_witness(sub: Suboptiongraph, theta: Partition) -> SecondIsoWitness:
    graph = sub.parent
    theta = _congruence_on(graph, theta)
    restricted = restrict_congruence(theta, sub)
    big = quotient(graph, theta)
    tilde = Suboptiongraph(big.quotient, frozenset(theta.class_of[p] for p in sub.members))
    small = quotient(sub.graph, restricted)
    slot = {x: i for i, x in enumerate(tilde.embedding)}
    assignment = [
        slot[theta.class_of[sub.embedding[members[0]]]] for members in restricted.classes
    ]
    iso = _iso_or_raise(OptionMap(small.quotient, tilde.graph, assignment), "second isomorphism")
    return SecondIsoWitness(restricted, tilde, iso)


def relation_quotient(theta: Partition, eta: Partition) -> Congruence:
    """``theta / eta`` as a congruence on ``D / eta``; needs ``eta <= theta``."""
    graph = eta.graph
    eta = _congruence_on(graph, eta)
    theta = _congruence_on(graph, theta)
    if not eta <= theta:
        raise OgError(f"{eta!r} does not refine {theta!r}")
    q = quotient(graph, eta)
    out = Partition(q.quotient, [theta.class_of[members[0]] for members in eta.classes])
    verdict = is_congruence(q.quotient, out)
    if not verdict:
        raise TheoremViolation(f"relation quotient is not a congruence: {verdict.reason}")
    return Congruence(q.quotient, out.class_of)


@dataclass(frozen=True)
class ThirdIsoWitness:
    relation: Congruence  # theta / eta on D / eta
    double: QuotientResult  # (D / eta) / (theta / eta)
    iso: OptionMap  # double.quotient -> D / theta


def third_iso_witness(eta: Partition, theta: Partition) -> ThirdIsoWitness:
    graph = eta.graph
    relation = relation_quotient(theta, eta)
    eta_q = quotient(graph, eta)
    double = quotient(eta_q.quotient, relation)
    theta_q = quotient(graph, theta)
    # outer[0] is an eta-class index; any member of it picks the theta-class
    assignment = [theta.class_of[eta.classes[outer[0]][0]] for outer in relation.classes]
    iso = _iso_or_raise(OptionMap(double.quotient, theta_q.quotient, assignment), "third isomorphism")
    return ThirdIsoWitness(relation, double, iso)


@dataclass(frozen=True)
class FourthIsoWitness:
    theta: Congruence
    interval: tuple[Congruence, ...]  # [theta, max] in Con(D), finest first
    images: tuple[Congruence, ...]  # images[i] = interval[i] / theta
    target: Lattice  # Con(D / theta)


def fourth_iso_alpha(graph: Optiongraph, theta: Partition, bound: int | None = None) -> FourthIsoWitness:
    """The order isomorphism ``phi -> phi/theta`` from ``[theta, max]`` onto Con(D/theta)."""
    theta = _congruence_on(graph, theta)
    interval = tuple(c for c in all_congruences(graph, bound) if theta <= c)
    q = quotient(graph, theta)
    target = lattice_of(all_congruences(q.quotient, bound))
    images = tuple(relation_quotient(phi, theta) for phi in interval)
    if len(set(images)) != len(images):
        raise TheoremViolation("fourth isomorphism: alpha is not injective")
    if set(images) != set(target.elements):
        raise TheoremViolation("fourth isomorphism: alpha is not onto Con(D/theta)")
    for i, a in enumerate(interval):
        for j, b in enumerate(interval):
            if (a <= b) != (images[i] <= images[j]):
                raise TheoremViolation(
                    f"fourth isomorphism: order not preserved between {a!r} and {b!r}"
                )
            if (relation_quotient(meet(a, b), theta) != meet(images[i], images[j])
                    or relation_quotient(join(a, b), theta) != join(images[i], images[j])):
                raise TheoremViolation(
                    f"fourth isomorphism: meet or join not preserved at {a!r}, {b!r}"
                )
    return FourthIsoWitness(theta, interval, images, target)
