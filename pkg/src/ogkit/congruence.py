"""Partitions, congruence relations and the congruence lattice Con(D).

A congruence is an equivalence relation under which equivalent positions
reach the same set of classes in one move.  The maximum congruence is found
by partition refinement; the full lattice by exhaustive search over the
partitions that refine it.
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import BoundExceededError, GraphMismatchError, NotCongruenceError, OgError, ParseError
from .graph import Optiongraph
from .verdict import TRUE, Verdict

DEFAULT_MAX_POSITIONS = 10
DISCRETE_TEXT = "(discrete)"


def enumeration_bound(bound: int | None = None) -> int:
    """Position-count bound for exhaustive congruence enumeration.

    An explicit argument wins, then ``OGKIT_MAX_POSITIONS``, then 10.
    """
    if bound is not None:
        return bound
    env = os.environ.get("OGKIT_MAX_POSITIONS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise OgError(f"OGKIT_MAX_POSITIONS must be an integer, got {env!r}") from None
    return DEFAULT_MAX_POSITIONS


def _normalize(class_of: Sequence[int]) -> tuple[int, ...]:
    # renumber classes by first appearance = smallest member's declaration index
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen)) for c in class_of)


def _same_graph(a: Optiongraph, b: Optiongraph) -> bool:
    return a is b or a == b


class Partition:
    """An equivalence relation on the positions of ``graph``.

    ``class_of[p]`` is the class index of ``p``; classes are numbered in
    order of their smallest member.  ``a <= b`` means ``a`` refines ``b``.
    """

    def __init__(self, graph: Optiongraph, class_of: Sequence[int]):
        if len(class_of) != graph.n:
            raise GraphMismatchError(
                f"partition covers {len(class_of)} positions, graph has {graph.n}"
            )
        self.graph = graph
        self.class_of = _normalize(class_of)

    @classmethod
    def discrete(cls, graph: Optiongraph):
        return cls(graph, range(graph.n))

    @classmethod
    def total(cls, graph: Optiongraph):
        return cls(graph, [0] * graph.n)

    @classmethod
    def from_classes(cls, graph: Optiongraph, classes: Iterable[Iterable[int]]):
        """Positions absent from ``classes`` become singletons."""
        class_of = [-1] * graph.n
        k = 0
        for members in classes:
            members = list(members)
            if not members:
                continue
            for p in members:
                if not 0 <= p < graph.n:
                    raise GraphMismatchError(f"position id {p} is not in the graph")
                if class_of[p] != -1:
                    raise OgError(f"position {graph.labels[p]!r} listed in two classes")
                class_of[p] = k
            k += 1
        for p in range(graph.n):
            if class_of[p] == -1:
                class_of[p] = k
                k += 1
        return cls(graph, class_of)

    @classmethod
    def from_labels(cls, graph: Optiongraph, classes: Iterable[Iterable[str]]):
        return cls.from_classes(graph, [graph.ids(c) for c in classes])

    @classmethod
    def parse(cls, graph: Optiongraph, text: str):
        return cls.from_classes(graph, parse_classes(graph, text))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(max(self.class_of) + 1)]
        for p, c in enumerate(self.class_of):
            out[c].append(p)
        return tuple(tuple(c) for c in out)

    def __len__(self) -> int:
        return len(self.classes)

    def class_members(self, p: int) -> tuple[int, ...]:
        return self.classes[self.class_of[p]]

    def related(self, p: int, q: int) -> bool:
        return self.class_of[p] == self.class_of[q]

    @property
    def is_discrete(self) -> bool:
        return len(self.classes) == self.graph.n

    def nontrivial_classes(self) -> list[tuple[int, ...]]:
        return [c for c in self.classes if len(c) > 1]

    def pairs(self) -> set[tuple[int, int]]:
        return {(p, q) for c in self.classes for p in c for q in c}

    def _require_same(self, other: "Partition"):
        if not _same_graph(self.graph, other.graph):
            raise GraphMismatchError("partitions live on different optiongraphs")

    def __le__(self, other: "Partition") -> bool:
        self._require_same(other)
        image: dict[int, int] = {}
        for p, c in enumerate(self.class_of):
            d = other.class_of[p]
            if image.setdefault(c, d) != d:
                return False
        return True

    def __ge__(self, other: "Partition") -> bool:
        return other <= self

    def __lt__(self, other: "Partition") -> bool:
        return self <= other and self.class_of != other.class_of

    def __gt__(self, other: "Partition") -> bool:
        return other < self

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.class_of == other.class_of and _same_graph(self.graph, other.graph)

    def __hash__(self):
        return hash(self.class_of)

    def __str__(self) -> str:
        return format_classes(self.graph, self.nontrivial_classes())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self) or DISCRETE_TEXT})"

    def label_classes(self) -> list[list[str]]:
        return [[self.graph.labels[p] for p in c] for c in self.classes]


def _single_char_labels(graph: Optiongraph) -> bool:
    return all(len(lab) == 1 for lab in graph.labels)


def format_classes(graph: Optiongraph, classes: Iterable[Iterable[int]]) -> str:
    """Bar-separated classes; members are concatenated when every label is one
    character (``ab|st|wz``) and space-separated otherwise (``a b|st o``).

    Members and classes are sorted by label so the text does not depend on
    declaration order.
    """
    joiner = "" if _single_char_labels(graph) else " "
    rendered = sorted(sorted(graph.labels[p] for p in c) for c in classes)
    return "|".join(joiner.join(members) for members in rendered)


def parse_classes(graph: Optiongraph, text: str) -> list[list[int]]:
    """Parse ``"a b | s t"`` or the compact ``"ab|st"``; unlisted positions are singletons."""
    text = text.strip()
    if not text or text == DISCRETE_TEXT:
        return []
    out = []
    for chunk in text.split("|"):
        tokens = chunk.split()
        if not tokens:
            raise ParseError(f"empty class in partition {text!r}")
        if len(tokens) == 1 and tokens[0] not in graph._index:
            tok = tokens[0]
            if all(ch in graph._index for ch in tok):
                tokens = list(tok)
            else:
                raise ParseError(f"unknown position {tok!r} in partition {text!r}")
        try:
            out.append(graph.ids(tokens))
        except OgError as exc:
            raise ParseError(f"{exc} in partition {text!r}") from None
    return out


class Congruence(Partition):
    """A partition that has passed :func:`is_congruence`.

    Build one with :func:`as_congruence` (checks and raises) or take one
    from the operations in this module.
    """


def is_congruence(graph: Optiongraph, partition: Partition) -> Verdict:
    """Check that related positions reach the same set of classes.

    On failure the witness is ``(p, q, classes_p, classes_q)`` with the class
    sets given as sorted lists of class member tuples.
    """
    if not _same_graph(graph, partition.graph):
        raise GraphMismatchError("partition belongs to a different optiongraph")
    class_of = partition.class_of
    for members in partition.classes:
        first = members[0]
        ref = frozenset(class_of[q] for q in graph.options[first])
        for q in members[1:]:
            got = frozenset(class_of[r] for r in graph.options[q])
            if got != ref:
                cls = partition.classes
                return Verdict(
                    False,
                    (first, q, sorted(cls[c] for c in ref), sorted(cls[c] for c in got)),
                    f"{graph.labels[first]} and {graph.labels[q]} reach different classes",
                )
    return TRUE


def as_congruence(partition: Partition) -> Congruence:
    if isinstance(partition, Congruence):
        return partition
    verdict = is_congruence(partition.graph, partition)
    if not verdict:
        raise NotCongruenceError(f"not a congruence: {verdict.reason}")
    return Congruence(partition.graph, partition.class_of)


def parse_congruence(graph: Optiongraph, text: str) -> Congruence:
    return as_congruence(Partition.parse(graph, text))


def discrete(graph: Optiongraph) -> Congruence:
    return Congruence.discrete(graph)


def max_congruence(graph: Optiongraph) -> Congruence:
    """The maximum congruence by partition refinement from a single block."""
    return largest_congruence_below(Partition.total(graph))


def largest_congruence_below(partition: Partition) -> Congruence:
    """The coarsest congruence refining ``partition``.

    Splits positions by their current block and the set of blocks their
    options meet until the block count stops growing.
    """
    graph = partition.graph
    block = list(partition.class_of)
    count = len(partition.classes)
    options = graph.options
    while True:
        signatures: dict = {}
        new = [
            signatures.setdefault((block[p], frozenset(block[q] for q in options[p])), len(signatures))
            for p in range(graph.n)
        ]
        if len(signatures) == count:
            return Congruence(graph, block)
        block, count = new, len(signatures)


def is_simple(graph: Optiongraph) -> bool:
    return max_congruence(graph).is_discrete


def _set_partitions(items: Sequence[int]):
    """All set partitions of ``items`` as restricted growth strings."""
    if not items:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == len(items):
            yield tuple(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from grow(prefix, max(top, c))
            prefix.pop()

    yield from grow([0], 0)


def _check_bound(graph: Optiongraph, bound: int | None):
    limit = enumeration_bound(bound)
    if graph.n > limit:
        raise BoundExceededError(
            f"{graph.n} positions exceeds the congruence-enumeration bound {limit}"
            " (raise it with OGKIT_MAX_POSITIONS)"
        )


def all_congruences(graph: Optiongraph, bound: int | None = None) -> list[Congruence]:
    """Every congruence on ``graph``, finest first and the maximum last.

    Only partitions refining the maximum congruence are tried, since every
    congruence refines it.
    """
    _check_bound(graph, bound)
    top = max_congruence(graph)
    blocks = top.classes
    found = []
    for choice in itertools.product(*(list(_set_partitions(b)) for b in blocks)):
        class_of = [0] * graph.n
        offset = 0
        for members, rgs in zip(blocks, choice):
            for p, c in zip(members, rgs):
                class_of[p] = offset + c
            offset += max(rgs) + 1
        candidate = Partition(graph, class_of)
        if is_congruence(graph, candidate):
            found.append(Congruence(graph, candidate.class_of))
    found.sort(key=lambda c: (-len(c.classes), c.class_of))
    return found


def intersection(a: Partition, b: Partition) -> Partition:
    a._require_same(b)
    keys: dict = {}
    class_of = [keys.setdefault((x, y), len(keys)) for x, y in zip(a.class_of, b.class_of)]
    return Partition(a.graph, class_of)


def meet(a: Partition, b: Partition) -> Congruence:
    """Greatest congruence below both ``a`` and ``b``.

    On rulegraphs this is the plain intersection.  With cycles the
    intersection of two congruences can fail to be one (``abc|de`` and
    ``ab|cde`` on ``a: a d / b: b e / c: b c d e / d: b c d / e: a d e``),
    so the intersection is refined down to the largest congruence inside it.
    """
    return _assert_congruence(largest_congruence_below(intersection(a, b)), "meet")


def join(a: Partition, b: Partition) -> Congruence:
    """Transitive closure of the union of two congruences."""
    a._require_same(b)
    parent = list(range(a.graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (a, b):
        for members in part.classes:
            root = find(members[0])
            for q in members[1:]:
                r = find(q)
                if r != root:
                    parent[r] = root
    out = Partition(a.graph, [find(p) for p in range(a.graph.n)])
    return _assert_congruence(out, "join")


def _assert_congruence(partition: Partition, what: str) -> Congruence:
    verdict = is_congruence(partition.graph, partition)
    if not verdict:
        raise NotCongruenceError(f"{what} is not a congruence ({verdict.reason}); inputs were not congruences")
    return Congruence(partition.graph, partition.class_of)


def join_all(parts: Iterable[Partition], graph: Optiongraph) -> Congruence:
    out: Congruence = discrete(graph)
    for p in parts:
        out = join(out, p)
    return out


def meet_all(parts: Iterable[Partition], graph: Optiongraph) -> Congruence:
    out: Congruence = max_congruence(graph)
    for p in parts:
        out = meet(out, p)
    return out


def minimal_congruences(graph: Optiongraph, p: int, q: int, bound: int | None = None) -> list[Congruence]:
    """The minimal congruences relating ``p`` and ``q`` (empty when none does)."""
    candidates = [c for c in all_congruences(graph, bound) if c.related(p, q)]
    return [c for c in candidates if not any(d < c for d in candidates)]


def principal_congruence(graph: Optiongraph, p: int, q: int, bound: int | None = None) -> Congruence | None:
    """Least congruence relating ``p`` and ``q``; ``None`` when no congruence does.

    On a cyclic optiongraph there may be several minimal ones and no least
    one; that raises :class:`OgError` listing them.
    """
    minimal = minimal_congruences(graph, p, q, bound)
    if not minimal:
        return None
    if len(minimal) > 1:
        raise OgError(
            f"no least congruence relates {graph.labels[p]} and {graph.labels[q]}; minimal ones are "
            + ", ".join(str(c) for c in minimal)
        )
    return minimal[0]


@dataclass(frozen=True)
class Lattice:
    """Con(D) ordered by refinement.

    ``leq`` holds index pairs ``(i, j)`` with ``elements[i] <= elements[j]``;
    ``covers`` is its transitive reduction as ``(lower, upper)`` pairs.
    """

    elements: tuple[Congruence, ...]
    leq: frozenset[tuple[int, int]]
    covers: tuple[tuple[int, int], ...]
    top: int
    bottom: int

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, congruence: Partition) -> int:
        for i, c in enumerate(self.elements):
            if c == congruence:
                return i
        raise KeyError(str(congruence))

    def interval(self, lower: int, upper: int | None = None) -> list[int]:
        upper = self.top if upper is None else upper
        return [
            i for i in range(len(self.elements))
            if (lower, i) in self.leq and (i, upper) in self.leq
        ]

    def labels(self) -> list[str]:
        return [str(c) for c in self.elements]


def lattice_of(elements: Sequence[Congruence]) -> Lattice:
    elements = tuple(elements)
    n = len(elements)
    leq = frozenset((i, j) for i in range(n) for j in range(n) if elements[i] <= elements[j])
    covers = tuple(
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j
        and (i, j) in leq
        and not any(k not in (i, j) and (i, k) in leq and (k, j) in leq for k in range(n))
    )
    tops = [j for j in range(n) if all((i, j) in leq for i in range(n))]
    bottoms = [i for i in range(n) if all((i, j) in leq for j in range(n))]
    return Lattice(elements, leq, covers, tops[0], bottoms[0])


def congruence_lattice(graph: Optiongraph, bound: int | None = None) -> Lattice:
    return lattice_of(all_congruences(graph, bound))
