"""Finite optiongraphs, the ``.og`` text format, suboptiongraphs and DOT export.

A position is a dense integer id ``0..n-1`` with a string label.  The
declaration order of positions is kept everywhere and fixes every
deterministic output ordering downstream.
"""

from __future__ import annotations

import re
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import GraphMismatchError, NotSuboptiongraphError, OgError, ParseError

_BAD_LABEL = re.compile(r"[\s:#]")


def check_label(label: str) -> str:
    if not isinstance(label, str) or not label or _BAD_LABEL.search(label):
        raise OgError(f"invalid position label {label!r}")
    return label


class Optiongraph:
    """An immutable finite optiongraph.

    ``options[p]`` is the tuple of option ids of position ``p`` in the order
    they were given; duplicates are rejected and self-loops are allowed.
    """

    def __init__(self, labels: Sequence[str], options: Sequence[Iterable[int]]):
        labels = tuple(check_label(lab) for lab in labels)
        if not labels:
            raise OgError("an optiongraph needs at least one position")
        if len(options) != len(labels):
            raise OgError("labels and option lists differ in length")
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise OgError(f"duplicate position label {lab!r}")
            index[lab] = i
        n = len(labels)
        opts = []
        for p, row in enumerate(options):
            row = tuple(int(q) for q in row)
            for q in row:
                if not 0 <= q < n:
                    raise OgError(f"option id {q} of {labels[p]!r} out of range")
            if len(set(row)) != len(row):
                raise OgError(f"duplicate option in the option list of {labels[p]!r}")
            opts.append(row)
        self.labels = labels
        self.options = tuple(opts)
        self._index = index

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Iterable[str]]) -> "Optiongraph":
        """Build from ``{label: [option labels]}``; dict order is declaration order."""
        labels = list(mapping)
        index = {lab: i for i, lab in enumerate(labels)}
        try:
            options = [[index[q] for q in mapping[lab]] for lab in labels]
        except KeyError as exc:
            raise OgError(f"option {exc.args[0]!r} is not a declared position") from None
        return cls(labels, options)

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> "Optiongraph":
        rows: list[list[int]] = [[] for _ in labels]
        for p, q in edges:
            if q not in rows[p]:
                rows[p].append(q)
        return cls(labels, rows)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise OgError(f"unknown position {label!r}") from None

    def label(self, p: int) -> str:
        return self.labels[p]

    def opt(self, p: int) -> tuple[int, ...]:
        return self.options[p]

    @cached_property
    def optsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.options)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        pred: list[list[int]] = [[] for _ in self.labels]
        for p, row in enumerate(self.options):
            for q in row:
                pred[q].append(p)
        return tuple(tuple(row) for row in pred)

    def edges(self) -> list[tuple[int, int]]:
        return [(p, q) for p, row in enumerate(self.options) for q in row]

    @property
    def arrow_count(self) -> int:
        return sum(len(row) for row in self.options)

    def adjacency(self) -> list[list[int]]:
        n = self.n
        mat = [[0] * n for _ in range(n)]
        for p, q in self.edges():
            mat[p][q] = 1
        return mat

    def positions(self) -> range:
        return range(self.n)

    def ids(self, labels: Iterable[str]) -> list[int]:
        return [self.index(lab) for lab in labels]

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self.labels[p] for p in sorted(ids)]

    def relabel(self, labels: Sequence[str]) -> "Optiongraph":
        return Optiongraph(labels, self.options)

    def permuted(self, perm: Sequence[int]) -> "Optiongraph":
        """Copy in which old position ``p`` becomes new position ``perm[p]``."""
        n = self.n
        labels = [""] * n
        rows: list[list[int]] = [[] for _ in range(n)]
        for p in range(n):
            labels[perm[p]] = self.labels[p]
            rows[perm[p]] = [perm[q] for q in self.options[p]]
        return Optiongraph(labels, rows)

    def __eq__(self, other):
        if not isinstance(other, Optiongraph):
            return NotImplemented
        return self.labels == other.labels and self.options == other.options

    def __hash__(self):
        return hash((self.labels, self.options))

    def __repr__(self):
        body = "; ".join(
            f"{lab}: {' '.join(self.labels[q] for q in row)}".rstrip()
            for lab, row in zip(self.labels, self.options)
        )
        return f"Optiongraph({body})"


def parse_optiongraph(text: str, path=None) -> Optiongraph:
    """Parse the ``.og`` format: ``label: opt1 opt2 ...`` one position per line."""
    labels: list[str] = []
    rows: list[list[str]] = []
    lines_of: dict[str, int] = {}
    uses: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError(f"malformed line {raw.strip()!r} (missing ':')", lineno, path)
        label = head.strip()
        if not label or _BAD_LABEL.search(label):
            raise ParseError(f"malformed position label {label!r}", lineno, path)
        if label in lines_of:
            raise ParseError(
                f"duplicate declaration of {label!r} (first on line {lines_of[label]})", lineno, path
            )
        opts = tail.split()
        for tok in opts:
            if ":" in tok:
                raise ParseError(f"malformed option token {tok!r}", lineno, path)
        if len(set(opts)) != len(opts):
            raise ParseError(f"repeated option in the declaration of {label!r}", lineno, path)
        lines_of[label] = lineno
        labels.append(label)
        rows.append(opts)
        uses.extend((tok, lineno) for tok in opts)
    if not labels:
        raise ParseError("empty document: no positions declared", None, path)
    for tok, lineno in uses:
        if tok not in lines_of:
            raise ParseError(f"option {tok!r} is never declared", lineno, path)
    index = {lab: i for i, lab in enumerate(labels)}
    return Optiongraph(labels, [[index[t] for t in row] for row in rows])


def read_optiongraph(path) -> Optiongraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_optiongraph(text, path=str(path))


def serialize(graph: Optiongraph) -> str:
    out = []
    for lab, row in zip(graph.labels, graph.options):
        if row:
            out.append(f"{lab}: {' '.join(graph.labels[q] for q in row)}\n")
        else:
            out.append(f"{lab}:\n")
    return "".join(out)


def terminals(graph: Optiongraph) -> list[int]:
    return [p for p in graph.positions() if not graph.options[p]]


@dataclass(frozen=True)
class Suboptiongraph:
    """A nonempty option-closed set of positions of ``parent``."""

    parent: Optiongraph
    members: frozenset[int]

    def __post_init__(self):
        verdict = _closure_violation(self.parent, self.members)
        if verdict is not None:
            raise NotSuboptiongraphError(verdict)

    @classmethod
    def from_labels(cls, parent: Optiongraph, labels: Iterable[str]) -> "Suboptiongraph":
        return cls(parent, frozenset(parent.ids(labels)))

    @property
    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def names(self) -> list[str]:
        return self.parent.names(self.members)

    def __contains__(self, p) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def graph(self) -> Optiongraph:
        """The induced optiongraph, members in parent declaration order."""
        order = self.sorted_members
        new = {p: i for i, p in enumerate(order)}
        return Optiongraph(
            [self.parent.labels[p] for p in order],
            [[new[q] for q in self.parent.options[p]] for p in order],
        )

    @property
    def embedding(self) -> list[int]:
        """Parent id of each position of :attr:`graph`."""
        return self.sorted_members


def _closure_violation(graph: Optiongraph, members) -> str | None:
    if not members:
        return "a suboptiongraph needs at least one position"
    for p in members:
        if not 0 <= p < graph.n:
            raise GraphMismatchError(f"position id {p} is not in the graph")
    for p in sorted(members):
        for q in graph.options[p]:
            if q not in members:
                return (
                    f"not option-closed: {graph.labels[p]} -> {graph.labels[q]} leaves the set"
                )
    return None


def is_suboptiongraph(members: Iterable[int], graph: Optiongraph) -> bool:
    return _closure_violation(graph, frozenset(members)) is None


def reachable_closure(graph: Optiongraph, seeds: Iterable[int]) -> Suboptiongraph:
    """The set of subpositions of ``seeds`` (seeds included)."""
    seen = set(seeds)
    if not seen:
        raise NotSuboptiongraphError("reachable_closure needs a nonempty seed set")
    for p in seen:
        if not 0 <= p < graph.n:
            raise GraphMismatchError(f"seed id {p} is not in the graph")
    todo = deque(sorted(seen))
    while todo:
        p = todo.popleft()
        for q in graph.options[p]:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return Suboptiongraph(graph, frozenset(seen))


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: Optiongraph, decorations: Mapping[int, str] | None = None, name: str = "D") -> str:
    """Render as a DOT digraph; ``decorations`` replaces node labels by position id."""
    decorations = decorations or {}
    lines = [f"digraph {_dot_quote(name)} {{"]
    for p, lab in enumerate(graph.labels):
        shown = decorations.get(p)
        if shown is None:
            lines.append(f"  n{p} [label={_dot_quote(lab)}];")
        else:
            lines.append(f"  n{p} [label={_dot_quote(str(shown))}, tooltip={_dot_quote(lab)}];")
    for p, q in graph.edges():
        lines.append(f"  n{p} -> n{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
