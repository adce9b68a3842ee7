"""Option-preserving maps between optiongraphs.

A map is stored as a plain assignment and starts out unverified;
:func:`is_option_preserving` sets the ``verified`` flag, and the operations
that rely on the defining equation (kernel, image) insist on it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .congruence import Congruence
from .errors import BoundExceededError, GraphMismatchError, OgError, ParseError, UnverifiedMapError
from .graph import Optiongraph, Suboptiongraph
from .verdict import TRUE, Verdict

DEFAULT_CANONICAL_BOUND = 8


class OptionMap:
    """A total function from ``source`` positions to ``target`` positions."""

    def __init__(self, source: Optiongraph, target: Optiongraph, assignment: Sequence[int]):
        assignment = tuple(int(x) for x in assignment)
        if len(assignment) != source.n:
            raise OgError(
                f"map assigns {len(assignment)} images but the source has {source.n} positions"
            )
        for p, x in enumerate(assignment):
            if not 0 <= x < target.n:
                raise OgError(f"image id {x} of {source.labels[p]!r} is out of range")
        self.source = source
        self.target = target
        self.assignment = assignment
        self.verified = False

    @classmethod
    def from_labels(cls, source: Optiongraph, target: Optiongraph, mapping: Mapping[str, str]):
        missing = [lab for lab in source.labels if lab not in mapping]
        if missing:
            raise OgError(f"map is not total: no image for {', '.join(missing)}")
        extra = [lab for lab in mapping if lab not in source._index]
        if extra:
            raise OgError(f"map mentions unknown source positions {', '.join(extra)}")
        return cls(source, target, [target.index(mapping[lab]) for lab in source.labels])

    @classmethod
    def identity(cls, graph: Optiongraph) -> "OptionMap":
        return checked(cls(graph, graph, range(graph.n)))

    @classmethod
    def inclusion(cls, sub: Suboptiongraph) -> "OptionMap":
        return checked(cls(sub.graph, sub.parent, sub.embedding))

    def __call__(self, p: int) -> int:
        return self.assignment[p]

    def image_of(self, ps) -> frozenset[int]:
        return frozenset(self.assignment[p] for p in ps)

    @property
    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.assignment)) == self.target.n

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def label_pairs(self) -> list[tuple[str, str]]:
        return [
            (self.source.labels[p], self.target.labels[x]) for p, x in enumerate(self.assignment)
        ]

    def inverse(self) -> "OptionMap":
        if not self.is_bijective:
            raise OgError("only a bijection has an inverse")
        inv = [0] * self.target.n
        for p, x in enumerate(self.assignment):
            inv[x] = p
        return OptionMap(self.target, self.source, inv)

    def __eq__(self, other):
        if not isinstance(other, OptionMap):
            return NotImplemented
        return (
            self.assignment == other.assignment
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.assignment)

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.label_pairs())
        return f"OptionMap({body})"


def is_option_preserving(f: OptionMap) -> Verdict:
    """Check ``Opt(f(p)) == f(Opt(p))`` at every source position.

    The witness of a failure is ``(p, Opt(f(p)), f(Opt(p)))`` with target ids.
    """
    src, tgt = f.source, f.target
    for p in range(src.n):
        want = tgt.optsets[f.assignment[p]]
        got = f.image_of(src.options[p])
        if want != got:
            return Verdict(
                False,
                (p, want, got),
                f"at {src.labels[p]}: Opt({tgt.labels[f.assignment[p]]}) = "
                f"{{{','.join(tgt.names(want))}}} but f(Opt({src.labels[p]})) = "
                f"{{{','.join(tgt.names(got))}}}",
            )
    f.verified = True
    return TRUE


def checked(f: OptionMap) -> OptionMap:
    """Verify ``f`` in place and return it; raises when it is not option preserving."""
    verdict = is_option_preserving(f)
    if not verdict:
        raise OgError(f"map is not option preserving: {verdict.reason}")
    return f


def _require_verified(f: OptionMap):
    if not f.verified:
        raise UnverifiedMapError("map must be verified option preserving first")


def compose(g: OptionMap, f: OptionMap) -> OptionMap:
    """``g`` after ``f``."""
    if not (f.target is g.source or f.target == g.source):
        raise GraphMismatchError("target of f is not the source of g")
    out = OptionMap(f.source, g.target, [g.assignment[x] for x in f.assignment])
    if f.verified and g.verified:
        out.verified = True
    return out


def kernel(f: OptionMap) -> Congruence:
    """The partition of the source into fibers of ``f``."""
    _require_verified(f)
    return Congruence(f.source, f.assignment)


def image(f: OptionMap) -> Suboptiongraph:
    _require_verified(f)
    return Suboptiongraph(f.target, frozenset(f.assignment))


def is_isomorphism(f: OptionMap) -> Verdict:
    if not f.is_bijective:
        return Verdict(False, None, "map is not bijective")
    forward = is_option_preserving(f)
    if not forward:
        return forward
    backward = is_option_preserving(f.inverse())
    if not backward:
        return Verdict(False, backward.witness, "inverse: " + backward.reason)
    return TRUE


def _profile(graph: Optiongraph, p: int) -> tuple[int, int, bool]:
    return (len(graph.options[p]), len(graph.predecessors[p]), p in graph.optsets[p])


def find_isomorphism(c: Optiongraph, d: Optiongraph) -> OptionMap | None:
    """A bijective option-preserving map ``c -> d`` with option-preserving inverse.

    Digraph isomorphism by backtracking over degree-compatible assignments,
    trying candidates in declaration order so the answer is deterministic.
    """
    n = c.n
    if n != d.n or c.arrow_count != d.arrow_count:
        return None
    prof_c = [_profile(c, p) for p in range(n)]
    prof_d = [_profile(d, p) for p in range(n)]
    if Counter(prof_c) != Counter(prof_d):
        return None
    adj_c = c.optsets
    adj_d = d.optsets
    # most constrained (rarest profile) first
    rarity = Counter(prof_c)
    order = sorted(range(n), key=lambda p: (rarity[prof_c[p]], p))
    assign = [-1] * n
    used = [False] * n

    def consistent(p, x):
        for q in range(n):
            y = assign[q]
            if y < 0:
                continue
            if (q in adj_c[p]) != (y in adj_d[x]) or (p in adj_c[q]) != (x in adj_d[y]):
                return False
        return True

    def search(k):
        if k == n:
            return True
        p = order[k]
        for x in range(n):
            if used[x] or prof_d[x] != prof_c[p]:
                continue
            assign[p] = x
            if consistent(p, x):
                used[x] = True
                if search(k + 1):
                    return True
                used[x] = False
            assign[p] = -1
        return False

    if not search(0):
        return None
    f = OptionMap(c, d, assign)
    if not is_isomorphism(f):
        raise AssertionError("digraph isomorphism failed option-preservation re-check")
    return f


def are_isomorphic(c: Optiongraph, d: Optiongraph) -> bool:
    return find_isomorphism(c, d) is not None


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Row-major adjacency bits under the lexicographically least relabelling."""

    n: int
    bits: str

    def __str__(self) -> str:
        return self.bits

    def as_int(self) -> int:
        return int(self.bits, 2) if self.bits else 0


def canonical_form(graph: Optiongraph, bound: int = DEFAULT_CANONICAL_BOUND) -> CanonicalCode:
    """Minimum flattened adjacency string over all vertex orders (brute force)."""
    n = graph.n
    if n > bound:
        raise BoundExceededError(f"canonical_form is limited to {bound} positions, got {n}")
    adj = graph.optsets
    best = None
    for order in itertools.permutations(range(n)):
        # order[i] is the old position placed at new index i
        rows = "".join(
            "1" if order[j] in adj[order[i]] else "0" for i in range(n) for j in range(n)
        )
        if best is None or rows < best:
            best = rows
    return CanonicalCode(n, best)


def parse_map(text: str, source: Optiongraph, target: Optiongraph, path=None) -> OptionMap:
    """Parse ``src -> dst`` lines; every source position must appear exactly once."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        left, arrow, right = line.partition("->")
        left, right = left.strip(), right.strip()
        if not arrow or not left or not right or len(right.split()) != 1 or len(left.split()) != 1:
            raise ParseError(f"malformed map line {raw.strip()!r}", lineno, path)
        if left not in source._index:
            raise ParseError(f"unknown source position {left!r}", lineno, path)
        if right not in target._index:
            raise ParseError(f"unknown target position {right!r}", lineno, path)
        if left in mapping:
            raise ParseError(f"{left!r} is mapped twice", lineno, path)
        mapping[left] = right
    missing = [lab for lab in source.labels if lab not in mapping]
    if missing:
        raise ParseError(f"map is not total: no image for {', '.join(missing)}", None, path)
    return OptionMap.from_labels(source, target, mapping)


def format_map(f: OptionMap) -> str:
    return "".join(f"{a} -> {b}\n" for a, b in f.label_pairs())
