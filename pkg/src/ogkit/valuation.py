"""Position valuations: F/I/M classes, normal-play outcome, remoteness,
extended nim-values, and (rulegraphs only) misère outcome and formal birthday.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass

from .errors import NotRulegraphError
from .graph import Optiongraph, terminals

INF = math.inf


class Outcome(enum.Enum):
    NEXT = "N"  # the player to move wins
    PREVIOUS = "P"  # the player to move loses
    DRAW = "D"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class NimValue:
    """A finite nim-value, or infinity subscripted by a finite set of values."""

    value: int | None
    subscript: frozenset[int] = frozenset()

    @classmethod
    def finite(cls, v: int) -> "NimValue":
        return cls(v)

    @classmethod
    def infinite(cls, subscript=()) -> "NimValue":
        return cls(None, frozenset(subscript))

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        if not self.subscript:
            return "inf"
        return "inf{" + ",".join(str(v) for v in sorted(self.subscript)) + "}"


@dataclass(frozen=True)
class FimPartition:
    F: frozenset[int]  # no infinite play starts here
    I: frozenset[int]  # no terminal subposition  # noqa: E741
    M: frozenset[int]

    def class_of(self, p: int) -> str:
        if p in self.F:
            return "F"
        if p in self.I:
            return "I"
        return "M"


def _can_reach_terminal(graph: Optiongraph) -> set[int]:
    seen = set(terminals(graph))
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        for p in graph.predecessors[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _finite_part(graph: Optiongraph) -> set[int]:
    # least set containing p whenever all options of p are in it
    pending = [len(row) for row in graph.options]
    todo = deque(p for p in graph.positions() if pending[p] == 0)
    done = set(todo)
    while todo:
        q = todo.popleft()
        for p in graph.predecessors[q]:
            pending[p] -= 1
            if pending[p] == 0:
                done.add(p)
                todo.append(p)
    return done


def fim_partition(graph: Optiongraph) -> FimPartition:
    everything = set(graph.positions())
    f = _finite_part(graph)
    i = everything - _can_reach_terminal(graph)
    return FimPartition(frozenset(f), frozenset(i), frozenset(everything - f - i))


def is_rulegraph(graph: Optiongraph) -> bool:
    return len(_finite_part(graph)) == graph.n


def remoteness(graph: Optiongraph) -> list[float]:
    """Smith remoteness by retrograde analysis; ``math.inf`` marks draws.

    Values settle in nondecreasing order: a position becomes odd ``r + 1`` at
    the first even option ``r`` seen, and even ``r + 1`` once its last option
    settles odd at ``r``.
    """
    n = graph.n
    rem: list[float] = [INF] * n
    left = [len(row) for row in graph.options]
    todo = deque()
    for p in range(n):
        if left[p] == 0:
            rem[p] = 0
            todo.append(p)
    while todo:
        q = todo.popleft()
        r = rem[q]
        for p in graph.predecessors[q]:
            if rem[p] != INF:
                continue
            if r % 2 == 0:
                rem[p] = r + 1
                todo.append(p)
            else:
                left[p] -= 1
                if left[p] == 0:
                    rem[p] = r + 1
                    todo.append(p)
    return rem


def outcome_from_remoteness(r: float) -> Outcome:
    if r == INF:
        return Outcome.DRAW
    return Outcome.PREVIOUS if r % 2 == 0 else Outcome.NEXT


def outcomes_normal(graph: Optiongraph) -> list[Outcome]:
    """Least fixed point of the win/loss rules; whatever is left is a draw."""
    n = graph.n
    out = [Outcome.DRAW] * n
    left = [len(row) for row in graph.options]
    todo = deque(p for p in range(n) if left[p] == 0)
    for p in todo:
        out[p] = Outcome.PREVIOUS
    while todo:
        q = todo.popleft()
        for p in graph.predecessors[q]:
            if out[p] is not Outcome.DRAW:
                continue
            if out[q] is Outcome.PREVIOUS:
                out[p] = Outcome.NEXT
                todo.append(p)
            else:
                left[p] -= 1
                if left[p] == 0:
                    out[p] = Outcome.PREVIOUS
                    todo.append(p)
    return out


def _mex(values) -> int:
    v = 0
    while v in values:
        v += 1
    return v


def extended_nim(graph: Optiongraph) -> list[NimValue]:
    """Extended nim-values by round-based fixed-point iteration.

    An unsettled position takes the mex ``v`` of its settled options once
    every unsettled option has an option already settled at ``v``.  When a
    round settles nothing, the rest become infinite with subscript the set of
    finite values among their options.
    """
    n = graph.n
    val: list[int | None] = [None] * n
    changed = True
    while changed:
        changed = False
        for p in range(n):
            if val[p] is not None:
                continue
            opts = graph.options[p]
            settled = {val[q] for q in opts if val[q] is not None}
            v = _mex(settled)
            if all(
                any(val[r] == v for r in graph.options[q]) for q in opts if val[q] is None
            ):
                val[p] = v
                changed = True
    return [
        NimValue.finite(v)
        if v is not None
        else NimValue.infinite(val[q] for q in graph.options[p] if val[q] is not None)
        for p, v in enumerate(val)
    ]


def _require_rulegraph(graph: Optiongraph):
    if not is_rulegraph(graph):
        raise NotRulegraphError("defined only for rulegraphs (no infinite play)")


def _topological(graph: Optiongraph) -> list[int]:
    # options before the positions that move to them
    pending = [len(row) for row in graph.options]
    order = [p for p in graph.positions() if pending[p] == 0]
    k = 0
    while k < len(order):
        q = order[k]
        k += 1
        for p in graph.predecessors[q]:
            pending[p] -= 1
            if pending[p] == 0:
                order.append(p)
    return order


def misere_outcomes(graph: Optiongraph) -> list[Outcome]:
    _require_rulegraph(graph)
    out: list[Outcome] = [Outcome.DRAW] * graph.n
    for p in _topological(graph):
        opts = graph.options[p]
        if not opts or any(out[q] is Outcome.PREVIOUS for q in opts):
            out[p] = Outcome.NEXT
        else:
            out[p] = Outcome.PREVIOUS
    return out


def formal_birthday(graph: Optiongraph) -> list[int]:
    _require_rulegraph(graph)
    day = [0] * graph.n
    for p in _topological(graph):
        opts = graph.options[p]
        day[p] = 1 + max(day[q] for q in opts) if opts else 0
    return day


@dataclass(frozen=True)
class Valuation:
    outcome: tuple[Outcome, ...]
    remoteness: tuple[float, ...]
    nim: tuple[NimValue, ...]


def valuate(graph: Optiongraph) -> Valuation:
    return Valuation(
        tuple(outcomes_normal(graph)), tuple(remoteness(graph)), tuple(extended_nim(graph))
    )


def format_remoteness(r: float) -> str:
    return "inf" if r == INF else str(int(r))
