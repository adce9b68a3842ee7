"""Randomised end-to-end checks of the isomorphism theorems and of the
invariance of valuations under option-preserving maps.

:func:`verify_theorems` samples congruences and suboptiongraphs of one
graph and runs every witness; it backs the ``verify-theorems`` subcommand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .congruence import all_congruences, meet
from .errors import TheoremViolation
from .graph import Optiongraph, reachable_closure
from .morphism import OptionMap, is_option_preserving
from .quotient import (
    first_iso_witness,
    fourth_iso_alpha,
    quotient,
    second_iso_witness,
    third_iso_witness,
)
from .valuation import (
    extended_nim,
    fim_partition,
    formal_birthday,
    is_rulegraph,
    misere_outcomes,
    outcomes_normal,
    remoteness,
)
from .verdict import TRUE, Verdict

THEOREMS = ("first-iso", "second-iso", "third-iso", "fourth-iso", "valuations", "fim")


def valuations_preserved(f: OptionMap) -> Verdict:
    """Outcome, remoteness and extended nim-value agree along ``f``; on rulegraph
    sources also misère outcome and formal birthday."""
    if not f.verified and not is_option_preserving(f):
        return Verdict(False, None, "map is not option preserving")
    src, tgt = f.source, f.target
    pairs = [
        ("outcome", outcomes_normal(src), outcomes_normal(tgt)),
        ("remoteness", remoteness(src), remoteness(tgt)),
        ("nim", extended_nim(src), extended_nim(tgt)),
    ]
    if is_rulegraph(src):
        pairs.append(("misere", misere_outcomes(src), misere_outcomes(tgt)))
        pairs.append(("birthday", formal_birthday(src), formal_birthday(tgt)))
    for name, a, b in pairs:
        for p in range(src.n):
            if a[p] != b[f.assignment[p]]:
                return Verdict(
                    False, (name, p), f"{name} of {src.labels[p]} is {a[p]} but its image has "
                    f"{b[f.assignment[p]]}"
                )
    return TRUE


def fim_preserved(f: OptionMap) -> Verdict:
    """For a surjective option-preserving ``f``: F, I and M map onto F, I and M."""
    src = fim_partition(f.source)
    tgt = fim_partition(f.target)
    for name in ("F", "I", "M"):
        got = f.image_of(getattr(src, name))
        want = getattr(tgt, name)
        if got != want:
            return Verdict(False, name, f"image of {name} is {sorted(got)}, expected {sorted(want)}")
    return TRUE


@dataclass
class TheoremReport:
    graph: Optiongraph
    trials: int
    seed: int
    passed: dict[str, int] = field(default_factory=lambda: dict.fromkeys(THEOREMS, 0))
    failures: list[tuple[str, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed(self, name: str) -> int:
        return sum(1 for f in self.failures if f[0] == name)


def verify_theorems(graph: Optiongraph, trials: int = 50, seed: int = 0,
                    bound: int | None = None) -> TheoremReport:
    cons = all_congruences(graph, bound)
    report = TheoremReport(graph, trials, seed)
    rng = random.Random(seed)

    def run(name, trial, check):
        # witnesses raise on failure; checks return a Verdict
        try:
            result = check()
            verdict = result if isinstance(result, Verdict) else TRUE
        except TheoremViolation as exc:
            verdict = Verdict(False, None, str(exc))
        if verdict:
            report.passed[name] += 1
        else:
            report.failures.append((name, trial, verdict.reason))

    for trial in range(trials):
        theta = rng.choice(cons)
        eta = meet(rng.choice(cons), theta)
        seeds = rng.sample(range(graph.n), rng.randint(1, graph.n))
        sub = reachable_closure(graph, seeds)
        q = quotient(graph, theta)
        f = q.canonical_map
        run("first-iso", trial, lambda: first_iso_witness(f))
        run("second-iso", trial, lambda: second_iso_witness(sub, theta))
        run("third-iso", trial, lambda: third_iso_witness(eta, theta))
        run("fourth-iso", trial, lambda: fourth_iso_alpha(graph, theta, bound))
        run("valuations", trial, lambda: valuations_preserved(f))
        run("fim", trial, lambda: fim_preserved(f))
    return report

