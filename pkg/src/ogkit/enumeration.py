"""Exhaustive labelled sweeps, simple-optiongraph counts, and seeded random
generators for the property suites.

The sweep walks adjacency bitmasks, keeps the simple ones (cheap partition
refinement) and counts those whose mask is least among all relabellings,
which is exactly one representative per isomorphism class.
"""

from __future__ import annotations

import json
import logging
import os
import random
import string
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .congruence import Congruence, all_congruences
from .errors import OgError
from .graph import Optiongraph

log = logging.getLogger(__name__)

SWEEP_LIMIT = 5
LONG_RUNNING_LIMIT = 6
KNOWN_COUNTS = {1: 2, 2: 3, 3: 15, 4: 289, 5: 19787, 6: 4537065}


def default_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"p{i}" for i in range(n)]


def from_bitmask(n: int, mask: int, labels=None) -> Optiongraph:
    """Arrow ``i -> j`` is bit ``n*n - 1 - (i*n + j)`` of ``mask``."""
    nn = n * n
    rows = [[j for j in range(n) if mask >> (nn - 1 - (i * n + j)) & 1] for i in range(n)]
    return Optiongraph(labels or default_labels(n), rows)


def to_bitmask(graph: Optiongraph) -> int:
    n = graph.n
    nn = n * n
    mask = 0
    for i, j in graph.edges():
        mask |= 1 << (nn - 1 - (i * n + j))
    return mask


def enumerate_labeled(n: int, limit: int = SWEEP_LIMIT) -> Iterator[Optiongraph]:
    """Every labelled optiongraph on ``n`` positions, by increasing bitmask."""
    if not 1 <= n <= limit:
        raise OgError(f"labelled sweep needs 1 <= n <= {limit}, got {n}")
    labels = default_labels(n)
    for mask in range(1 << (n * n)):
        yield from_bitmask(n, mask, labels)


@dataclass
class EnumerationReport:
    n: int
    labeled_total: int
    simple_labeled: int
    simple_up_to_iso: int
    elapsed: float
    codes: list[int] = field(default_factory=list, repr=False)

    def representatives(self) -> list[Optiongraph]:
        return [from_bitmask(self.n, m) for m in self.codes]


def _chunk_worker(args):
    from ._sweep import permutation_table, sweep_range

    n, lo, hi = args
    out = np.zeros(hi - lo, dtype=np.int64)
    simple, written = sweep_range(n, lo, hi, permutation_table(n), out)
    return int(simple), out[:written].tolist()


def _chunks(n: int, chunk_bits: int) -> list[tuple[int, int, int]]:
    total = 1 << (n * n)
    size = 1 << min(chunk_bits, n * n)
    return [(n, lo, min(lo + size, total)) for lo in range(0, total, size)]


def count_simple(
    n: int,
    jobs: int = 1,
    long_running: bool = False,
    checkpoint: str | os.PathLike | None = None,
    chunk_bits: int = 22,
    progress: Callable[[int, int], None] | None = None,
) -> EnumerationReport:
    """Count simple optiongraphs on ``n`` positions up to isomorphism.

    ``n <= 5`` runs directly.  ``n = 6`` (2**36 masks) needs ``long_running``
    and may resume from ``checkpoint``; it keeps per-chunk counts only, so
    :attr:`EnumerationReport.codes` stays empty.
    """
    limit = LONG_RUNNING_LIMIT if long_running else SWEEP_LIMIT
    if not 1 <= n <= limit:
        hint = "" if long_running or n > LONG_RUNNING_LIMIT else " (n = 6 needs the long-running flag)"
        raise OgError(f"count_simple needs 1 <= n <= {limit}, got {n}{hint}")
    start = time.perf_counter()
    tasks = _chunks(n, chunk_bits)
    keep_codes = n <= SWEEP_LIMIT
    done: dict[int, tuple[int, int]] = {}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint, encoding="utf-8") as fh:
            state = json.load(fh)
        if state.get("n") == n and state.get("chunk_bits") == chunk_bits and not keep_codes:
            done = {int(k): tuple(v) for k, v in state["done"].items()}
            log.info("resuming from %s with %d/%d chunks done", checkpoint, len(done), len(tasks))
    codes: set[int] = set()

    pending = [(i, t) for i, t in enumerate(tasks) if i not in done]

    def record(i, result):
        s, chunk_codes = result
        done[i] = (s, len(chunk_codes))
        if keep_codes:
            codes.update(chunk_codes)
        if checkpoint and not keep_codes:
            tmp = f"{checkpoint}.tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump({"n": n, "chunk_bits": chunk_bits, "done": done}, fh)
            os.replace(tmp, checkpoint)
        if progress:
            progress(len(done), len(tasks))

    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for (i, _), result in zip(pending, pool.map(_chunk_worker, [t for _, t in pending])):
                record(i, result)
    else:
        for i, task in pending:
            record(i, _chunk_worker(task))
    simple = sum(s for s, _ in done.values())
    canonical = sum(c for _, c in done.values())
    if keep_codes and canonical != len(codes):
        raise AssertionError("a canonical mask was reported by two chunks")
    return EnumerationReport(
        n=n,
        labeled_total=1 << (n * n),
        simple_labeled=simple,
        simple_up_to_iso=canonical,
        elapsed=time.perf_counter() - start,
        codes=sorted(codes),
    )


def random_optiongraph(n: int, arrow_probability=Fraction(1, 2), seed: int = 0) -> Optiongraph:
    """Each of the ``n*n`` possible arrows independently with the given probability."""
    if n < 1:
        raise OgError("random_optiongraph needs n >= 1")
    prob = Fraction(arrow_probability)
    if not 0 <= prob <= 1:
        raise OgError("arrow probability must lie in [0, 1]")
    rng = random.Random(seed)
    rows = [[j for j in range(n) if rng.random() < prob] for _ in range(n)]
    return Optiongraph(default_labels(n), rows)


def random_congruence(graph: Optiongraph, seed: int = 0, bound: int | None = None) -> Congruence:
    """Uniform choice among all congruences of ``graph``."""
    return random.Random(seed).choice(all_congruences(graph, bound))
