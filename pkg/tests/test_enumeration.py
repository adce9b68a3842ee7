import json
import random
from fractions import Fraction

import pytest

from ogkit.congruence import all_congruences, is_simple, max_congruence
from ogkit.enumeration import (
    KNOWN_COUNTS,
    count_simple,
    enumerate_labeled,
    from_bitmask,
    random_congruence,
    random_optiongraph,
    to_bitmask,
)
from ogkit.errors import OgError
from ogkit.graph import Optiongraph
from ogkit.morphism import are_isomorphic, canonical_form

from .oracles import brute_congruences

# the size-3 figure, transcribed arrow by arrow (a, b, c)
FIGURE_SIZE_3 = [
    "ab bc", "ab bc ac", "ab ba bc", "ab ba bc aa", "ab ba bc bb", "ab ba bc aa bb",
    "ab bc aa", "ab bc bb", "ab bc aa bb", "ba bc aa", "ba bc aa bb", "ab cb aa",
    "ab bc ac aa", "bc aa", "bc aa bb",
]


def figure_graph(arrows: str) -> Optiongraph:
    idx = {"a": 0, "b": 1, "c": 2}
    return Optiongraph.from_edges("abc", [(idx[x], idx[y]) for x, y in arrows.split()])


def test_labelled_sweep_sizes():
    assert [sum(1 for _ in enumerate_labeled(n)) for n in (1, 2, 3)] == [2, 16, 512]
    first = list(enumerate_labeled(1))
    assert first[0].edges() == [] and first[1].edges() == [(0, 0)]
    with pytest.raises(OgError):
        next(enumerate_labeled(6))


def test_bitmask_round_trip():
    for n in (1, 2, 3):
        for mask, g in enumerate(enumerate_labeled(n)):
            assert to_bitmask(g) == mask
            assert from_bitmask(n, mask) == g


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_small_counts(n):
    report = count_simple(n)
    assert report.simple_up_to_iso == KNOWN_COUNTS[n]
    assert report.labeled_total == 2 ** (n * n)
    assert report.simple_up_to_iso <= report.simple_labeled <= report.labeled_total
    assert len(report.codes) == report.simple_up_to_iso


def test_kernel_matches_pure_python_brute_force():
    for n in (1, 2, 3):
        simple = [g for g in enumerate_labeled(n) if len(brute_congruences(g.options)) == 1]
        report = count_simple(n)
        assert report.simple_labeled == len(simple)
        assert set(report.codes) == {canonical_form(g).as_int() for g in simple}


def test_kernel_matches_pure_python_n4():
    simple = [g for g in enumerate_labeled(4) if is_simple(g)]
    report = count_simple(4)
    assert report.simple_labeled == len(simple)
    assert set(report.codes) == {canonical_form(g).as_int() for g in simple}


def test_size_3_figure():
    drawn = [figure_graph(a) for a in FIGURE_SIZE_3]
    assert all(is_simple(g) for g in drawn)
    reps = count_simple(3).representatives()
    assert len(reps) == 15
    matched = [sum(are_isomorphic(d, r) for r in reps) for d in drawn]
    assert matched == [1] * 15
    # drawn graphs are pairwise non-isomorphic
    assert len({canonical_form(g) for g in drawn}) == 15


def test_relabelling_does_not_change_counts():
    rng = random.Random(8)
    for n in (3, 4):
        reps = count_simple(n).representatives()
        shuffled = []
        for g in reps:
            perm = list(range(n))
            rng.shuffle(perm)
            shuffled.append(g.permuted(perm))
        assert len({canonical_form(g) for g in shuffled}) == KNOWN_COUNTS[n]


def test_simplicity_is_iso_invariant():
    rng = random.Random(9)
    for k in range(200):
        n = rng.randint(1, 7)
        g = random_optiongraph(n, rng.choice(["1/4", "1/2"]), seed=k)
        perm = list(range(n))
        rng.shuffle(perm)
        assert is_simple(g) == is_simple(g.permuted(perm))


def test_parallel_chunks_agree():
    serial = count_simple(4, chunk_bits=10)
    parallel = count_simple(4, jobs=2, chunk_bits=12)
    assert serial.codes == parallel.codes == count_simple(4).codes


def test_long_running_gate(tmp_path):
    with pytest.raises(OgError, match="long-running"):
        count_simple(6)
    with pytest.raises(OgError):
        count_simple(7, long_running=True)


def test_checkpoint_format(tmp_path, monkeypatch):
    # exercise the resume path on a tiny n by pretending it is past the sweep limit
    import ogkit.enumeration as en

    monkeypatch.setattr(en, "SWEEP_LIMIT", 2)
    ck = tmp_path / "ck.json"
    first = en.count_simple(3, long_running=True, checkpoint=ck, chunk_bits=6)
    state = json.loads(ck.read_text())
    assert state["n"] == 3 and len(state["done"]) == 8
    again = en.count_simple(3, long_running=True, checkpoint=ck, chunk_bits=6)
    assert first.simple_up_to_iso == again.simple_up_to_iso == 15
    assert again.codes == []


def test_random_optiongraph():
    assert random_optiongraph(4, 0, seed=1).arrow_count == 0
    assert random_optiongraph(4, 1, seed=1).arrow_count == 16
    assert random_optiongraph(5, Fraction(1, 3), seed=99) == random_optiongraph(5, "1/3", seed=99)
    assert random_optiongraph(5, "1/2", seed=1) != random_optiongraph(5, "1/2", seed=2)
    with pytest.raises(OgError):
        random_optiongraph(0)
    with pytest.raises(OgError):
        random_optiongraph(2, 2)


def test_random_congruence(figs):
    g = figs["FIG_CON"]
    seen = {str(random_congruence(g, seed=s)) for s in range(200)}
    assert seen == {str(c) for c in all_congruences(g)}
    assert random_congruence(g, seed=5) == random_congruence(g, seed=5)
    arrow = figs["ARROW"]
    assert all(random_congruence(arrow, seed=s).is_discrete for s in range(10))
    assert max_congruence(arrow).is_discrete


@pytest.mark.slow
def test_count_five():
    assert count_simple(5, jobs=2).simple_up_to_iso == 19787
