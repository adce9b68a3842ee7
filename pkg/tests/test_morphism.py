import itertools
import random

import pytest

from ogkit import fixtures
from ogkit.enumeration import enumerate_labeled, random_optiongraph
from ogkit.errors import BoundExceededError, OgError, ParseError, UnverifiedMapError
from ogkit.graph import Optiongraph, reachable_closure
from ogkit.morphism import (
    OptionMap,
    are_isomorphic,
    canonical_form,
    checked,
    compose,
    find_isomorphism,
    format_map,
    image,
    is_isomorphism,
    is_option_preserving,
    kernel,
    parse_map,
)
from ogkit.quotient import quotient
from ogkit.congruence import max_congruence

from .conftest import random_corpus
from .oracles import plays


def brute_isomorphic(c, d):
    if c.n != d.n:
        return False
    target = set(d.edges())
    return any(
        {(perm[p], perm[q]) for p, q in c.edges()} == target
        for perm in itertools.permutations(range(c.n))
    )


def test_arrow_to_loop_is_not_option_preserving(figs):
    f = OptionMap(figs["ARROW"], figs["L1"], [0, 0])
    verdict = is_option_preserving(f)
    assert not verdict
    p, want, got = verdict.witness
    assert figs["ARROW"].labels[p] == "b"
    assert want == {0} and got == set()
    assert not f.verified


def test_first_iso_example_map(figs):
    f = parse_map(fixtures.text("FIG_1ISO_MAP", ".map"), figs["FIG_1ISO_C"], figs["FIG_1ISO_D"])
    assert is_option_preserving(f) and f.verified
    assert kernel(f).label_classes() == [["a", "b", "c"], ["d"]]
    assert sorted(image(f).names()) == ["y", "z"]
    assert not f.is_injective and not f.is_surjective


def test_kernel_needs_verification(figs):
    f = OptionMap(figs["FIG_1ISO_C"], figs["FIG_1ISO_D"], [1, 1, 1, 2])
    with pytest.raises(UnverifiedMapError):
        kernel(f)
    with pytest.raises(UnverifiedMapError):
        image(f)


def test_identity_and_compose(figs):
    c = figs["FIG_1ISO_C"]
    f = parse_map(fixtures.text("FIG_1ISO_MAP", ".map"), c, figs["FIG_1ISO_D"])
    checked(f)
    ident = OptionMap.identity(c)
    assert compose(f, ident) == f
    q = quotient(c, max_congruence(c)).canonical_map
    h = compose(q, ident)
    assert h.verified and h.assignment == q.assignment


def test_check_rejects_bad_map(figs):
    with pytest.raises(OgError):
        checked(OptionMap(figs["ARROW"], figs["ARROW"], [1, 0]))


def test_parse_map_errors(figs):
    c, d = figs["FIG_1ISO_C"], figs["FIG_1ISO_D"]
    with pytest.raises(ParseError, match="line 2|:2:"):
        parse_map("a -> y\nb => y\n", c, d, path="m.map")
    with pytest.raises(ParseError, match="not total"):
        parse_map("a -> y\n", c, d)
    with pytest.raises(ParseError, match="twice"):
        parse_map("a -> y\na -> z\n", c, d)
    f = parse_map(fixtures.text("FIG_1ISO_MAP", ".map"), c, d)
    assert parse_map(format_map(f), c, d) == f


def test_canonical_form_of_loop(figs):
    assert str(canonical_form(figs["L1"])) == "1"
    assert str(canonical_form(figs["T1"])) == "0"
    assert str(canonical_form(figs["ARROW"])) == "0010"
    with pytest.raises(BoundExceededError):
        canonical_form(random_optiongraph(9, seed=1))


def test_iso_examples(figs):
    arrow = figs["ARROW"]
    relabelled = Optiongraph.from_mapping({"v": [], "u": ["v"]})
    f = find_isomorphism(arrow, relabelled)
    assert f is not None and is_isomorphism(f)
    assert f.label_pairs() == [("a", "u"), ("b", "v")]
    assert find_isomorphism(arrow, figs["L1"]) is None


def test_canonical_form_agrees_with_brute_iso_small():
    graphs = [g for n in (1, 2, 3) for g in enumerate_labeled(n)]
    rng = random.Random(7)
    for _ in range(1500):
        a, b = rng.choice(graphs), rng.choice(graphs)
        brute = brute_isomorphic(a, b)
        assert (canonical_form(a) == canonical_form(b)) == brute
        assert are_isomorphic(a, b) == brute


def test_canonical_form_agrees_on_random_pairs():
    rng = random.Random(11)
    for k in range(200):
        n = rng.randint(1, 6)
        a = random_optiongraph(n, seed=2 * k)
        # half the time compare against a shuffled copy
        if k % 2:
            perm = list(range(n))
            rng.shuffle(perm)
            b = a.permuted(perm)
        else:
            b = random_optiongraph(n, seed=2 * k + 1)
        brute = brute_isomorphic(a, b)
        assert (canonical_form(a) == canonical_form(b)) == brute
        f = find_isomorphism(a, b)
        assert (f is not None) == brute
        if f is not None:
            assert is_isomorphism(f)


def test_plays_lift_along_option_preserving_maps():
    # plays from f(p) are exactly f-images of plays from p
    for g in random_corpus(120, max_n=5, seed=3):
        f = quotient(g, max_congruence(g)).canonical_map
        for p in g.positions():
            upstairs = {tuple(f(x) for x in play) for play in plays(g.options, p, 4)}
            downstairs = set(plays(f.target.options, f(p), 4))
            assert upstairs == downstairs


def test_inclusion_is_option_preserving(figs):
    d = figs["FIG_2ISO_D"]
    sub = reachable_closure(d, d.ids("de"))
    inc = OptionMap.inclusion(sub)
    assert inc.verified and inc.is_injective
    assert sorted(d.names(inc.assignment)) == sorted(sub.names())
