import random

import pytest

from ogkit.congruence import Congruence, all_congruences, is_simple, max_congruence, parse_congruence
from ogkit.enumeration import random_optiongraph
from ogkit.errors import OgError, UnverifiedMapError
from ogkit.graph import Optiongraph
from ogkit.morphism import OptionMap, are_isomorphic, checked, kernel, parse_map
from ogkit.quotient import minimize, quotient
from ogkit.sums import game_sum, product_map, sum_congruence
from ogkit import fixtures

DIAMOND = Optiongraph.from_mapping({"s": ["l", "r"], "l": ["t"], "r": ["t"], "t": []})
CHAIN = Optiongraph.from_mapping({"x": ["y"], "y": ["z"], "z": []})


def random_pairs(count, max_n=4, seed=0):
    rng = random.Random(seed)
    for k in range(count):
        yield (
            random_optiongraph(rng.randint(1, max_n), rng.choice(["1/4", "1/3", "1/2"]), seed=3 * k),
            random_optiongraph(rng.randint(1, max_n), rng.choice(["1/4", "1/3", "1/2"]), seed=3 * k + 1),
        )


def brute_sum_edges(c, d):
    """Options of (p, q): move in exactly one component."""
    return {
        ((p, q), (p2, q2))
        for p in c.positions() for q in d.positions()
        for p2 in c.positions() for q2 in d.positions()
        if (q2 == q and p2 in c.optsets[p]) or (p2 == p and q2 in d.optsets[q])
    }


def test_sum_definition():
    for c, d in random_pairs(100, seed=1):
        s = game_sum(c, d)
        pos = [(p, q) for p in c.positions() for q in d.positions()]
        assert s.labels == tuple(f"{c.labels[p]},{d.labels[q]}" for p, q in pos)
        assert {(pos[i], pos[j]) for i, j in s.edges()} == brute_sum_edges(c, d)


def test_arrow_sum_is_diamond(figs):
    arrow = figs["ARROW"]
    assert is_simple(arrow)
    s = game_sum(arrow, arrow)
    assert s.labels == ("a,a", "a,b", "b,a", "b,b")
    assert are_isomorphic(s, DIAMOND)
    m = minimize(s).quotient
    assert are_isomorphic(m, CHAIN)
    assert not are_isomorphic(CHAIN, DIAMOND)
    assert are_isomorphic(minimize(DIAMOND).quotient, minimize(CHAIN).quotient)


def test_identity_and_loops(figs):
    t1, l1 = figs["T1"], figs["L1"]
    for g in figs.values():
        assert are_isomorphic(game_sum(t1, g), g)
    s = game_sum(l1, t1)
    assert s.n == 1 and s.edges() == [(0, 0)]


def test_separator_collision():
    g = Optiongraph.from_mapping({"a,b": []})
    with pytest.raises(OgError):
        game_sum(g, g)
    assert game_sum(g, g, sep="+").labels == ("a,b+a,b",)


def test_commutative_and_associative():
    rng = random.Random(2)
    for k in range(60):
        a, b, c = (random_optiongraph(rng.randint(1, 3), "1/3", seed=10 * k + i) for i in range(3))
        assert are_isomorphic(game_sum(a, b), game_sum(b, a))
        assert are_isomorphic(game_sum(game_sum(a, b), c, sep=";"), game_sum(a, game_sum(b, c), sep=";"))


def test_product_maps(figs):
    c, d, t1 = figs["FIG_1ISO_C"], figs["FIG_1ISO_D"], figs["T1"]
    f = checked(parse_map(fixtures.text("FIG_1ISO_MAP", ".map"), c, d))
    h = product_map(f, OptionMap.identity(t1))
    assert h.verified
    assert [b.split(",")[0] for _, b in h.label_pairs()] == ["y", "y", "y", "z"]
    ident = product_map(OptionMap.identity(c), OptionMap.identity(d))
    assert ident.assignment == tuple(range(c.n * d.n))
    with pytest.raises(UnverifiedMapError):
        product_map(OptionMap(c, d, [1, 1, 1, 2]), OptionMap.identity(t1))


def test_sum_congruence_examples(figs):
    g, t1 = figs["FIG_CON"], figs["T1"]
    top = max_congruence(g)
    theta = sum_congruence(top, Congruence.discrete(t1))
    assert sorted(theta.label_classes()) == sorted(
        [[f"{x},t" for x in cls] for cls in top.label_classes()])
    arrow = figs["ARROW"]
    assert sum_congruence(Congruence.discrete(arrow), Congruence.discrete(arrow)).is_discrete


def test_sum_of_quotients():
    rng = random.Random(3)
    for c, d in random_pairs(200, seed=4):
        phi = rng.choice(all_congruences(c))
        psi = rng.choice(all_congruences(d))
        qc, qd = quotient(c, phi), quotient(d, psi)
        # quotient labels contain commas
        theta = sum_congruence(phi, psi, sep=";")
        assert are_isomorphic(quotient(game_sum(c, d, sep=";"), theta).quotient,
                              game_sum(qc.quotient, qd.quotient, sep=";"))
        assert kernel(product_map(qc.canonical_map, qd.canonical_map, sep=";")) == theta


def test_minimum_quotient_of_sum():
    for c, d in random_pairs(200, seed=5):
        lhs = minimize(game_sum(c, d)).quotient
        rhs = minimize(game_sum(minimize(c).quotient, minimize(d).quotient, sep=";")).quotient
        assert are_isomorphic(lhs, rhs)


def test_parse_congruence_on_sum(figs):
    s = game_sum(figs["ARROW"], figs["ARROW"])
    theta = parse_congruence(s, "a,b b,a")
    assert quotient(s, theta).quotient.n == 3
