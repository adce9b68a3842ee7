import random

import pytest

from ogkit import fixtures
from ogkit.congruence import (
    Congruence,
    Partition,
    all_congruences,
    is_simple,
    max_congruence,
    meet,
    parse_congruence,
)
from ogkit.errors import NotCongruenceError, OgError
from ogkit.graph import Suboptiongraph, reachable_closure, serialize, terminals
from ogkit.morphism import OptionMap, are_isomorphic, checked, kernel, parse_map
from ogkit.quotient import (
    extend_congruence,
    first_iso_witness,
    fourth_iso_alpha,
    minimize,
    quotient,
    relation_quotient,
    restrict_congruence,
    second_iso_witness,
    third_iso_witness,
)

from .conftest import random_corpus


def test_fig_con_minimum_quotient(figs):
    q = minimize(figs["FIG_CON"]).quotient
    assert sorted(q.labels) == ["{a,b}", "{r}", "{s,t}", "{w,z}"]
    assert serialize(q) == "{w,z}: {w,z}\n{a,b}: {w,z} {a,b} {s,t}\n{s,t}:\n{r}: {s,t}\n"
    assert is_simple(q)


def test_non_congruence_rejected(figs):
    g = figs["FIG_CON"]
    with pytest.raises(NotCongruenceError):
        quotient(g, Partition.parse(g, "a b"))


def test_discrete_quotient_is_copy(figs):
    for g in figs.values():
        q = quotient(g, Congruence.discrete(g))
        assert are_isomorphic(q.quotient, g)


def test_fig_3iso_r_eta(figs):
    r = figs["FIG_3ISO_R"]
    q = quotient(r, parse_congruence(r, "ef")).quotient
    assert q.n == 6 and "{e,f}" in q.labels
    assert set(q.names(q.opt(q.index("{d}")))) == {"{e,f}", "{g}"}


def test_first_iso_example(figs):
    c, d = figs["FIG_1ISO_C"], figs["FIG_1ISO_D"]
    f = checked(parse_map(fixtures.text("FIG_1ISO_MAP", ".map"), c, d))
    iso = first_iso_witness(f)
    assert iso.label_pairs() == [("{a,b,c}", "y"), ("{d}", "z")]
    assert iso.source.opt(0) == (0, 1) and iso.target.opt(0) == (0, 1)
    assert kernel(f) == max_congruence(c)


def test_first_iso_identity_and_quotient_maps(figs):
    g = figs["FIG_CON"]
    ident = first_iso_witness(OptionMap.identity(g))
    assert ident.assignment == tuple(range(g.n))
    f = minimize(g).canonical_map
    assert first_iso_witness(f).assignment == tuple(range(f.target.n))


def test_second_iso_example(figs):
    d = figs["FIG_2ISO_D"]
    sub = Suboptiongraph.from_labels(d, "deghi")
    theta = parse_congruence(d, "eg|ihf")
    w = second_iso_witness(sub, theta)
    assert str(w.restricted) == "eg|hi"
    assert sorted(w.tilde.names()) == ["{d}", "{e,g}", "{f,h,i}"]
    assert w.iso.is_bijective


def test_restrict_and_extend(figs):
    d = figs["FIG_2ISO_D"]
    sub = Suboptiongraph.from_labels(d, "deghi")
    assert restrict_congruence(Congruence.discrete(d), sub).is_discrete
    assert restrict_congruence(max_congruence(d), sub) == max_congruence(sub.graph)
    small = parse_congruence(sub.graph, "eg|ih")
    assert str(extend_congruence(small, sub)) == "eg|hi"
    assert extend_congruence(Congruence.discrete(sub.graph), sub).is_discrete
    assert extend_congruence(max_congruence(sub.graph), sub) <= max_congruence(d)


def test_third_iso_examples(figs):
    r = figs["FIG_3ISO_R"]
    w = third_iso_witness(parse_congruence(r, "ef"), parse_congruence(r, "cd|efg"))
    assert sorted(w.double.quotient.labels) == sorted(["{{a}}", "{{b}}", "{{c},{d}}", "{{e,f},{g}}"])
    assert str(max_congruence(r)) == "ab|cd|efg"
    c = figs["FIG_3ISO_C"]
    w = third_iso_witness(parse_congruence(c, "xy"), parse_congruence(c, "xyz|ab"))
    assert w.double.quotient.n == 3
    assert sorted(w.relation.label_classes()) == sorted([["{a}", "{b}"], ["{c}"], ["{x,y}", "{z}"]])
    assert str(max_congruence(c)) == "abc|xyz"


def test_relation_quotient_needs_refinement(figs):
    r = figs["FIG_3ISO_R"]
    with pytest.raises(OgError):
        relation_quotient(parse_congruence(r, "ef"), parse_congruence(r, "cd"))
    theta = parse_congruence(r, "cd|efg")
    assert relation_quotient(theta, theta).is_discrete


def test_fourth_iso_example(figs):
    g = figs["FIG_4ISO"]
    w = fourth_iso_alpha(g, parse_congruence(g, "abc"))
    assert sorted(map(str, w.interval)) == sorted(["abc", "abcx", "abcy", "abc|xy", "abcxy"])
    assert len(w.target) == 5 and set(w.images) == set(w.target.elements)
    assert len(fourth_iso_alpha(g, Congruence.discrete(g)).interval) == 9
    top = fourth_iso_alpha(g, max_congruence(g))
    assert len(top.interval) == 1 and len(top.target) == 1


def test_black_hole(figs):
    q = minimize(figs["FIG_4ISO"]).quotient
    assert q.n == 1 and q.edges() == [(0, 0)]
    for g in random_corpus(300, seed=41):
        m = minimize(g).quotient
        black_hole = m.n == 1 and m.edges() == [(0, 0)]
        assert black_hole == (not terminals(g))


def test_minimize_invariants():
    rng = random.Random(4)
    for g in random_corpus(200, max_n=6, seed=42):
        m = minimize(g).quotient
        assert is_simple(m)
        cons = all_congruences(g)
        for theta in rng.sample(cons, min(3, len(cons))):
            q = quotient(g, theta)
            assert kernel(q.canonical_map) == theta
            assert q.canonical_map.is_surjective
            assert are_isomorphic(minimize(q.quotient).quotient, m)


def test_witnesses_on_random_graphs():
    rng = random.Random(5)
    for g in random_corpus(150, max_n=6, seed=43):
        cons = all_congruences(g)
        theta = rng.choice(cons)
        eta = meet(rng.choice(cons), theta)
        sub = reachable_closure(g, rng.sample(range(g.n), rng.randint(1, g.n)))
        first_iso_witness(quotient(g, theta).canonical_map)
        second_iso_witness(sub, theta)
        third_iso_witness(eta, theta)
        fourth_iso_alpha(g, theta)
