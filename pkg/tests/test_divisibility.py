import pytest
from hypothesis import given
from hypothesis import strategies as st

from charnum.cobordism import mu_generators
from charnum.combinatorics import alpha, partitions
from charnum.divisibility import (
    ParityWitness,
    PreconditionError,
    cor4_check,
    divtop_predicate,
    divtop_solve,
    predicted_v2,
    rt_predicate,
    rt_verify,
    v2,
)
from charnum.manifolds import segre_number


@pytest.mark.parametrize("d, e, expected", [(2, 1, True), (2, 2, False), (6, 2, True), (1, 1, True), (0, 1, False)])
def test_rt_predicate(d, e, expected):
    assert rt_predicate(d, e) is expected


def test_predicates_reject_bad_arguments():
    with pytest.raises(ValueError):
        rt_predicate(2, 0)
    with pytest.raises(ValueError):
        divtop_predicate(-1, 1)


@given(st.integers(min_value=-10 ** 9, max_value=10 ** 9).filter(bool))
def test_v2(n):
    k = v2(n)
    assert n % (1 << k) == 0 and n % (1 << (k + 1)) != 0


def test_v2_zero():
    assert v2(0) is None


@pytest.mark.parametrize("d", range(0, 65))
@pytest.mark.parametrize("f", range(1, 7))
def test_monotonicity_of_the_criterion(d, f):
    if alpha(d + f) > 2 * f:
        assert alpha(d + f - 1) > 2 * (f - 1)


@pytest.mark.parametrize("d, computed", [(1, 1), (2, 1), (6, 2)])
def test_rt_examples(d, computed):
    r = rt_verify(d)
    assert r.computed_v2 == computed == r.predicted_v2
    assert r.ok


def test_rt_witness_and_gcd():
    r = rt_verify(3)
    assert r.gcd == 2
    assert r.witness == "h(2,2)"


@pytest.mark.parametrize("d", range(1, 11))
def test_rt_computed_matches_predicted(d):
    assert rt_verify(d).ok


@pytest.mark.parametrize("d", range(1, 5))
def test_rt_gcd_from_full_ring_models(d):
    # segre numbers straight from c^{-1} on each product model
    from math import gcd
    g = 0
    for gen in mu_generators(d):
        g = gcd(g, segre_number(gen.model()))
    assert g == rt_verify(d).gcd


def test_predicted_v2_table():
    assert [predicted_v2(d) for d in range(1, 11)] == [1, 1, 1, 1, 1, 2, 1, 1, 1, 2]


def test_cor4_examples():
    r2 = cor4_check(2)
    assert [s for _, s in r2.values] == [6, 4, 4, 4, 4, 4]
    assert r2.decomposable_count == 3
    r3 = cor4_check(3)
    assert dict(r3.values)["h(2,2)"] == -6
    assert r3.ok
    r1 = cor4_check(1)
    assert r1.decomposable_count == 0 and r1.ok


@pytest.mark.parametrize("d", range(1, 11))
def test_cor4(d):
    r = cor4_check(d)
    assert r.ok, (r.odd, r.decomposable_not_div4)


def test_cor4_rejects_degree_zero():
    with pytest.raises(ValueError):
        cor4_check(0)


def test_divtop_degree_two_witness_is_c2():
    w = divtop_solve(2, 1)
    assert w is not None
    c2 = tuple(1 if p.label() == "c2" else 0 for p in partitions(2))
    # any witness is congruent to c2 modulo forms vanishing mod 2 on the lattice
    for g in mu_generators(2):
        v = g.char_vector.values
        assert w.evaluate(v) == sum(a * b for a, b in zip(c2, v)) % 2
    assert ParityWitness(2, 1, c2).verify(mu_generators(2))


@pytest.mark.parametrize("d, e", [(1, 1), (3, 1)])
def test_divtop_none(d, e):
    assert not divtop_predicate(d, e)
    assert divtop_solve(d, e) is None


def test_divtop_none_on_distinct_weight_three_generators():
    # the eight generators up to replacing h(1,1) by cp(1)
    gens = [g for g in mu_generators(3) if all(f != ("h", (1, 1)) for f in g.factors)]
    assert len(gens) == 8
    assert divtop_solve(3, 1, generators=gens) is None


def test_divtop_precondition_names_generator():
    with pytest.raises(PreconditionError, match="cp"):
        divtop_solve(2, 2)


CELLS = [(d, e) for d in range(1, 9) for e in range(1, 4) if rt_predicate(d, e)]


@pytest.mark.parametrize("d, e", CELLS)
def test_divtop_biconditional(d, e):
    w = divtop_solve(d, e)
    assert (w is not None) == divtop_predicate(d, e)
    if w is not None:
        assert w.verify(mu_generators(d))


@pytest.mark.parametrize("d, e", [(d, e) for d in (9, 10) for e in range(1, 5) if rt_predicate(d, e)])
def test_divtop_biconditional_to_the_desk_bound(d, e):
    assert (divtop_solve(d, e) is not None) == divtop_predicate(d, e)


@pytest.mark.parametrize("d, e", [c for c in CELLS if divtop_predicate(*c)])
def test_witness_survives_added_generators(d, e):
    without = [g for g in mu_generators(d) if ("h", (1, 1)) not in g.factors]
    w = divtop_solve(d, e, generators=without)
    assert w is not None
    assert w.verify(mu_generators(d)), w.counterexamples(mu_generators(d))


def test_witness_counterexamples_are_reported():
    bad = ParityWitness(2, 1, (0, 0))
    assert bad.counterexamples(mu_generators(2)) == ["cp(2)"]


def test_witness_note():
    w = divtop_solve(2, 1)
    # c1^2 agrees with c2 mod 2 on the lattice, so the answer is not unique
    assert w.note == "unique modulo a 1-dimensional space of forms vanishing mod 2 on the lattice"
    assert w.polynomial == "c2"
    assert w.coefficients == (0, 1)
