import pytest

from charnum.cobordism import (
    OutOfRange,
    PsiError,
    desk_bound,
    expected_mo_rank,
    mo_generators,
    mo_model,
    mo_rank,
    mu_generators,
    mu_model,
    mu_reduction_space,
    psi_vector,
)
from charnum.lattices import F2Space
from charnum.manifolds import char_vector, complex_projective, parse_manifold
from charnum.combinatorics import partitions


def labels(gens):
    return {g.label for g in gens}


def test_generators_degree_zero():
    assert labels(mu_generators(0)) == {"pt"}
    assert mu_generators(0)[0].char_vector.values == (1,)


def test_generators_degree_one():
    assert labels(mu_generators(1)) == {"cp(1)", "h(1,1)"}


def test_generators_degree_two():
    assert [g.label for g in mu_generators(2)] == [
        "cp(2)", "h(1,2)", "h(2,1)", "cp(1)*cp(1)", "cp(1)*h(1,1)", "h(1,1)*h(1,1)",
    ]


@pytest.mark.parametrize("d, count", [(1, 2), (2, 6), (3, 14), (4, 33), (5, 70), (6, 149)])
def test_generator_counts(d, count):
    assert len(mu_generators(d)) == count


@pytest.mark.parametrize("d", range(1, 6))
def test_cached_vectors_match_full_ring_model(d):
    for g in mu_generators(d):
        assert g.char_vector == char_vector(g.model()), g.label


@pytest.mark.parametrize("d", range(1, 6))
def test_real_cached_vectors_match_full_ring_model(d):
    for g in mo_generators(d):
        assert g.char_vector == char_vector(parse_manifold(g.label)), g.label


def test_generator_properties():
    g = mu_generators(3)[-1]
    assert g.dimension == 3
    assert g.is_decomposable
    assert str(g) == g.label
    assert not mu_generators(3)[0].is_decomposable


def test_real_generators_have_no_segre_number():
    with pytest.raises(ValueError):
        mo_generators(2)[0].segre_number  # noqa: B018


def test_mu4_index():
    assert mu_model(2).lattice.index() == 12


@pytest.mark.parametrize("d", range(1, 9))
def test_mu_lattice_full_rank(d):
    assert mu_model(d).lattice.dimension == len(partitions(d))


def test_mo_small_ranks():
    assert mo_rank(1) == 0
    assert mo_rank(2) == 1
    assert mo_model(2).space.contains((1, 1))


@pytest.mark.parametrize("d, expected", [(1, 0), (2, 1), (3, 0), (4, 2), (5, 1), (6, 3), (7, 1), (8, 5)])
def test_mo_ranks(d, expected):
    assert mo_rank(d) == expected == expected_mo_rank(d)


def test_expected_rank_examples():
    assert expected_mo_rank(4) == 2
    assert expected_mo_rank(3) == 0
    assert expected_mo_rank(6) == 3


def test_psi_of_cp2_is_rp2():
    cp2 = char_vector(complex_projective(2))
    assert psi_vector(cp2, 2).values == (1, 1) == char_vector(parse_manifold("rp(2)")).values


def test_psi_of_square_vanishes():
    assert psi_vector((8, 4), 2).values == (0, 0)


def test_psi_kills_doubles():
    for g in mu_generators(3):
        assert not any(psi_vector(tuple(2 * x for x in g.char_vector.values), 3).values)


def test_psi_rejects_non_members():
    with pytest.raises(PsiError):
        psi_vector((1, 1), 2)


@pytest.mark.parametrize("d", range(1, 9))
def test_reduction_lands_in_mo_span(d):
    mo = mo_model(d).space
    for g in mu_generators(d):
        assert mo.contains(g.char_vector.mod2().values), g.label


@pytest.mark.parametrize("d", range(1, 7))
def test_spans_coincide(d):
    assert mu_reduction_space(d).span_equals(mo_model(d).space)


def test_out_of_range():
    with pytest.raises(OutOfRange):
        mu_model(desk_bound() + 1)
    with pytest.raises(OutOfRange):
        mo_model(-1)
    assert mu_model(3, bound=3).degree == 3


def test_desk_bound_env(monkeypatch):
    monkeypatch.setenv("CHARNUM_MAX_D", "3")
    assert desk_bound() == 3
    with pytest.raises(OutOfRange):
        mu_generators(4)
    monkeypatch.delenv("CHARNUM_MAX_D")
    assert desk_bound() == 10
    assert desk_bound("real") == 8


def test_mo_span_generated_by_rp_and_dold():
    # indecomposable real generators in degree 4 are rp(4) and dold(2,1)
    names = labels(g for g in mo_generators(4) if not g.is_decomposable)
    assert names == {"rp(4)", "dold(2,1)"}
    assert F2Space([g.char_vector.values for g in mo_generators(4)], 5).dimension == 2
