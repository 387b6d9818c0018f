import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from charnum.combinatorics import Partition, binomial, partitions
from charnum.manifolds import (
    CharVector,
    DimensionMismatch,
    KindMismatch,
    char_vector,
    complex_projective,
    dold,
    evaluate_linear,
    format_polynomial,
    kunneth_char_vector,
    milnor_hypersurface,
    parse_manifold,
    point,
    product,
    projective_complete_intersection,
    real_projective,
    segre_class,
    segre_number,
    segre_polynomial,
)

CATALOG = (
    [complex_projective(n) for n in range(1, 5)]
    + [milnor_hypersurface(m, n) for m in range(1, 4) for n in range(1, 4) if m + n - 1 <= 4]
)


def segre_oracle(d):
    """Coefficient of c^k in s_d is (-1)^|k| |k|! / prod k_r!, from 1/(1+u) = sum (-u)^j."""
    out = {}
    for p in partitions(d):
        k = p.length
        out[p] = (-1) ** k * math.factorial(k) // math.prod(math.factorial(e) for e in p.exponents)
    return out


def test_cp1():
    assert char_vector(complex_projective(1)).values == (2,)


def test_cp2():
    assert char_vector(complex_projective(2)).values == (9, 3)


def test_cp3():
    assert char_vector(complex_projective(3)).values == (64, 24, 4)


def test_point_vector():
    assert char_vector(complex_projective(0)).values == (1,)
    assert char_vector(point()).values == (1,)


def test_milnor_examples():
    assert char_vector(milnor_hypersurface(1, 1)).values == (2,)
    assert char_vector(milnor_hypersurface(1, 2)).values == (8, 4)
    assert segre_number(milnor_hypersurface(2, 2)) == -6


def milnor_segre_oracle(m, n):
    """s(H) = (1+a+b) (1+a)^-(m+1) (1+b)^-(n+1); integrate (a+b) * s_{m+n-1}.

    Uses the binomial series (1+a)^-(m+1) = sum (-1)^i C(m+i, i) a^i directly.
    """
    def s(i, j):
        if i < 0 or j < 0:
            return 0
        return (-1) ** (i + j) * binomial(m + i, i) * binomial(n + j, j)

    def seg(i, j):  # coefficient of a^i b^j in s(H)
        return s(i, j) + s(i - 1, j) + s(i, j - 1)

    # (a + b) * seg: a^m b^n comes from a * a^{m-1} b^n and b * a^m b^{n-1}
    return seg(m - 1, n) + seg(m, n - 1)


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (1, 5)])
def test_milnor_segre_oracle(m, n):
    assert segre_number(milnor_hypersurface(m, n)) == milnor_segre_oracle(m, n)


def test_milnor_segre_oracle_hand_value():
    assert milnor_segre_oracle(2, 2) == -6


@pytest.mark.parametrize("n", range(1, 8))
def test_cp_segre_closed_form(n):
    # top coefficient of (1+x)^{-(n+1)}
    assert segre_number(complex_projective(n)) == (-1) ** n * binomial(2 * n, n)


@pytest.mark.parametrize("n", range(1, 7))
def test_cp_euler_characteristic(n):
    top = Partition.from_parts([n])
    assert char_vector(complex_projective(n))[top] == n + 1


def test_real_projective_examples():
    assert char_vector(real_projective(2)).values == (1, 1)
    assert set(char_vector(real_projective(1)).values) == {0}
    assert char_vector(real_projective(4)).values == (1, 0, 0, 0, 1)


def test_dold_examples():
    assert dold(1, 2).dim == 5
    assert any(char_vector(dold(1, 2)).values)
    assert not any(char_vector(dold(1, 1)).values)


@pytest.mark.parametrize("n", range(1, 7))
def test_rp_numbers_are_cp_numbers_mod_2(n):
    assert char_vector(real_projective(n)).values == char_vector(complex_projective(n)).mod2().values


def test_product_cp1_cp1():
    cp1 = complex_projective(1)
    assert char_vector(product(cp1, cp1)).values == (8, 4)


def test_product_with_point_is_identity():
    for M in CATALOG[:4]:
        assert product(M, point()) is M
        assert product(point(), M) is M


def test_mixed_kinds_do_not_multiply():
    with pytest.raises(KindMismatch):
        product(complex_projective(1), real_projective(2))


def test_segre_of_product_example():
    M = product(complex_projective(1), complex_projective(2))
    assert segre_number(M) == -12 == segre_number(complex_projective(1)) * segre_number(complex_projective(2))


def pairs(max_weight):
    return [(X, Y) for X in CATALOG for Y in CATALOG if X.dim + Y.dim <= max_weight]


def pair_id(pair):
    return f"{pair[0].label}*{pair[1].label}"


@pytest.mark.parametrize("pair", pairs(8), ids=pair_id)
def test_segre_is_multiplicative(pair):
    X, Y = pair
    assert segre_number(product(X, Y)) == segre_number(X) * segre_number(Y)


@pytest.mark.parametrize("pair", pairs(5), ids=pair_id)
def test_kunneth_agrees_with_ring_product(pair):
    X, Y = pair
    split = kunneth_char_vector(char_vector(X), char_vector(Y))
    assert split == char_vector(product(X, Y))


def test_kunneth_mod2_agrees_with_ring_product():
    for X in (real_projective(2), dold(1, 1), real_projective(3)):
        for Y in (real_projective(2), real_projective(4)):
            assert kunneth_char_vector(char_vector(X), char_vector(Y)) == char_vector(product(X, Y))


@pytest.mark.parametrize("M", CATALOG, ids=lambda M: M.label)
def test_chern_times_segre_is_one(M):
    assert M.total_class * segre_class(M) == M.ring.one()


def test_segre_polynomial_degree_two():
    assert format_polynomial(segre_polynomial(2)) == "c1^2 - c2"


def test_segre_polynomial_degree_three_text():
    assert format_polynomial(segre_polynomial(3)) == "-c1^3 + 2*c1*c2 - c3"


@pytest.mark.parametrize("d", range(1, 11))
def test_segre_polynomial_matches_multinomial_oracle(d):
    assert segre_polynomial(d) == segre_oracle(d)
    assert list(segre_polynomial(d)) == list(partitions(d))


@pytest.mark.parametrize("M", CATALOG, ids=lambda M: M.label)
def test_segre_polynomial_evaluates_to_segre_number(M):
    assert evaluate_linear(segre_polynomial(M.dim), char_vector(M)) == segre_number(M)


def test_cp2_segre_from_euler_characteristic():
    v = char_vector(complex_projective(2))
    chi, c2 = 1, v[Partition.from_parts([2])]
    assert segre_number(complex_projective(2)) == 6 == 12 * chi - 2 * c2


@pytest.mark.parametrize("M", CATALOG, ids=lambda M: M.label)
def test_segre_numbers_even(M):
    assert segre_number(M) % 2 == 0


def test_products_have_segre_divisible_by_four():
    for X in CATALOG:
        for Y in CATALOG:
            if X.dim + Y.dim <= 6:
                assert segre_number(product(X, Y)) % 4 == 0


def test_char_vector_validation():
    with pytest.raises(ValueError):
        CharVector(2, "Z", (1,))
    assert CharVector(2, "F2", (3, 4)).values == (1, 0)
    with pytest.raises(DimensionMismatch):
        char_vector(complex_projective(2), 3)
    with pytest.raises(DimensionMismatch):
        complex_projective(2).char_number(Partition.from_parts([1]))


def test_labels_and_dict():
    v = char_vector(complex_projective(2))
    assert v.labels() == ["c1^2", "c2"]
    assert v.as_dict() == {"c1^2": 9, "c2": 3}
    assert char_vector(real_projective(2)).labels() == ["w1^2", "w2"]


def test_complete_intersection_quadric_surface():
    # a quadric surface is CP1 x CP1
    Q = projective_complete_intersection([3], [(2,)])
    assert char_vector(Q).values == (8, 4)


def test_cubic_surface():
    # degree-3 surface: c1^2 = 3, Euler characteristic 9
    S = projective_complete_intersection([3], [(3,)])
    assert char_vector(S).values == (3, 9)


@pytest.mark.parametrize("spec, expected", [
    ("cp(2)", (9, 3)),
    ("h(1,2)", (8, 4)),
    ("cp(1)*cp(1)", (8, 4)),
    (" CP( 1 ) * pt ", (2,)),
    ("rp(2)", (1, 1)),
])
def test_parse_manifold(spec, expected):
    assert char_vector(parse_manifold(spec)).values == expected


def test_parse_three_factors():
    M = parse_manifold("cp(1)*h(2,2)")
    assert M.dim == 4
    assert M.factors == ("cp(1)", "h(2,2)")
    assert segre_number(M) == -2 * -6


@pytest.mark.parametrize("spec", ["", "cp", "cp(1,2)", "h(1)", "cp(1)**cp(1)", "xp(2)", "cp(-1)", "cp(1)*rp(2)"])
def test_parse_errors(spec):
    with pytest.raises(ValueError):
        parse_manifold(spec)


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_milnor_symmetric(m, n):
    assert char_vector(milnor_hypersurface(m, n)) == char_vector(milnor_hypersurface(n, m))
