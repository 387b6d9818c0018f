"""Desk-scale models of MU_{2d} and MO_d as lattices of characteristic numbers.

Generators are products of catalog manifolds: ``cp(n)`` and ``h(m,n)`` on
the complex side, ``rp(2k)`` and ``dold(m,n)`` on the real side.  A group is
identified with the lattice (or F2 span) of the generators' characteristic
numbers, since those numbers determine the cobordism class.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from charnum.combinatorics import partitions
from charnum.lattices import F2Space, IntegerLattice
from charnum.manifolds import (
    COMPLEX,
    REAL,
    CharVector,
    ManifoldModel,
    char_vector,
    complex_projective,
    dold,
    evaluate_linear,
    kunneth_char_vector,
    milnor_hypersurface,
    parse_manifold,
    real_projective,
    segre_polynomial,
)

DEFAULT_MU_BOUND = 10
DEFAULT_MO_BOUND = 8


class OutOfRange(ValueError):
    pass


class PsiError(ValueError):
    pass


def desk_bound(kind: str = COMPLEX) -> int:
    """Largest supported degree; ``CHARNUM_MAX_D`` overrides the default."""
    env = os.environ.get("CHARNUM_MAX_D")
    if env:
        return int(env)
    return DEFAULT_MU_BOUND if kind == COMPLEX else DEFAULT_MO_BOUND


def _check_range(d: int, kind: str, bound: int | None) -> None:
    bound = desk_bound(kind) if bound is None else bound
    if d < 0 or d > bound:
        raise OutOfRange(f"degree {d} outside the supported range 0..{bound}")


# A catalog factor is (tag, params); tag order fixes the canonical sort.
_TAG_ORDER = {"cp": 0, "h": 1, "rp": 0, "dold": 1}


def _factor_dim(factor: tuple[str, tuple[int, ...]]) -> int:
    tag, p = factor
    if tag == "cp" or tag == "rp":
        return p[0]
    if tag == "h":
        return p[0] + p[1] - 1
    return p[0] + 2 * p[1]


def _factor_key(factor):
    tag, p = factor
    return (_factor_dim(factor), _TAG_ORDER[tag], p)


def _factor_spec(factor) -> str:
    tag, p = factor
    return f"{tag}({','.join(map(str, p))})"


@lru_cache(maxsize=None)
def _catalog(kind: str, k: int) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Catalog factors of dimension exactly ``k >= 1``."""
    if kind == COMPLEX:
        out = [("cp", (k,))]
        out += [("h", (m, k + 1 - m)) for m in range(1, k + 1)]
    else:
        out = [("rp", (k,))] if k % 2 == 0 else []
        out += [("dold", (k - 2 * n, n)) for n in range(1, k // 2 + 1) if k - 2 * n >= 1]
    return tuple(sorted(out, key=_factor_key))


@lru_cache(maxsize=None)
def factor_model(factor: tuple[str, tuple[int, ...]]) -> ManifoldModel:
    tag, p = factor
    return {"cp": complex_projective, "h": milnor_hypersurface,
            "rp": real_projective, "dold": dold}[tag](*p)


@lru_cache(maxsize=None)
def _factor_vector(factor) -> CharVector:
    return char_vector(factor_model(factor))


@lru_cache(maxsize=None)
def monomial_vector(factors: tuple) -> CharVector:
    """Characteristic numbers of a product, folded factor by factor with the Kunneth split."""
    if len(factors) == 1:
        return _factor_vector(factors[0])
    return kunneth_char_vector(monomial_vector(factors[:-1]), _factor_vector(factors[-1]))


@dataclass(frozen=True)
class GeneratorMonomial:
    """A product of catalog manifolds, factors in canonical order."""

    kind: str
    factors: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def dimension(self) -> int:
        return sum(_factor_dim(f) for f in self.factors)

    @property
    def label(self) -> str:
        return "*".join(_factor_spec(f) for f in self.factors) if self.factors else "pt"

    @property
    def is_decomposable(self) -> bool:
        return len(self.factors) >= 2

    @property
    def char_vector(self) -> CharVector:
        if not self.factors:
            return CharVector(0, "Z" if self.kind == COMPLEX else "F2", (1,))
        return monomial_vector(self.factors)

    @property
    def segre_number(self) -> int:
        """``s_d`` read off the Chern numbers through the universal Segre polynomial."""
        if self.kind != COMPLEX:
            raise ValueError("Segre numbers are only defined for complex generators")
        if not self.factors:
            return 1
        return evaluate_linear(segre_polynomial(self.dimension), self.char_vector)

    def model(self) -> ManifoldModel:
        """Full ring model of the product (slower than the cached vector)."""
        return parse_manifold(self.label)

    def __str__(self):
        return self.label


def _monomials(kind: str, d: int) -> list[GeneratorMonomial]:
    items = [f for k in range(1, d + 1) for f in _catalog(kind, k)]
    items.sort(key=_factor_key)
    out: list[tuple] = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(items)):
            f = items[i]
            fd = _factor_dim(f)
            if fd <= remaining:
                acc.append(f)
                rec(i, remaining - fd, acc)
                acc.pop()

    rec(0, d, [])
    gens = [GeneratorMonomial(kind, m) for m in out]
    gens.sort(key=lambda g: (len(g.factors), tuple(_factor_key(f) for f in reversed(g.factors))))
    return gens


@lru_cache(maxsize=None)
def _mu_generators(d: int) -> tuple[GeneratorMonomial, ...]:
    return tuple(_monomials(COMPLEX, d))


@lru_cache(maxsize=None)
def _mo_generators(d: int) -> tuple[GeneratorMonomial, ...]:
    return tuple(_monomials(REAL, d))


def mu_generators(d: int, bound: int | None = None) -> tuple[GeneratorMonomial, ...]:
    """All products of ``cp(n)``, ``h(m,n)`` of complex dimension ``d``."""
    _check_range(d, COMPLEX, bound)
    return _mu_generators(d)


def mo_generators(d: int, bound: int | None = None) -> tuple[GeneratorMonomial, ...]:
    """All products of ``rp(2k)``, ``dold(m,n)`` of real dimension ``d``."""
    _check_range(d, REAL, bound)
    return _mo_generators(d)


@dataclass(frozen=True)
class MuModel:
    degree: int
    generators: tuple[GeneratorMonomial, ...]
    lattice: IntegerLattice


@dataclass(frozen=True)
class MoModel:
    degree: int
    generators: tuple[GeneratorMonomial, ...]
    space: F2Space


@lru_cache(maxsize=None)
def _mu_model(d: int) -> MuModel:
    gens = _mu_generators(d)
    lattice = IntegerLattice([g.char_vector.values for g in gens], len(partitions(d)))
    lattice.basis  # noqa: B018
    return MuModel(d, gens, lattice)


@lru_cache(maxsize=None)
def _mo_model(d: int) -> MoModel:
    gens = _mo_generators(d)
    return MoModel(d, gens, F2Space([g.char_vector.values for g in gens], len(partitions(d))))


def mu_model(d: int, bound: int | None = None) -> MuModel:
    _check_range(d, COMPLEX, bound)
    return _mu_model(d)


def mo_model(d: int, bound: int | None = None) -> MoModel:
    _check_range(d, REAL, bound)
    return _mo_model(d)


def mo_rank(d: int, bound: int | None = None) -> int:
    return mo_model(d, bound).space.dimension


def psi_vector(v: CharVector | tuple, d: int, bound: int | None = None) -> CharVector:
    """Image of a Chern-number vector in MO_d: its reduction mod 2.

    Fails if ``v`` is not in the MU lattice, or if the reduction is not the
    Stiefel-Whitney vector of some class in the MO model.
    """
    values = tuple(v.values if isinstance(v, CharVector) else v)
    mu = mu_model(d, bound)
    if not mu.lattice.member(values):
        raise PsiError(f"{values} is not in the MU_{2 * d} lattice")
    reduced = CharVector(d, "F2", values)
    mo = mo_model(d, bound)
    if not mo.space.contains(reduced.values):
        raise PsiError(f"reduction {reduced.values} lies outside the MO_{d} span")
    return reduced


def mu_reduction_space(d: int, bound: int | None = None) -> F2Space:
    """F2 span of the mod-2 Chern vectors of all MU generators."""
    gens = mu_generators(d, bound)
    return F2Space([g.char_vector.values for g in gens], len(partitions(d)))


def expected_mo_rank(d: int) -> int:
    """Partitions of ``d`` with no part of the form ``2^k - 1``."""
    bad = {2 ** k - 1 for k in range(1, d.bit_length() + 2)}
    return sum(1 for p in partitions(d) if not any(part in bad for part in p.parts()))
