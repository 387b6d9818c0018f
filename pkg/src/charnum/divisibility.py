"""2-adic divisibility of the top Segre number on the MU lattice.

Three checks, all driven by the generator monomials of ``mu_model(d)``:

* the valuation criterion: ``2^e`` divides ``s_d`` on ``MU_{2d}`` iff
  ``alpha(d+e-1) > 2(e-1)``;
* ``s_d`` is even everywhere and divisible by 4 on decomposables;
* ``s_d / 2^e`` agrees mod 2 with a linear combination of Chern numbers iff
  ``alpha(d+e) >= 2e``, found by solving an F2 system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from charnum.combinatorics import alpha, partitions
from charnum.cobordism import GeneratorMonomial, mu_model
from charnum.lattices import F2Space, f2_solve, functional_gcd
from charnum.manifolds import format_polynomial

DEFAULT_E_CAP = 4


class PreconditionError(ValueError):
    pass


def rt_predicate(d: int, e: int) -> bool:
    """True iff ``2^e`` divides ``s_d`` on ``MU_{2d}``."""
    if d < 0 or e < 1:
        raise ValueError(f"need d >= 0 and e >= 1, got ({d}, {e})")
    return alpha(d + e - 1) > 2 * (e - 1)


def divtop_predicate(d: int, e: int) -> bool:
    if d < 0 or e < 1:
        raise ValueError(f"need d >= 0 and e >= 1, got ({d}, {e})")
    return alpha(d + e) >= 2 * e


def v2(n: int) -> int | None:
    """2-adic valuation; ``None`` for zero."""
    if n == 0:
        return None
    n = abs(n)
    return (n & -n).bit_length() - 1


def predicted_v2(d: int, cap: int = 64) -> int:
    """Largest ``e`` such that the criterion holds for every ``1..e``."""
    e = 0
    while e < cap and rt_predicate(d, e + 1):
        e += 1
    return e


@dataclass(frozen=True)
class RTReport:
    d: int
    gcd: int
    computed_v2: int | None
    predicted_v2: int
    witness: str | None  # a generator attaining the minimal valuation

    @property
    def ok(self) -> bool:
        return self.computed_v2 == self.predicted_v2


def rt_verify(d: int, bound: int | None = None) -> RTReport:
    model = mu_model(d, bound)
    values = [g.segre_number for g in model.generators]
    g = functional_gcd(values)
    computed = v2(g)
    witness = None
    if computed is not None:
        for gen, s in zip(model.generators, values):
            if v2(s) == computed:
                witness = gen.label
                break
    return RTReport(d, g, computed, predicted_v2(d), witness)


@dataclass(frozen=True)
class Cor4Report:
    d: int
    values: tuple[tuple[str, int], ...]
    odd: tuple[str, ...]
    decomposable_not_div4: tuple[str, ...]
    decomposable_count: int

    @property
    def ok(self) -> bool:
        return not self.odd and not self.decomposable_not_div4


def cor4_check(d: int, bound: int | None = None) -> Cor4Report:
    if d < 1:
        raise ValueError("cor4_check needs d >= 1")
    gens = mu_model(d, bound).generators
    values = tuple((g.label, g.segre_number) for g in gens)
    odd = tuple(lbl for lbl, s in values if s % 2)
    decomposables = [(g.label, s) for g, (_, s) in zip(gens, values) if g.is_decomposable]
    bad = tuple(lbl for lbl, s in decomposables if s % 4)
    return Cor4Report(d, values, odd, bad, len(decomposables))


@dataclass(frozen=True)
class ParityWitness:
    """A mod-2 linear form ``P`` in the Chern numbers with ``s_d / 2^e == P (mod 2)``."""

    d: int
    e: int
    coefficients: tuple[int, ...]
    note: str = field(default="")

    @property
    def polynomial(self) -> str:
        coeffs = {p: c for p, c in zip(partitions(self.d), self.coefficients) if c}
        return format_polynomial(coeffs)

    def evaluate(self, chern: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(self.coefficients, chern)) % 2

    def counterexamples(self, generators: Iterable[GeneratorMonomial]) -> list[str]:
        bad = []
        for g in generators:
            s = g.segre_number
            if s % (1 << self.e):
                bad.append(g.label)
            elif (s >> self.e) % 2 != self.evaluate(g.char_vector.values):
                bad.append(g.label)
        return bad

    def verify(self, generators: Iterable[GeneratorMonomial]) -> bool:
        return not self.counterexamples(generators)


def divtop_system(d: int, e: int, generators: Sequence[GeneratorMonomial]) -> tuple[list, list]:
    """Rows: mod-2 Chern vectors; targets: ``s_d / 2^e`` mod 2."""
    rows, target = [], []
    for g in generators:
        s = g.segre_number
        if s % (1 << e):
            raise PreconditionError(f"s_{d}({g.label}) = {s} is not divisible by 2^{e}")
        rows.append(tuple(x % 2 for x in g.char_vector.values))
        target.append((s >> e) % 2)
    return rows, target


def divtop_solve(d: int, e: int, bound: int | None = None,
                 generators: Sequence[GeneratorMonomial] | None = None) -> ParityWitness | None:
    """Find the canonical parity witness, or ``None`` when none exists.

    The canonical witness is the lexicographically smallest solution in the
    canonical column order.  It is unique only modulo forms vanishing mod 2
    on the lattice.
    """
    if generators is None:
        generators = mu_model(d, bound).generators
    # raises naming the first generator on which s_d / 2^e is not integral
    rows, target = divtop_system(d, e, generators)
    x = f2_solve(rows, target, len(partitions(d)))
    if x is None:
        return None
    kernel_dim = len(partitions(d)) - F2Space(rows, len(partitions(d))).dimension
    note = (
        "unique" if kernel_dim == 0 else
        f"unique modulo a {kernel_dim}-dimensional space of forms vanishing mod 2 on the lattice"
    )
    return ParityWitness(d, e, x, note)
