"""Intersection data behind the mod-4 obstructions.

* Gram matrices of the invariant Hodge classes ``delta_k`` on a product of two
  conjugate principally polarized abelian varieties, computed by closed
  formula and by a symbolic calculus in ``Q[l, l']/(l^{d+1}, l'^{d+1})``.
* A double-point evaluator: ``deg c_d(N) = integral of (g^*c(X) * s(W))_d``,
  compared with a supplied self-intersection exactly or modulo ``m``.
* The dyadic applicability predicates for the main obstruction theorems.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from charnum.combinatorics import alpha, binomial
from charnum.manifolds import (
    COMPLEX,
    ManifoldModel,
    complex_projective,
    parse_manifold,
    product,
    projective_complete_intersection,
    segre_class,
)
from charnum.ringcalc import IntegralityError, RingElement, TruncatedRing


class CheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    name: str
    d: int
    checks: tuple[Check, ...]
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


# -- abelian Gram data -------------------------------------------------------

class LambdaCalculus:
    """Cohomology classes generated by two polarizations ``l`` and ``l'``.

    The degree functional is ``deg(l^a l'^b) = (d!)^2`` when ``a == b == d``.
    """

    def __init__(self, d: int):
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        self.d = d
        self.ring = TruncatedRing([("l", 2, d), ("lp", 2, d)], "Q")
        self.l, self.lp = self.ring.gens()
        self._fact2 = math.factorial(d) ** 2

    def divided(self, a: int, b: int) -> RingElement:
        """``l^a/a! * l'^b/b!``: an integral Hodge class on the product."""
        coef = Fraction(1, math.factorial(a) * math.factorial(b))
        return self.ring.monomial((a, b)) * coef

    def delta(self, k: int) -> RingElement:
        d = self.d
        if not 0 <= k <= d // 2:
            raise ValueError(f"delta_k needs 0 <= k <= {d // 2}, got {k}")
        if 2 * k == d:
            return self.divided(k, k)
        return self.divided(k, d - k) + self.divided(d - k, k)

    def cross_classes(self) -> tuple[RingElement, RingElement]:
        """``[A x 0]`` and ``[0 x A']`` (pullbacks of a point class)."""
        d = self.d
        return self.divided(0, d), self.divided(d, 0)

    def degree(self, e: RingElement) -> int:
        """Degree of the top-dimensional part, asserting it is an integer."""
        top = e.homogeneous_part(4 * self.d) * self._fact2
        top = top.to_integer()
        return int(top.terms.get((self.d, self.d), 0))


@dataclass(frozen=True)
class GramModel:
    d: int
    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.matrix[i][i] for i in range(len(self.matrix)))


def gram_closed_form(d: int) -> tuple[tuple[int, ...], ...]:
    n = d // 2 + 1
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            if j != k:
                row.append(0)
            elif 2 * k == d:
                row.append(binomial(d, k) ** 2)
            else:
                row.append(2 * binomial(d, k) ** 2)
        rows.append(tuple(row))
    return tuple(rows)


def gram_symbolic(d: int) -> tuple[tuple[int, ...], ...]:
    calc = LambdaCalculus(d)
    deltas = [calc.delta(k) for k in range(d // 2 + 1)]
    return tuple(tuple(calc.degree(a * b) for b in deltas) for a in deltas)


def abelian_gram(d: int) -> GramModel:
    """Gram matrix of ``delta_0..delta_{d//2}``; both routes must agree."""
    if d < 1:
        raise ValueError(f"abelian_gram needs d >= 1, got {d}")
    closed = gram_closed_form(d)
    symbolic = gram_symbolic(d)
    if closed != symbolic:
        raise CheckFailed(f"d={d}: closed form {closed} != symbolic {symbolic}")
    labels = tuple(f"delta_{k}" for k in range(d // 2 + 1))
    return GramModel(d, labels, symbolic)


def resab_checks(d: int) -> CheckReport:
    checks = []
    try:
        gram = abelian_gram(d)
        checks.append(Check("gram_agreement", True, "closed form == symbolic"))
    except (CheckFailed, IntegralityError) as exc:
        return CheckReport("resab", d, (Check("gram_agreement", False, str(exc)),))
    odd = [(j, k) for j, row in enumerate(gram.matrix) for k, x in enumerate(row) if x % 2]
    checks.append(Check("entries_even", not odd, f"odd entries at {odd}" if odd else ""))
    off = [(j, k) for j, row in enumerate(gram.matrix) for k, x in enumerate(row) if j != k and x]
    checks.append(Check("orthogonal", not off, f"nonzero off-diagonal at {off}" if off else ""))
    if d % 2 == 0:
        lhs, rhs = binomial(d, d // 2) ** 2, 4 * binomial(d - 1, d // 2) ** 2
        checks.append(Check("middle_corner", lhs == rhs, f"{lhs} vs {rhs}"))
    calc = LambdaCalculus(d)
    a_cls, b_cls = calc.cross_classes()
    cross = calc.degree(a_cls * b_cls)
    beta = a_cls + b_cls
    beta_sq = calc.degree(beta * beta)
    checks.append(Check("cross_pairing", cross == 1, f"deg([A x 0].[0 x A']) = {cross}"))
    checks.append(Check("beta_squared", beta_sq == 2 == 2 * cross, f"deg(beta^2) = {beta_sq}"))
    checks.append(Check("beta_squared_mod4", beta_sq % 4 == 2, f"{beta_sq} mod 4 = {beta_sq % 4}"))
    return CheckReport("resab", d, tuple(checks),
                       {"gram_diagonal": gram.diagonal(), "beta_squared": beta_sq})


def quotab_checks(d: int) -> CheckReport:
    calc = LambdaCalculus(d)
    a_cls, b_cls = calc.cross_classes()
    # p^*beta = [A x 0] + [A x tau'] + [0 x A'] + [tau x A']; translates share a class
    pullback = a_cls + a_cls + b_cls + b_cls
    pb_sq = calc.degree(pullback * pullback)
    deg_p = 4
    checks = [Check("pullback_beta_squared", pb_sq == 8, f"deg(p^*beta^2) = {pb_sq}")]
    beta_sq = Fraction(pb_sq, deg_p)
    checks.append(Check("beta_squared", beta_sq == 2, f"deg(beta^2) = {beta_sq}"))
    checks.append(Check("beta_squared_mod4", beta_sq.denominator == 1 and beta_sq.numerator % 4 == 2,
                        f"{beta_sq} mod 4"))
    deltas = [calc.delta(k) for k in range(d // 2 + 1)]
    bad = []
    for j, dj in enumerate(deltas):
        for k, dk in enumerate(deltas):
            val = calc.degree((2 * dj) * (2 * dk))
            if val % 8:
                bad.append((j, k, val))
    checks.append(Check("twice_E_mod8", not bad, f"not divisible by 8: {bad}" if bad else ""))
    zero = calc.degree(calc.ring.zero() * pullback)
    checks.append(Check("zero_pairing", zero == 0, ""))
    return CheckReport("quotab", d, tuple(checks),
                       {"pullback_beta_squared": pb_sq, "deg_p": deg_p, "beta_squared": int(beta_sq)})


# -- double point evaluator --------------------------------------------------

@dataclass(frozen=True)
class DoublePointInput:
    """A map ``g: W -> X`` with ``dim X = 2 dim W``, given by its numerical shadow.

    ``pullback_class`` is ``g^*c(X)`` written in ``W``'s ring.
    """

    source: ManifoldModel
    pullback_class: RingElement
    self_intersection: int
    ambient: str = ""
    label: str = ""

    def __post_init__(self):
        if self.source.kind != COMPLEX:
            raise ValueError("the source must be a complex model")
        if self.pullback_class.ring != self.source.ring:
            raise ValueError("pullback class must live in the source ring")
        if self.pullback_class.constant_term() != 1:
            raise ValueError("pullback class must have constant term 1")


@dataclass(frozen=True)
class DoublePointReport:
    label: str
    d: int
    self_intersection: int
    normal_degree: int
    modulus: int

    @property
    def ok(self) -> bool:
        diff = self.self_intersection - self.normal_degree
        return diff == 0 if self.modulus == 0 else diff % self.modulus == 0


def double_point_rhs(inp: DoublePointInput) -> int:
    """``deg c_d(N)`` where ``c(N) = g^*c(X) * s(W)``."""
    W = inp.source
    normal = inp.pullback_class * segre_class(W)
    return W.integrate(normal.homogeneous_part(2 * W.dim))


def double_point_check(inp: DoublePointInput, modulus: int = 0) -> DoublePointReport:
    """Compare the self-intersection with ``deg c_d(N)`` exactly (modulus 0) or mod ``modulus``."""
    if modulus < 0:
        raise ValueError("modulus must be >= 0")
    rhs = double_point_rhs(inp)
    return DoublePointReport(inp.label or inp.source.label, inp.source.dim,
                             inp.self_intersection, rhs, modulus)


def complete_intersection_embedding(dims, multidegrees, label: str = "") -> DoublePointInput:
    """``W`` cut out by divisors in ``X = prod CP^{n_i}``, with ``dim X = 2 dim W``.

    ``W`` is modeled on ``X``'s ring, so ``g^*c(X)`` is ``c(X)`` itself and
    the self-intersection is ``deg_X([W]^2)``.
    """
    W = projective_complete_intersection(dims, multidegrees)
    if sum(dims) != 2 * W.dim:
        raise ValueError(f"ambient dimension {sum(dims)} is not twice {W.dim}")
    ring = W.ring
    cx = ring.one()
    for h, n in zip(ring.gens(), dims):
        cx = cx * (1 + h) ** (n + 1)
    self_int = int((W.multiplier * W.multiplier).terms.get(W.top, 0))
    amb = "x".join(f"CP{n}" for n in dims)
    return DoublePointInput(W, cx, self_int, amb, label or W.label)


def embedding_suite() -> list[DoublePointInput]:
    """Embeddings whose self-intersection is known independently."""
    cp1 = complex_projective(1)
    h = cp1.ring.gen("x")
    cp2 = complex_projective(2)
    x = cp2.ring.gen("x")
    return [
        # c(CP1 x CP1) restricted to CP1 x pt is (1+2h)(1+0)
        DoublePointInput(cp1, 1 + 2 * h, 0, "CP1xCP1", "ruling"),
        # on the diagonal both hyperplane classes restrict to h
        DoublePointInput(cp1, (1 + h) ** 4, 2, "CP1xCP1", "diagonal"),
        # a conic meets a line twice, so H restricts to 2h
        DoublePointInput(cp1, (1 + 2 * h) ** 3, 4, "CP2", "conic"),
        # diagonal in CP2 x CP2 has self-intersection chi(CP2) = 3
        DoublePointInput(cp2, (1 + x) ** 6, 3, "CP2xCP2", "diagonal CP2"),
        complete_intersection_embedding([1, 1], [(0, 1)], "ruling (ci)"),
        complete_intersection_embedding([1, 1], [(1, 1)], "diagonal (ci)"),
        complete_intersection_embedding([2], [(2,)], "conic (ci)"),
        complete_intersection_embedding([2], [(3,)], "plane cubic"),
        complete_intersection_embedding([1, 1], [(2, 3)], "curve (2,3) in CP1xCP1"),
        complete_intersection_embedding([4], [(1,), (2,)], "quadric surface in CP4"),
        complete_intersection_embedding([4], [(2,), (2,)], "(2,2) surface in CP4"),
        complete_intersection_embedding([2, 2], [(1, 1), (1, 2)], "surface in CP2xCP2"),
    ]


def _coef(c) -> int:
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise ValueError(f"coefficient must be an integer or decimal string, got {c!r}")
    return int(c)


def _terms(ring: TruncatedRing, raw) -> RingElement:
    terms = []
    for t in raw:
        if isinstance(t, dict):
            exps, c = t["exponents"], t["coefficient"]
        else:
            exps, c = t
        terms.append((tuple(int(e) for e in exps), _coef(c)))
    return ring.element(terms)


def model_from_json(doc: dict) -> ManifoldModel:
    """Source model from a manifold spec string or an explicit ring presentation."""
    if isinstance(doc, str):
        return parse_manifold(doc)
    rdoc = doc["ring"]
    domain = rdoc.get("domain", "Z")
    ring = TruncatedRing(
        [(v["name"], int(v["degree"]), int(v["order"])) for v in rdoc["variables"]], domain
    )
    total = _terms(ring, doc["tangent_class"])
    mult = _terms(ring, doc["multiplier"]) if "multiplier" in doc else ring.one()
    top = tuple(int(e) for e in doc["top"])
    return ManifoldModel(COMPLEX, int(doc["dimension"]), ring, total, mult, top,
                         doc.get("label", "W"))


def double_point_input_from_json(doc: dict) -> tuple[DoublePointInput, int]:
    """Parse a double-point document; returns the input and the modulus (default 0)."""
    W = model_from_json(doc["source"])
    pull = _terms(W.ring, doc["pullback_class"])
    inp = DoublePointInput(W, pull, _coef(doc["self_intersection"]),
                           doc.get("ambient", ""), doc.get("label", ""))
    return inp, int(doc.get("modulus", 0))


def load_double_point(path: str | Path) -> tuple[DoublePointInput, int]:
    with open(path) as fh:
        return double_point_input_from_json(json.load(fh))


def double_point_input_to_json(inp: DoublePointInput, modulus: int = 0) -> dict[str, Any]:
    W = inp.source
    ring = W.ring

    def dump(e: RingElement):
        return [{"exponents": list(k), "coefficient": str(c)} for k, c in sorted(e.terms.items())]

    return {
        "label": inp.label,
        "ambient": inp.ambient,
        "source": {
            "label": W.label,
            "dimension": W.dim,
            "ring": {"domain": ring.domain,
                     "variables": [{"name": v.name, "degree": v.degree, "order": v.order}
                                   for v in ring.variables]},
            "tangent_class": dump(W.total_class),
            "multiplier": dump(W.multiplier),
            "top": list(W.top),
        },
        "pullback_class": dump(inp.pullback_class),
        "self_intersection": str(inp.self_intersection),
        "modulus": modulus,
    }


def projth_total_class_check(k: int) -> CheckReport:
    """``c(CP^1 x CP^{2^{k+1}-1}) = (1+H1)^2 (1+H2)^{2^{k+1}}`` and it is 1 mod 2."""
    n = 2 ** (k + 1) - 1
    X = product(complex_projective(1), complex_projective(n))
    h1, h2 = X.ring.gens()
    expected = (1 + h1) ** 2 * (1 + h2) ** (2 ** (k + 1))
    checks = (
        Check("euler_sequence", X.total_class == expected, X.total_class.format()),
        Check("trivial_mod2", X.total_class.reduce_mod2() == X.ring.with_domain("F2").one(), ""),
    )
    return CheckReport("projth_total_class", 2 ** k, checks)


# -- applicability predicates --------------------------------------------------

def thji_values(limit: int, e: int = 1) -> list[int]:
    """``c <= limit`` with ``alpha(c + e) == 2e``."""
    return [c for c in range(limit + 1) if alpha(c + e) == 2 * e]


@dataclass(frozen=True)
class PredicateReport:
    c: int
    d: int
    e: int | None
    positive_regime: bool
    chow3: bool
    chow4: bool
    thji: tuple[int, ...]
    projth: bool

    def as_dict(self) -> dict:
        return {
            "c": self.c, "d": self.d, "e": self.e,
            "alpha_c_plus_1": alpha(self.c + 1),
            "positive_regime": self.positive_regime,
            "chow3_chow5": self.chow3,
            "chow4": self.chow4,
            "thji_e": list(self.thji),
            "projth": self.projth,
        }


def predicate_report(c: int, d: int, e: int | None = None, e_cap: int = 4) -> PredicateReport:
    if c < 0 or d < 0:
        raise ValueError("c and d must be >= 0")
    if e is not None and e < 1:
        raise ValueError("e must be >= 1")
    obstructed = d >= c
    a1 = alpha(c + 1)
    es = [e] if e is not None else list(range(1, e_cap + 1))
    thji = tuple(x for x in es if obstructed and c >= 1 and alpha(c + x) == 2 * x)
    projth = c == d and c >= 2 and (c & (c - 1)) == 0
    return PredicateReport(
        c, d, e,
        positive_regime=d < c,
        chow3=obstructed and a1 >= 3,
        chow4=obstructed and a1 >= 2,
        thji=thji,
        projth=projth,
    )
