"""Truncated multivariate polynomial rings ``R[x_1..x_k]/(x_i^(n_i+1))``.

Elements are sparse maps from exponent tuples to coefficients.  The
coefficient domain is one of ``"Z"``, ``"Q"`` or ``"F2"``.  Every variable has
a cohomological degree (1 or 2) so that homogeneous parts can be extracted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

DOMAINS = ("Z", "Q", "F2")


class RingMismatch(ValueError):
    pass


class NotAUnit(ValueError):
    pass


class IntegralityError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    degree: int
    order: int  # x^(order + 1) == 0


def _normalize(domain: str, c):
    if domain == "Z":
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise IntegralityError(f"non-integral coefficient {c}")
            return c.numerator
        return int(c)
    if domain == "Q":
        return Fraction(c)
    if isinstance(c, Fraction):
        if c.denominator % 2 == 0:
            raise IntegralityError(f"coefficient {c} has even denominator")
        c = c.numerator * pow(c.denominator, -1, 2)
    return int(c) % 2


class TruncatedRing:
    """A truncated polynomial ring over ``Z``, ``Q`` or ``F2``.

    >>> R = TruncatedRing([("x", 2, 2)])
    >>> x = R.gen("x")
    >>> (1 + x) * (1 - x)
    1 - x^2
    """

    def __init__(self, variables: Iterable, domain: str = "Z"):
        if domain not in DOMAINS:
            raise ValueError(f"unknown coefficient domain {domain!r}")
        vs = []
        for v in variables:
            v = v if isinstance(v, Variable) else Variable(*v)
            if v.order < 1:
                raise ValueError(f"nilpotency order of {v.name} must be >= 1")
            if v.degree not in (1, 2):
                raise ValueError(f"degree of {v.name} must be 1 or 2")
            if v.degree == 1 and domain != "F2":
                raise ValueError("degree-1 variables are only allowed over F2")
            vs.append(v)
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.variables: tuple[Variable, ...] = tuple(vs)
        self.domain = domain
        self._orders = tuple(v.order for v in vs)
        self._degrees = tuple(v.degree for v in vs)
        self._key = (self.variables, domain)

    def __eq__(self, other):
        return isinstance(other, TruncatedRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        vs = ", ".join(f"{v.name}^{v.order + 1}" for v in self.variables)
        return f"TruncatedRing({self.domain}[{', '.join(self.names)}]/({vs}))"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def orders(self) -> tuple[int, ...]:
        return self._orders

    def top_degree(self) -> int:
        return sum(d * n for d, n in zip(self._degrees, self._orders))

    def degree_of(self, exps: tuple[int, ...]) -> int:
        return sum(d * e for d, e in zip(self._degrees, exps))

    def in_bounds(self, exps: tuple[int, ...]) -> bool:
        return len(exps) == self.nvars and all(
            0 <= e <= n for e, n in zip(exps, self._orders)
        )

    def normalize(self, c):
        return _normalize(self.domain, c)

    def element(self, terms: Mapping[tuple, object] | Iterable = ()) -> "RingElement":
        """Build an element from ``{exponents: coefficient}`` or pairs.

        Monomials beyond the truncation are dropped.
        """
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[tuple[int, ...], object] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent tuple {exps} has wrong arity")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if any(e > n for e, n in zip(exps, self._orders)):
                continue
            c = self.normalize(out.get(exps, 0) + self.normalize(c))
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        return RingElement(self, out)

    def scalar(self, c) -> "RingElement":
        return self.element({(0,) * self.nvars: c})

    def one(self) -> "RingElement":
        return self.scalar(1)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def gen(self, name: str) -> "RingElement":
        i = self.names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.element({exps: 1})

    def gens(self) -> tuple["RingElement", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: tuple[int, ...]) -> "RingElement":
        return self.element({tuple(exps): 1})

    def with_domain(self, domain: str) -> "TruncatedRing":
        return TruncatedRing(self.variables, domain)

    def random_element(self, rng: random.Random, density: float = 0.5,
                       bound: int = 5, constant=None) -> "RingElement":
        """Random element for property tests; ``constant`` fixes the unit part."""
        import itertools

        terms = {}
        for exps in itertools.product(*(range(n + 1) for n in self._orders)):
            if rng.random() < density:
                terms[exps] = rng.randint(-bound, bound)
        if constant is not None:
            terms[(0,) * self.nvars] = constant
        return self.element(terms)


def tensor(left: TruncatedRing, right: TruncatedRing) -> tuple[TruncatedRing, dict[str, str]]:
    """Tensor product with disjoint variables.

    Clashing names on the right get a numeric suffix; returns the new ring and
    the renaming applied to the right-hand variables.
    """
    if left.domain != right.domain:
        raise RingMismatch(f"cannot tensor {left.domain} with {right.domain}")
    taken = set(left.names)
    renamed: dict[str, str] = {}
    vs = list(left.variables)
    for v in right.variables:
        name = v.name
        k = 2
        while name in taken:
            name = f"{v.name}{k}"
            k += 1
        taken.add(name)
        renamed[v.name] = name
        vs.append(Variable(name, v.degree, v.order))
    return TruncatedRing(vs, left.domain), renamed


class RingElement:
    """Immutable element of a :class:`TruncatedRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TruncatedRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ring_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {k: self.ring.normalize(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ring_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return ring_invert(self) ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.format()

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, key=lambda e: (self.ring.degree_of(e), tuple(-x for x in e))):
            c = self.terms[exps]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, exps) if e
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.normalize(0))

    def homogeneous_part(self, degree: int) -> "RingElement":
        """Component of the given cohomological degree."""
        deg = self.ring.degree_of
        return RingElement(self.ring, {k: c for k, c in self.terms.items() if deg(k) == degree})

    def to_integer(self) -> "RingElement":
        """Convert a rational element to an integer one, failing on any denominator."""
        if self.ring.domain == "Z":
            return self
        if self.ring.domain == "F2":
            raise IntegralityError("cannot lift an F2 element to Z")
        ring = self.ring.with_domain("Z")
        out = {}
        for k, c in self.terms.items():
            if c.denominator != 1:
                raise IntegralityError(f"coefficient {c} of {k} is not an integer")
            out[k] = c.numerator
        return RingElement(ring, out)

    def to_domain(self, domain: str) -> "RingElement":
        return self.ring.with_domain(domain).element(self.terms)

    def reduce_mod2(self) -> "RingElement":
        return self.to_domain("F2")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    norm = a.ring.normalize
    out = dict(a.terms)
    for k, c in b.terms.items():
        s = norm(out.get(k, 0) + c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return RingElement(a.ring, out)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    orders = a.ring.orders
    acc: dict[tuple[int, ...], object] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            if any(e > n for e, n in zip(k, orders)):
                continue
            acc[k] = acc.get(k, 0) + ca * cb
    norm = a.ring.normalize
    out = {}
    for k, c in acc.items():
        c = norm(c)
        if c:
            out[k] = c
    return RingElement(a.ring, out)


def ring_invert(u: RingElement) -> RingElement:
    """Multiplicative inverse of an element whose constant term is a unit.

    Writes ``u = c0 * (1 + n)`` with ``n`` nilpotent and sums the finite
    geometric series ``1 - n + n^2 - ...``.
    """
    ring = u.ring
    c0 = u.constant_term()
    if ring.domain == "Z" and c0 not in (1, -1):
        raise NotAUnit(f"constant term {c0} is not a unit of Z")
    if not c0:
        raise NotAUnit("constant term is zero")
    inv0 = Fraction(1, 1) / Fraction(c0) if ring.domain == "Q" else c0  # c0 = +-1 or 1 in F2
    nil = u * inv0 - 1
    result = ring.one()
    power = ring.one()
    while True:
        power = power * (-nil)
        if not power:
            break
        result = result + power
    return result * inv0


def coefficient(e: RingElement, exponents: tuple[int, ...]):
    exps = tuple(exponents)
    if len(exps) != e.ring.nvars:
        raise ValueError(f"arity mismatch: {exps} for {e.ring.nvars} variables")
    return e.terms.get(exps, e.ring.normalize(0))
