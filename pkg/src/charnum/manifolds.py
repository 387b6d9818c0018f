"""Generator manifolds as (ring, total class, integration functional) triples.

A model stores the cohomology ring it lives in, the total Chern class (complex
kind) or total Stiefel-Whitney class (real kind), and the integration
functional ``e -> coefficient of top in e * multiplier``.  Hypersurfaces and
complete intersections in products of projective spaces are modeled on the
ambient ring: restriction does not change any characteristic-number integral,
so only the multiplier (the class of the subvariety) has to be carried.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from charnum.combinatorics import Partition, partition_index, partitions
from charnum.ringcalc import RingElement, TruncatedRing, ring_invert, tensor

COMPLEX = "complex"
REAL = "real"


class DimensionMismatch(ValueError):
    pass


class KindMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CharVector:
    """Characteristic numbers of one class, one entry per partition of ``weight``."""

    weight: int
    domain: str  # "Z" for Chern numbers, "F2" for Stiefel-Whitney numbers
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(partitions(self.weight)):
            raise ValueError(
                f"weight {self.weight} needs {len(partitions(self.weight))} values, "
                f"got {len(self.values)}"
            )
        if self.domain == "F2":
            object.__setattr__(self, "values", tuple(int(v) % 2 for v in self.values))
        else:
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __getitem__(self, key: Partition | int) -> int:
        if isinstance(key, Partition):
            return self.values[partition_index(self.weight)[key]]
        return self.values[key]

    def __len__(self):
        return len(self.values)

    def mod2(self) -> "CharVector":
        return CharVector(self.weight, "F2", self.values)

    def labels(self) -> list[str]:
        symbol = "c" if self.domain == "Z" else "w"
        return [p.label(symbol) for p in partitions(self.weight)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels(), self.values))


@dataclass(frozen=True)
class ManifoldModel:
    kind: str
    dim: int
    ring: TruncatedRing
    total_class: RingElement
    multiplier: RingElement
    top: tuple[int, ...]
    label: str
    factors: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.total_class.constant_term() != 1:
            raise ValueError(f"total class of {self.label} must have constant term 1")
        if not self.factors:
            object.__setattr__(self, "factors", (self.label,) if self.dim else ())

    @property
    def class_degree(self) -> int:
        """Cohomological degree of the r = 1 characteristic class."""
        return 2 if self.kind == COMPLEX else 1

    def integrate(self, e: RingElement) -> int:
        prod = e * self.multiplier
        return int(prod.terms.get(self.top, 0))

    def characteristic_class(self, r: int) -> RingElement:
        """``c_r`` (complex kind) or ``w_r`` (real kind)."""
        return self.total_class.homogeneous_part(self.class_degree * r)

    def char_number(self, partition: Partition) -> int:
        if partition.weight != self.dim:
            raise DimensionMismatch(f"{partition} has weight {partition.weight}, not {self.dim}")
        e = self.ring.one()
        for r, k in enumerate(partition.exponents, start=1):
            if k:
                e = e * self.characteristic_class(r) ** k
        return self.integrate(e)

    def __str__(self):
        return self.label


def _domain(kind: str) -> str:
    return "Z" if kind == COMPLEX else "F2"


def point(kind: str = COMPLEX) -> ManifoldModel:
    ring = TruncatedRing([], _domain(kind))
    return ManifoldModel(kind, 0, ring, ring.one(), ring.one(), (), "pt")


def projective_complete_intersection(dims: Sequence[int], multidegrees: Sequence[Sequence[int]] = (),
                                     label: str | None = None,
                                     names: Sequence[str] | None = None) -> ManifoldModel:
    """Complete intersection of divisors in ``CP^{n_1} x ... x CP^{n_k}``.

    Each multidegree ``(a_1, ..., a_k)`` contributes the divisor class
    ``D = sum a_i h_i``; the total class is ``prod (1+h_i)^(n_i+1) / prod (1+D)``
    and integration is twisted by ``prod D``.
    """
    dims = [int(n) for n in dims]
    if any(n < 1 for n in dims):
        raise ValueError(f"projective factor dimensions must be >= 1, got {dims}")
    if names is None:
        names = ["x"] if len(dims) == 1 else [f"h{i + 1}" for i in range(len(dims))]
    ring = TruncatedRing([(nm, 2, n) for nm, n in zip(names, dims)], "Z")
    hs = ring.gens()
    total = ring.one()
    for h, n in zip(hs, dims):
        total = total * (1 + h) ** (n + 1)
    multiplier = ring.one()
    for degs in multidegrees:
        if len(degs) != len(dims):
            raise ValueError(f"multidegree {degs} does not match {len(dims)} factors")
        divisor = ring.zero()
        for a, h in zip(degs, hs):
            divisor = divisor + int(a) * h
        total = total * ring_invert(1 + divisor)
        multiplier = multiplier * divisor
    dim = sum(dims) - len(multidegrees)
    if dim < 0:
        raise ValueError("more divisors than ambient dimension")
    if label is None:
        amb = "x".join(f"CP{n}" for n in dims)
        label = f"CI{[list(d) for d in multidegrees]} in {amb}" if multidegrees else amb
    return ManifoldModel(COMPLEX, dim, ring, total, multiplier, tuple(dims), label)


def complex_projective(n: int) -> ManifoldModel:
    if n < 0:
        raise ValueError(f"complex_projective needs n >= 0, got {n}")
    if n == 0:
        return point(COMPLEX)
    return projective_complete_intersection([n], label=f"cp({n})")


def milnor_hypersurface(m: int, n: int) -> ManifoldModel:
    """Bidegree (1,1) hypersurface ``H_{m,n}`` in ``CP^m x CP^n``."""
    if m < 1 or n < 1:
        raise ValueError(f"milnor_hypersurface needs m, n >= 1, got ({m}, {n})")
    return projective_complete_intersection([m, n], [(1, 1)], label=f"h({m},{n})", names=("a", "b"))


def real_projective(n: int) -> ManifoldModel:
    if n < 0:
        raise ValueError(f"real_projective needs n >= 0, got {n}")
    if n == 0:
        return point(REAL)
    ring = TruncatedRing([("a", 1, n)], "F2")
    a = ring.gen("a")
    return ManifoldModel(REAL, n, ring, (1 + a) ** (n + 1), ring.one(), (n,), f"rp({n})")


def dold(m: int, n: int) -> ManifoldModel:
    """Dold manifold ``P(m, n)`` of real dimension ``m + 2n``."""
    if m < 1 or n < 1:
        raise ValueError(f"dold needs m, n >= 1, got ({m}, {n})")
    ring = TruncatedRing([("c", 1, m), ("d", 2, n)], "F2")
    c, d = ring.gens()
    total = (1 + c) ** m * (1 + c + d) ** (n + 1)
    return ManifoldModel(REAL, m + 2 * n, ring, total, ring.one(), (m, n), f"dold({m},{n})")


def _embed(e: RingElement, ring: TruncatedRing, offset: int) -> RingElement:
    pad_after = ring.nvars - offset - e.ring.nvars
    return ring.element(
        {(0,) * offset + k + (0,) * pad_after: c for k, c in e.terms.items()}
    )


def product(A: ManifoldModel, B: ManifoldModel) -> ManifoldModel:
    """Cartesian product: tensor ring, product total class, product functional."""
    if A.kind != B.kind:
        raise KindMismatch(f"cannot multiply {A.kind} {A.label} with {B.kind} {B.label}")
    if A.dim == 0:
        return B
    if B.dim == 0:
        return A
    ring, _ = tensor(A.ring, B.ring)
    off = A.ring.nvars
    total = _embed(A.total_class, ring, 0) * _embed(B.total_class, ring, off)
    mult = _embed(A.multiplier, ring, 0) * _embed(B.multiplier, ring, off)
    return ManifoldModel(
        A.kind, A.dim + B.dim, ring, total, mult, A.top + B.top,
        f"{A.label}*{B.label}", A.factors + B.factors,
    )


def char_vector(M: ManifoldModel, d: int | None = None) -> CharVector:
    """All characteristic numbers of ``M`` in canonical partition order."""
    if d is None:
        d = M.dim
    if d != M.dim:
        raise DimensionMismatch(f"{M.label} has dimension {M.dim}, asked for weight {d}")
    classes = [M.ring.one()] + [M.characteristic_class(r) for r in range(1, d + 1)]
    powers: dict[tuple[int, int], RingElement] = {}

    def power(r, k):
        if (r, k) not in powers:
            powers[(r, k)] = classes[r] ** k
        return powers[(r, k)]

    values = []
    for p in partitions(d):
        e = M.ring.one()
        for r, k in enumerate(p.exponents, start=1):
            if k:
                e = e * power(r, k)
        values.append(M.integrate(e))
    return CharVector(d, _domain(M.kind), tuple(values))


def segre_class(M: ManifoldModel) -> RingElement:
    if M.kind != COMPLEX:
        raise KindMismatch("Segre classes are defined here for complex models only")
    return ring_invert(M.total_class)


def segre_number(M: ManifoldModel) -> int:
    """Integral of the top Segre class, ``s = c^{-1}`` (so ``s_1 = -c_1``)."""
    if M.kind != COMPLEX:
        raise KindMismatch(f"{M.label} is not complex")
    if M.dim < 1:
        raise DimensionMismatch("segre_number needs dimension >= 1")
    return M.integrate(segre_class(M).homogeneous_part(2 * M.dim))


@lru_cache(maxsize=None)
def _segre_universal(d: int) -> tuple[dict[Partition, int], ...]:
    # s_0 = 1, s_n = -sum_{r=1..n} c_r s_{n-r} in Z[c_1, c_2, ...]
    series: list[dict[Partition, int]] = [{Partition(()): 1}]
    for n in range(1, d + 1):
        acc: dict[Partition, int] = {}
        for r in range(1, n + 1):
            for p, coef in series[n - r].items():
                exps = list(p.padded(r))
                exps[r - 1] += 1
                q = Partition(tuple(exps))
                acc[q] = acc.get(q, 0) - coef
        series.append({p: c for p, c in acc.items() if c})
    return tuple(series)


def segre_polynomial(d: int) -> dict[Partition, int]:
    """``s_d`` as an integer polynomial in ``c_1..c_d``, keyed by partition in canonical order."""
    if d < 1:
        raise ValueError(f"segre_polynomial needs d >= 1, got {d}")
    s = _segre_universal(d)[d]
    return {p: s[p] for p in partitions(d) if s.get(p)}


def format_polynomial(coeffs: dict[Partition, int], symbol: str = "c") -> str:
    pieces = []
    for p, c in coeffs.items():
        if not c:
            continue
        mono = p.label(symbol)
        mag = abs(c)
        body = mono if mag == 1 else f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def evaluate_linear(coeffs: dict[Partition, int], v: CharVector) -> int:
    """Apply a linear combination of characteristic numbers to a vector."""
    idx = partition_index(v.weight)
    return sum(c * v.values[idx[p]] for p, c in coeffs.items())


@lru_cache(maxsize=None)
def coproduct_table(x: int, y: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Split of every weight-(x+y) Chern monomial across a product.

    Entry ``I`` lists ``(j, k, m)`` meaning ``c_I(X x Y)`` contains
    ``m * c_J(X) * c_K(Y)`` with ``J = partitions(x)[j]``, ``K = partitions(y)[k]``.
    Follows from ``c_r(X x Y) = sum_i c_i(X) c_{r-i}(Y)``.
    """
    n = x + y
    jx, ky = partition_index(x), partition_index(y)

    def wt(exps):
        return sum(r * e for r, e in enumerate(exps, start=1))

    table = []
    for part in partitions(n):
        poly: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((0,) * x, (0,) * y): 1}
        for r, k in enumerate(part.exponents, start=1):
            for _ in range(k):
                nxt: dict = {}
                for (u, v), coef in poly.items():
                    wu, wv = wt(u), wt(v)
                    for i in range(0, r + 1):
                        j = r - i
                        if wu + i > x or wv + j > y:
                            continue
                        u2 = list(u)
                        v2 = list(v)
                        if i:
                            u2[i - 1] += 1
                        if j:
                            v2[j - 1] += 1
                        key = (tuple(u2), tuple(v2))
                        nxt[key] = nxt.get(key, 0) + coef
                poly = nxt
        row = []
        for (u, v), coef in poly.items():
            if wt(u) == x and wt(v) == y and coef:
                row.append((jx[Partition(u)], ky[Partition(v)], coef))
        table.append(tuple(sorted(row)))
    return tuple(table)


def kunneth_char_vector(X: CharVector, Y: CharVector) -> CharVector:
    """Characteristic numbers of a product from those of its factors."""
    if X.domain != Y.domain:
        raise KindMismatch("cannot combine Chern and Stiefel-Whitney vectors")
    table = coproduct_table(X.weight, Y.weight)
    values = tuple(
        sum(m * X.values[j] * Y.values[k] for j, k, m in row) for row in table
    )
    return CharVector(X.weight + Y.weight, X.domain, values)


_FACTOR = re.compile(r"^\s*(cp|h|rp|dold|pt)\s*(?:\(\s*([0-9,\s]*)\))?\s*$", re.IGNORECASE)

_CONSTRUCTORS = {
    "cp": (complex_projective, 1),
    "h": (milnor_hypersurface, 2),
    "rp": (real_projective, 1),
    "dold": (dold, 2),
}


def parse_factor(text: str) -> ManifoldModel:
    m = _FACTOR.match(text)
    if not m:
        raise ValueError(f"cannot parse manifold factor {text!r}")
    name = m.group(1).lower()
    if name == "pt":
        return point(COMPLEX)
    ctor, arity = _CONSTRUCTORS[name]
    args = [int(a) for a in (m.group(2) or "").split(",") if a.strip()]
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} argument(s), got {text!r}")
    return ctor(*args)


def parse_manifold(spec: str) -> ManifoldModel:
    """Parse ``cp(N)``, ``h(M,N)``, ``rp(N)``, ``dold(M,N)`` and ``*``-products."""
    pieces = [p for p in spec.split("*")]
    if not spec.strip() or any(not p.strip() for p in pieces):
        raise ValueError(f"empty factor in manifold spec {spec!r}")
    models = [parse_factor(p) for p in pieces]
    out = models[0]
    for m in models[1:]:
        if m.kind != out.kind and m.dim == 0:
            continue
        if out.dim == 0 and out.kind != m.kind:
            out = m
            continue
        out = product(out, m)
    return out
