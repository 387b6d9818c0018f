"""Integer lattices in Hermite normal form and F2 row spaces.

Everything is exact: integer rows are plain Python ints, F2 rows are int
bitsets (column ``j`` is bit ``j``).
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence


class RaggedInput(ValueError):
    pass


def _rows(generators: Iterable[Sequence[int]], rank: int | None) -> tuple[list[tuple[int, ...]], int]:
    rows = [tuple(int(x) for x in (g.values if hasattr(g, "values") else g)) for g in generators]
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        raise RaggedInput(f"generators of unequal lengths {sorted(lengths)}")
    if rank is None:
        if not rows:
            raise RaggedInput("ambient rank is required when there are no generators")
        rank = lengths.pop()
    elif rows and lengths.pop() != rank:
        raise RaggedInput(f"generators do not have length {rank}")
    return rows, rank


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class IntegerLattice:
    """Subgroup of ``Z^n`` spanned by the given generators.

    >>> L = IntegerLattice([(9, 3), (8, 4)])
    >>> L.basis
    ((1, 11), (0, 12))
    >>> L.index()
    12
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), rank: int | None = None):
        self.generators, self.rank = _rows(generators, rank)

    @cached_property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        """Row Hermite normal form: echelon, positive pivots, entries above pivots in ``[0, pivot)``."""
        n = self.rank
        by_pivot: dict[int, list[int]] = {}
        for g in self.generators:
            v = list(g)
            for col in range(n):
                if v[col] == 0:
                    continue
                b = by_pivot.get(col)
                if b is None:
                    if v[col] < 0:
                        v = [-x for x in v]
                    by_pivot[col] = v
                    break
                g_, s, t = xgcd(b[col], v[col])
                bq, vq = b[col] // g_, v[col] // g_
                new_b = [s * x + t * y for x, y in zip(b, v)]
                v = [vq * x - bq * y for x, y in zip(b, v)]
                by_pivot[col] = new_b
                # keep the tail small
                for c2 in range(col + 1, n):
                    if c2 in by_pivot and v[c2]:
                        q = v[c2] // by_pivot[c2][c2]
                        if q:
                            v = [x - q * y for x, y in zip(v, by_pivot[c2])]
        cols = sorted(by_pivot)
        rows = [by_pivot[c] for c in cols]
        # left to right: reducing at pivot i only disturbs columns beyond it
        for i in range(len(rows)):
            p = cols[i]
            for k in range(i):
                q = rows[k][p] // rows[i][p]
                if q:
                    rows[k] = [x - q * y for x, y in zip(rows[k], rows[i])]
        return tuple(tuple(r) for r in rows)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @property
    def dimension(self) -> int:
        """Rank of the lattice as an abelian group."""
        return len(self.basis)

    def _reduce(self, v: Sequence[int]) -> tuple[list[int], list[int]]:
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} in a rank-{self.rank} lattice")
        v = [int(x) for x in v]
        coords = []
        for row, p in zip(self.basis, self.pivots):
            q = v[p] // row[p]
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return v, coords

    def member(self, v: Sequence[int]) -> bool:
        rem, _ = self._reduce(v)
        return not any(rem)

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Coefficients of ``v`` on the HNF basis; raises if ``v`` is not a member."""
        rem, coords = self._reduce(v)
        if any(rem):
            raise ValueError(f"{tuple(v)} is not in the lattice")
        return coords

    def index(self) -> int | float:
        """Index in ``Z^rank``; ``math.inf`` unless the lattice has full rank."""
        if self.dimension < self.rank:
            return math.inf
        return math.prod(r[p] for r, p in zip(self.basis, self.pivots))

    def __contains__(self, v) -> bool:
        return self.member(v)

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and (self.rank, self.basis) == (other.rank, other.basis)

    def __hash__(self):
        return hash((self.rank, self.basis))

    def __repr__(self):
        return f"IntegerLattice(rank={self.rank}, basis={self.basis})"


def hnf(generators: Iterable[Sequence[int]], rank: int | None = None) -> IntegerLattice:
    lat = IntegerLattice(generators, rank)
    lat.basis  # noqa: B018 - force the computation
    return lat


def member(L: IntegerLattice, v: Sequence[int]) -> bool:
    return L.member(v)


def index_in(L: IntegerLattice, sub: IntegerLattice) -> int | float:
    """Index of ``sub`` in ``L`` (``math.inf`` when ``sub`` has smaller rank)."""
    if L.rank != sub.rank:
        raise ValueError(f"ambient ranks differ: {L.rank} vs {sub.rank}")
    coords = []
    for row in sub.basis:
        if not L.member(row):
            raise ValueError(f"{row} is not in the enclosing lattice")
        coords.append(L.coordinates(row))
    if sub.dimension < L.dimension:
        return math.inf
    return abs(int_det(coords))


def functional_gcd(values: Iterable[int]) -> int:
    """gcd of a functional's values on generators, i.e. the generator of its image."""
    return math.gcd(*(int(v) for v in values)) if values else 0


def _bits(v: Sequence[int]) -> int:
    out = 0
    for j, x in enumerate(v):
        if int(x) % 2:
            out |= 1 << j
    return out


def _unbits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> j) & 1 for j in range(n))


class F2Space:
    """Row space over F2 kept in reduced row-echelon form."""

    def __init__(self, generators: Iterable[Sequence[int]] = (), rank: int | None = None):
        rows, self.rank = _rows(generators, rank)
        self.generators = [tuple(x % 2 for x in r) for r in rows]
        self._pivot_rows: dict[int, int] = {}
        for r in self.generators:
            self._insert(_bits(r))

    def _reduce_bits(self, x: int) -> int:
        for p, row in self._pivot_rows.items():
            if (x >> p) & 1:
                x ^= row
        return x

    def _insert(self, x: int) -> bool:
        x = self._reduce_bits(x)
        if not x:
            return False
        p = (x & -x).bit_length() - 1
        for q, row in list(self._pivot_rows.items()):
            if (row >> p) & 1:
                self._pivot_rows[q] = row ^ x
        self._pivot_rows[p] = x
        return True

    @property
    def dimension(self) -> int:
        return len(self._pivot_rows)

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_unbits(self._pivot_rows[p], self.rank) for p in sorted(self._pivot_rows))

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} in an F2 space of rank {self.rank}")
        return self._reduce_bits(_bits(v)) == 0

    __contains__ = contains

    def span_equals(self, other: "F2Space") -> bool:
        return self.rank == other.rank and self.basis == other.basis


def f2_rank(rows: Iterable[Sequence[int]], ncols: int) -> int:
    return F2Space(rows, ncols).dimension


def f2_solve(rows: Sequence[Sequence[int]], target: Sequence[int],
             ncols: int | None = None) -> tuple[int, ...] | None:
    """Solve ``row_g . x == target_g (mod 2)`` for every row ``g``.

    Returns the lexicographically smallest solution (first coordinate most
    significant) or ``None`` when the system is inconsistent.
    """
    rows = [tuple(int(a) % 2 for a in r) for r in rows]
    if len(rows) != len(target):
        raise ValueError(f"{len(rows)} rows but {len(target)} target entries")
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty system")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise RaggedInput(f"rows must all have length {ncols}")
    aug_bit = 1 << ncols
    pivots: dict[int, int] = {}
    for r, t in zip(rows, target):
        x = _bits(r) | (aug_bit if int(t) % 2 else 0)
        for p, row in pivots.items():
            if (x >> p) & 1:
                x ^= row
        coeffs = x & (aug_bit - 1)
        if not coeffs:
            if x:
                return None
            continue
        p = (coeffs & -coeffs).bit_length() - 1
        for q, row in list(pivots.items()):
            if (row >> p) & 1:
                pivots[q] = row ^ x
        pivots[p] = x
    solution = 0
    for p, row in pivots.items():
        if row & aug_bit:
            solution |= 1 << p
    kernel = []
    for f in range(ncols):
        if f in pivots:
            continue
        k = 1 << f
        for p, row in pivots.items():
            if (row >> f) & 1:
                k |= 1 << p
        kernel.append(k)
    # reduced echelon form of the kernel w.r.t. the lowest set bit
    reduced: dict[int, int] = {}
    for k in kernel:
        for lead, kv in reduced.items():
            if (k >> lead) & 1:
                k ^= kv
        if not k:
            continue
        lead = (k & -k).bit_length() - 1
        for q, kv in list(reduced.items()):
            if (kv >> lead) & 1:
                reduced[q] = kv ^ k
        reduced[lead] = k
    for lead in sorted(reduced):
        if (solution >> lead) & 1:
            solution ^= reduced[lead]
    return _unbits(solution, ncols)
