"""Exact integer linear algebra on small lattices.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``; vectors are tuples of ints.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import LatticeError

IntVector = tuple[int, ...]


def as_vector(v: Iterable[int]) -> IntVector:
    out = tuple(v)
    for x in out:
        if isinstance(x, bool) or not isinstance(x, int):
            raise LatticeError(f"non-integer entry {x!r} in vector {out!r}")
    return out


def _common_length(vectors: Sequence[Sequence[int]], n: int | None = None) -> int:
    lengths = {len(v) for v in vectors}
    if n is not None:
        lengths.add(n)
    if len(lengths) > 1:
        raise LatticeError(f"vectors of mixed lengths {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[IntVector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Returns the nonzero rows only. Pivots are positive, entries above a pivot
    are reduced into ``[0, pivot)``. Two generating sets span the same lattice
    iff their Hermite rows coincide.
    """
    ncols = _common_length(vectors)
    rows = [list(v) for v in vectors if any(v)]
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col] != 0]
        if not live:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        # Euclid on column `col` until a single row survives with a nonzero entry.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for i, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[i] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        rows = rest
        col += 1
    return [tuple(r) for r in out]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of a set of integer vectors (over Q, equivalently over Z)."""
    return len(hermite_rows([as_vector(v) for v in vectors]))


def is_independent(vectors: Sequence[Sequence[int]]) -> bool:
    return rank(vectors) == len(vectors)


def det(columns: Sequence[Sequence[int]]) -> int:
    """Exact determinant of the square matrix with the given columns.

    Uses Bareiss fraction-free elimination, so intermediate values stay
    integral.
    """
    n = len(columns)
    if any(len(c) != n for c in columns):
        raise LatticeError("determinant needs a square matrix")
    if n == 0:
        return 1
    # Transposing does not change the determinant; work on columns as rows.
    a = [list(as_vector(c)) for c in columns]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(columns: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Inverse of the square matrix with the given columns, as rows of Fractions."""
    n = len(columns)
    # m[i][j] = columns[j][i]
    m = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise LatticeError("matrix is singular")
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the gcd of the entries is 1 (the zero vector is not primitive)."""
    return math.gcd(*as_vector(v)) == 1


class Sublattice:
    """Subgroup of Z^n generated by finitely many vectors.

    The generators are kept as given; ``basis`` is the Hermite normal form,
    which is canonical for the subgroup.
    """

    __slots__ = ("generators", "ambient_rank", "basis")

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: int):
        gens = tuple(as_vector(g) for g in generators)
        if ambient_rank < 0:
            raise LatticeError("ambient rank must be nonnegative")
        for g in gens:
            if len(g) != ambient_rank:
                raise LatticeError(f"generator {g} does not lie in Z^{ambient_rank}")
        self.generators = gens
        self.ambient_rank = ambient_rank
        self.basis = tuple(hermite_rows(gens))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.basis))

    def __repr__(self) -> str:
        return f"Sublattice({list(self.generators)}, ambient_rank={self.ambient_rank})"

    def _check(self, v: Sequence[int]) -> IntVector:
        v = as_vector(v)
        if len(v) != self.ambient_rank:
            raise LatticeError(f"vector {v} does not lie in Z^{self.ambient_rank}")
        return v

    def contains(self, v: Sequence[int]) -> bool:
        """Integral membership: v is an integer combination of the generators."""
        rest = list(self._check(v))
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if x)
            if rest[p] % row[p]:
                return False
            q = rest[p] // row[p]
            rest = [a - q * b for a, b in zip(rest, row)]
        return not any(rest)

    def spans(self, v: Sequence[int]) -> bool:
        """Rational membership: v lies in the Q-span of the generators."""
        v = self._check(v)
        return len(hermite_rows(list(self.basis) + [v])) == self.rank


def in_sublattice(v: Sequence[int], lattice: Sublattice) -> bool:
    return lattice.contains(v)


def in_rational_span(v: Sequence[int], lattice: Sublattice) -> bool:
    return lattice.spans(v)


def shell(n: int, radius: int) -> Iterable[IntVector]:
    """Vectors of Z^n with max-norm exactly ``radius``, in lexicographic order."""
    rng = range(-radius, radius + 1)
    for v in itertools.product(rng, repeat=n):
        if max(map(abs, v)) == radius:
            yield v


def _first_avoiding(chunk: list[IntVector], spans: Sequence[Sublattice]) -> IntVector | None:
    for v in chunk:
        if is_primitive(v) and not any(L.spans(v) for L in spans):
            return v
    return None


def find_avoiding_vector(
    spans: Sequence[Sublattice],
    n: int,
    workers: int = 1,
    max_radius: int | None = None,
) -> IntVector:
    """Smallest primitive vector of Z^n outside the rational span of every input.

    Candidates are ordered by max-norm, then lexicographically, so the answer
    is deterministic. With ``workers > 1`` each shell is split into chunks
    checked concurrently; the earliest chunk with a hit wins, so the result
    does not depend on the worker count.

    Raises:
        LatticeError: if a span has full rank n (nothing can avoid it) or, when
            ``max_radius`` is given, no candidate exists within it.
    """
    if n < 1:
        raise LatticeError("ambient rank must be positive")
    for L in spans:
        if L.ambient_rank != n:
            raise LatticeError(f"span {L!r} does not live in Z^{n}")
        if L.rank >= n:
            raise LatticeError(f"span {L!r} has full rank {n}; no vector avoids it")
    # Z^n is not a finite union of proper subspaces, and dividing an avoiding
    # vector by its gcd keeps it avoiding, so the unbounded search terminates.
    radii = itertools.count(1) if max_radius is None else range(1, max_radius + 1)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for radius in radii:
            cands = list(shell(n, radius))
            if pool is None:
                hit = _first_avoiding(cands, spans)
            else:
                size = max(1, -(-len(cands) // (4 * workers)))
                chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
                hit = next((h for h in pool.map(_first_avoiding, chunks,
                                                itertools.repeat(spans)) if h is not None),
                           None)
            if hit is not None:
                return hit
    finally:
        if pool is not None:
            pool.shutdown()
    raise LatticeError(f"no avoiding vector with max-norm <= {max_radius}")
