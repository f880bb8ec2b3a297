"""Chern numbers of smooth omnioriented models by torus fixed-point localization.

Fixed points of the torus action correspond to vertices. At a vertex v the
tangent weights are the basis dual to the labels of the facets through v,
and the Chern number for a partition w is

    sum over v of  sign(v) * prod_i e_{w_i}(weights at v) / prod(weights at v)

as a rational function; evaluating it at a generic point gives an integer.
We evaluate at two different points and require agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import lattice
from .charmodel import CharacteristicModel, OmniorientedModel, is_smooth, vertex_sign
from .errors import InvariantViolation, ModelError
from .lattice import IntVector

Partition = tuple[int, ...]


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of n as non-increasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _as_omni(m: CharacteristicModel | OmniorientedModel) -> OmniorientedModel:
    return m if isinstance(m, OmniorientedModel) else OmniorientedModel(m)


def tangent_weights(m: CharacteristicModel | OmniorientedModel, v: Iterable[str]) -> list[IntVector]:
    """Weights at vertex v: the dual basis to the (signed) labels, in canonical facet order."""
    m = _as_omni(m)
    v = m.polytope.vertex(v)
    cols = [m.effective_label(f) for f in m.polytope.ordered(v)]
    d = lattice.det(cols)
    if abs(d) != 1:
        raise ModelError(f"vertex is not smooth (det {d})", m.polytope.ordered(v))
    # Rows of the inverse pair with the columns to the identity.
    return [tuple(int(x) for x in row) for row in lattice.inverse(cols)]


@dataclass
class WeightSystem:
    vertices: list[tuple[str, ...]]
    weights: list[list[IntVector]]
    signs: list[int]


def weight_system(m: CharacteristicModel | OmniorientedModel) -> WeightSystem:
    m = _as_omni(m)
    p = m.polytope
    return WeightSystem(
        vertices=[p.ordered(v) for v in p.vertices],
        weights=[tangent_weights(m, v) for v in p.vertices],
        signs=[vertex_sign(m, v) for v in p.vertices],
    )


def _primes() -> Iterator[int]:
    found: list[int] = []
    k = 2
    while True:
        if all(k % q for q in found if q * q <= k):
            found.append(k)
            yield k
        k += 1


def _elementary(values: Sequence[Fraction], k: int) -> Fraction:
    e = [Fraction(1)] + [Fraction(0)] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * x
    return e[k]


def generic_points(ws: WeightSystem, n: int, count: int = 2) -> list[tuple[int, ...]]:
    """Points at which no weight form vanishes, taken from consecutive primes.

    Point i uses the next n primes, with alternating signs so forms like
    (1, -1) are not systematically small. A degenerate point is skipped.
    """
    primes = _primes()
    pts: list[tuple[int, ...]] = []
    while len(pts) < count:
        t = tuple(next(primes) * (-1) ** i for i in range(n))
        if all(sum(a * b for a, b in zip(w, t)) != 0 for ws_v in ws.weights for w in ws_v):
            pts.append(t)
    return pts


def _evaluate(ws: WeightSystem, omega: Partition, t: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for weights, sign in zip(ws.weights, ws.signs):
        xs = [Fraction(sum(a * b for a, b in zip(w, t))) for w in weights]
        num = Fraction(1)
        for part in omega:
            num *= _elementary(xs, part)
        den = Fraction(1)
        for x in xs:
            den *= x
        total += sign * num / den
    return total


def _check_partition(omega: Sequence[int], n: int) -> Partition:
    omega = tuple(sorted(omega, reverse=True))
    if any(p < 1 for p in omega) or sum(omega) != n:
        raise ModelError(f"{list(omega)} is not a partition of {n}")
    return omega


def chern_number(m: CharacteristicModel | OmniorientedModel, omega: Sequence[int],
                 points: Sequence[Sequence[int]] | None = None) -> int:
    """Chern number c_omega of a smooth omnioriented model."""
    m = _as_omni(m)
    if not is_smooth(m.model):
        raise ModelError("Chern numbers are only computed for smooth models")
    omega = _check_partition(omega, m.dim)
    ws = weight_system(m)
    pts = points if points is not None else generic_points(ws, m.dim)
    values = {_evaluate(ws, omega, t) for t in pts}
    if len(values) != 1:
        raise InvariantViolation(f"localization depends on the evaluation point: {values}")
    (value,) = values
    if value.denominator != 1:
        raise InvariantViolation(f"localization produced a non-integer {value}")
    return int(value)


def chern_numbers(m: CharacteristicModel | OmniorientedModel) -> dict[Partition, int]:
    m = _as_omni(m)
    ws = weight_system(m) if is_smooth(m.model) else None
    if ws is None:
        raise ModelError("Chern numbers are only computed for smooth models")
    pts = generic_points(ws, m.dim)
    return {omega: chern_number(m, omega, pts) for omega in partitions(m.dim)}


@dataclass
class RelationVerification:
    status: str  # "pass" | "fail" | "unverifiable"
    sums: dict[Partition, int] = field(default_factory=dict)
    components: list[dict[Partition, int] | None] = field(default_factory=list)
    unverifiable: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        def fmt(d):
            return None if d is None else {" ".join(map(str, k)): v for k, v in d.items()}
        return {
            "status": self.status,
            "sums": fmt(self.sums),
            "component_chern_numbers": [fmt(c) for c in self.components],
            "unverifiable_components": self.unverifiable,
        }


def verify_relation(relation) -> RelationVerification:
    """Check that every signed Chern number of a relation vanishes.

    Components that are not smooth cannot be checked; if any is present the
    status is "unverifiable" and only the smooth components are reported.
    """
    comps = relation.components
    out = RelationVerification(status="pass")
    dims = {c.model.dim for c in comps}
    if len(dims) > 1:
        raise ModelError(f"relation mixes dimensions {sorted(dims)}")
    for i, c in enumerate(comps):
        if is_smooth(c.model.model):
            out.components.append(chern_numbers(c.model))
        else:
            out.components.append(None)
            out.unverifiable.append(i)
    if out.unverifiable:
        out.status = "unverifiable"
        return out
    n = dims.pop() if dims else 0
    for omega in partitions(n):
        out.sums[omega] = sum(c.sign * nums[omega] for c, nums in zip(comps, out.components))
    if any(out.sums.values()):
        out.status = "fail"
    return out
