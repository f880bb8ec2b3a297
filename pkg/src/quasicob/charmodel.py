"""Characteristic and isotropy models over combinatorial simple polytopes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import lattice
from .errors import InvalidPolytopeError, LatticeError, ModelError
from .lattice import IntVector
from .polytope import (ExceptionalMarking, MarkingReport, Polytope, Vertex, facet_polytope,
                       validate_marking)


def _parity(p: Polytope, ordering: Sequence[str]) -> int:
    """Sign of the permutation taking canonical facet order to ``ordering``."""
    idx = [p.index(f) for f in ordering]
    inversions = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return -1 if inversions % 2 else 1


# -- orientation ------------------------------------------------------------


@dataclass(frozen=True)
class OrientationDatum:
    """A global orientation of a polytope, recorded vertex by vertex.

    ``signs[i]`` is the sign of vertex ``polytope.vertices[i]`` when its facets
    are listed in canonical facet order. Any other ordering of the same facets
    carries that sign times the permutation parity.

    Across an edge the two endpoints share all facets but one; listing them
    in the same slots, with the odd facet out in the same position, gives
    opposite signs. That rule is what ``consistent`` checks.
    """

    polytope: Polytope
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.polytope.vertices) or any(s not in (1, -1) for s in self.signs):
            raise ModelError("orientation needs one sign in {+1, -1} per vertex")

    def sign(self, v: Iterable[str]) -> int:
        return self.signs[self.polytope.position(v)]

    def sign_of(self, ordering: Sequence[str]) -> int:
        return self.sign(ordering) * _parity(self.polytope, ordering)

    def reversed(self) -> OrientationDatum:
        return OrientationDatum(self.polytope, tuple(-s for s in self.signs))

    def restrict(self, facet: str) -> OrientationDatum:
        """Orientation induced on a facet: list that facet first, then the rest."""
        sub = facet_polytope(self.polytope, facet)
        return OrientationDatum(sub, tuple(self.sign_of((facet,) + sub.ordered(w))
                                           for w in sub.vertices))

    @staticmethod
    def _step(p: Polytope, v: Vertex, sign_v: int, u: Vertex) -> int:
        # Replace the facet that v has and u lacks, keeping its slot.
        order_v = p.ordered(v)
        (old,) = v - u
        (new,) = u - v
        order_u = tuple(new if f == old else f for f in order_v)
        return -sign_v * _parity(p, order_u)

    @classmethod
    def _propagate(cls, p: Polytope, start: Vertex, sign: int) -> OrientationDatum:
        got = {start: sign}
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for u in p.neighbors(v):
                s = cls._step(p, v, got[v], u)
                if u not in got:
                    got[u] = s
                    todo.append(u)
                elif got[u] != s:
                    raise InvalidPolytopeError(
                        "dual sphere is not orientable", (p.ordered(v), p.ordered(u)))
        return cls(p, tuple(got[v] for v in p.vertices))

    @classmethod
    def canonical(cls, p: Polytope) -> OrientationDatum:
        """The orientation giving the first vertex, in canonical order, sign +1."""
        return cls._propagate(p, p.vertices[0], 1)

    @classmethod
    def from_orderings(cls, p: Polytope, entries: Sequence[tuple[Sequence[str], int]]) -> OrientationDatum:
        """Build from explicit ``(facet ordering, sign)`` pairs.

        The first entry fixes the orientation; later ones must agree with it.
        """
        if not entries:
            return cls.canonical(p)
        order, sign = entries[0]
        try:
            v = p.vertex(order)
        except InvalidPolytopeError as exc:
            raise ModelError(f"orientation entry {list(order)} is not a vertex", list(order)) from exc
        out = cls._propagate(p, v, sign * _parity(p, order))
        for order, sign in entries[1:]:
            try:
                p.vertex(order)
            except InvalidPolytopeError as exc:
                raise ModelError(f"orientation entry {list(order)} is not a vertex",
                                 list(order)) from exc
            if out.sign_of(order) != sign:
                raise ModelError(f"orientation entry {list(order)} contradicts the others",
                                 list(order))
        return out

    def consistent(self) -> bool:
        p = self.polytope
        return all(self._step(p, v, s, u) == self.sign(u)
                   for v, s in zip(p.vertices, self.signs) for u in p.neighbors(v))

    def to_json(self) -> list[dict]:
        return [{"order": list(self.polytope.ordered(v)), "sign": s}
                for v, s in zip(self.polytope.vertices, self.signs)]


# -- reports ------------------------------------------------------------------


@dataclass
class Failure:
    kind: str
    witness: tuple[str, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness), "detail": self.detail}


@dataclass
class Report:
    ok: bool
    failures: list[Failure] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [f.to_json() for f in self.failures]}


# -- models ---------------------------------------------------------------------


def _label_tuple(facets: Sequence[str], labels, length: int, what: str) -> tuple[IntVector, ...]:
    if isinstance(labels, Mapping):
        extra = sorted(set(labels) - set(facets))
        if extra:
            raise ModelError(f"labels given for unknown {what} facets {extra}", tuple(extra))
        missing = [f for f in facets if f not in labels]
        if missing:
            raise ModelError(f"missing labels for facets {missing}", tuple(missing))
        labels = [labels[f] for f in facets]
    labels = tuple(labels)
    if len(labels) != len(facets):
        raise ModelError(f"expected {len(facets)} labels, got {len(labels)}")
    out = []
    for f, raw in zip(facets, labels):
        try:
            vec = lattice.as_vector(raw)
        except (LatticeError, TypeError) as exc:
            raise ModelError(f"label of {f!r} is not an integer vector: {raw!r}", (f,)) from exc
        if len(vec) != length:
            raise ModelError(f"label of {f!r} has length {len(vec)}, expected {length}", (f,))
        out.append(vec)
    return tuple(out)


@dataclass(frozen=True)
class CharacteristicModel:
    """A polytope P of dimension n with a vector of Z^n on every facet.

    ``labels`` may be passed as a mapping facet -> vector; it is stored as a
    tuple aligned with ``polytope.facets``. Construction only checks shapes;
    use ``validate_characteristic`` for the independence condition.
    """

    polytope: Polytope
    labels: tuple[IntVector, ...]

    def __post_init__(self):
        p = self.polytope
        object.__setattr__(self, "labels", _label_tuple(p.facets, self.labels, p.dim, "model"))

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def label(self, facet: str) -> IntVector:
        return self.labels[self.polytope.index(facet)]

    def label_map(self) -> dict[str, IntVector]:
        return dict(zip(self.polytope.facets, self.labels))

    def vertex_matrix(self, v: Iterable[str]) -> list[IntVector]:
        """Columns: the labels at ``v`` in canonical facet order."""
        return [self.label(f) for f in self.polytope.ordered(v)]

    def vertex_det(self, v: Iterable[str]) -> int:
        return lattice.det(self.vertex_matrix(v))

    def to_json(self) -> dict:
        return {"model": self.polytope.to_json(),
                "labels": {f: list(l) for f, l in self.label_map().items()}}


def vertex_determinants(m: CharacteristicModel) -> dict[Vertex, int]:
    return {v: m.vertex_det(v) for v in m.polytope.vertices}


def local_orders(m: CharacteristicModel) -> list[int]:
    """Sorted multiset of |det| over the vertices (orders of the local groups)."""
    return sorted(abs(d) for d in vertex_determinants(m).values())


def validate_characteristic(m: CharacteristicModel) -> Report:
    """Check that the labels at every vertex are linearly independent.

    Any face's facet set extends to a vertex, so vertices suffice.
    """
    report = Report(ok=True)
    for v in m.polytope.vertices:
        if m.vertex_det(v) == 0:
            report.failures.append(Failure("dependent labels", m.polytope.ordered(v),
                                           "labels at this vertex are linearly dependent"))
    report.ok = not report.failures
    return report


def is_smooth(m: CharacteristicModel) -> bool:
    return all(abs(m.vertex_det(v)) == 1 for v in m.polytope.vertices)


@dataclass(frozen=True)
class IsotropyModel:
    """An (n+1)-polytope with exceptional facets and vectors of Z^n on the others.

    ``orientation`` fixes the orientation of the polytope used to orient the
    boundary pieces; ``None`` means the canonical one.
    """

    polytope: Polytope
    marking: ExceptionalMarking
    labels: tuple[IntVector, ...]
    orientation: OrientationDatum | None = None

    def __post_init__(self):
        p = self.polytope
        if p.dim < 2:
            raise ModelError("an isotropy model needs a polytope of dimension >= 2")
        if not isinstance(self.marking, ExceptionalMarking):
            object.__setattr__(self, "marking", ExceptionalMarking(tuple(self.marking)))
        unknown = [f for f in self.marking.exceptional if f not in p.facets]
        if unknown:
            raise ModelError(f"unknown exceptional facets {unknown}", tuple(unknown))
        object.__setattr__(self, "labels",
                           _label_tuple(self.free_facets, self.labels, p.dim - 1, "non-exceptional"))
        if self.orientation is not None and self.orientation.polytope != p:
            raise ModelError("orientation belongs to a different polytope")

    @property
    def free_facets(self) -> tuple[str, ...]:
        """The non-exceptional facets, in canonical order."""
        return tuple(f for f in self.polytope.facets if f not in self.marking)

    @property
    def n(self) -> int:
        return self.polytope.dim - 1

    def label(self, facet: str) -> IntVector:
        return self.labels[self.free_facets.index(facet)]

    def label_map(self) -> dict[str, IntVector]:
        return dict(zip(self.free_facets, self.labels))

    def oriented(self) -> OrientationDatum:
        return self.orientation or OrientationDatum.canonical(self.polytope)

    def to_json(self) -> dict:
        doc = self.polytope.to_json()
        doc["exceptional"] = list(self.marking.exceptional)
        out = {"model": doc, "labels": {f: list(l) for f, l in self.label_map().items()}}
        if self.orientation is not None:
            out["orientation"] = self.orientation.to_json()
        return out


def validate_isotropy(m: IsotropyModel) -> Report:
    """Marking conditions, plus independence of the free labels at every vertex."""
    p = m.polytope
    mark: MarkingReport = validate_marking(p, m.marking)
    report = Report(ok=True)
    for v, hit in mark.overlaps:
        report.failures.append(Failure("exceptional facets meet", v,
                                       f"vertex lies on exceptional facets {list(hit)}"))
    for v in mark.uncovered:
        report.failures.append(Failure("uncovered vertex", v, "vertex lies on no exceptional facet"))
    for v in p.vertices:
        face = p.ordered(f for f in v if f not in m.marking)
        if face and not lattice.is_independent([m.label(f) for f in face]):
            report.failures.append(Failure("dependent labels", face,
                                           "labels on this face are linearly dependent"))
    report.ok = not report.failures
    return report


def require_valid(m: CharacteristicModel | IsotropyModel) -> None:
    report = validate_isotropy(m) if isinstance(m, IsotropyModel) else validate_characteristic(m)
    if not report.ok:
        first = report.failures[0]
        raise ModelError(f"invalid model: {first.kind} at {list(first.witness)}", first.witness)


def extend_to_eta(m: IsotropyModel) -> CharacteristicModel:
    """Characteristic model on the same polytope: (lambda, 0) on free facets,
    the last unit vector on exceptional ones."""
    require_valid(m)
    n = m.n
    unit = (0,) * n + (1,)
    labels = {f: (m.label(f) + (0,) if f not in m.marking else unit) for f in m.polytope.facets}
    return CharacteristicModel(m.polytope, labels)


def restrict_to_exceptional(m: IsotropyModel, facet: str) -> CharacteristicModel:
    if facet not in m.marking:
        raise ModelError(f"{facet!r} is not an exceptional facet", (facet,))
    sub = facet_polytope(m.polytope, facet)
    return CharacteristicModel(sub, {f: m.label(f) for f in sub.facets})


# -- omniorientation --------------------------------------------------------------


@dataclass(frozen=True)
class OmniorientedModel:
    """A characteristic model with an orientation and a sign per facet.

    A facet sign of -1 reverses the orientation of that facet's normal
    bundle, which is the same as negating its label.
    """

    model: CharacteristicModel
    orientation: OrientationDatum | None = None
    facet_signs: tuple[int, ...] | None = None

    def __post_init__(self):
        p = self.model.polytope
        if self.orientation is None:
            object.__setattr__(self, "orientation", OrientationDatum.canonical(p))
        elif self.orientation.polytope != p:
            raise ModelError("orientation belongs to a different polytope")
        signs = self.facet_signs
        if signs is None:
            signs = (1,) * len(p.facets)
        elif isinstance(signs, Mapping):
            unknown = sorted(set(signs) - set(p.facets))
            if unknown:
                raise ModelError(f"facet signs for unknown facets {unknown}", tuple(unknown))
            signs = tuple(signs.get(f, 1) for f in p.facets)
        signs = tuple(signs)
        if len(signs) != len(p.facets) or any(s not in (1, -1) for s in signs):
            raise ModelError("facet signs must be +1 or -1, one per facet")
        object.__setattr__(self, "facet_signs", signs)

    @property
    def polytope(self) -> Polytope:
        return self.model.polytope

    @property
    def dim(self) -> int:
        return self.model.dim

    def effective_label(self, facet: str) -> IntVector:
        s = self.facet_signs[self.polytope.index(facet)]
        return tuple(s * x for x in self.model.label(facet))

    def effective_model(self) -> CharacteristicModel:
        return CharacteristicModel(self.polytope, {f: self.effective_label(f) for f in self.polytope.facets})

    def reversed(self) -> OmniorientedModel:
        return OmniorientedModel(self.model, self.orientation.reversed(), self.facet_signs)

    def to_json(self) -> dict:
        doc = self.model.to_json()
        doc["orientation"] = self.orientation.to_json()
        flipped = {f: -1 for f, s in zip(self.polytope.facets, self.facet_signs) if s == -1}
        if flipped:
            doc["facet_signs"] = flipped
        return doc


def vertex_sign(m: OmniorientedModel, v: Iterable[str]) -> int:
    """Sign of the determinant of the (signed) labels at v, relative to the orientation."""
    v = m.polytope.vertex(v)
    d = lattice.det([m.effective_label(f) for f in m.polytope.ordered(v)])
    if d == 0:
        raise ModelError("labels at vertex are dependent", m.polytope.ordered(v))
    return (1 if d > 0 else -1) * m.orientation.sign(v)


# -- delta-translations -------------------------------------------------------------


def delta_equivalent(m1: CharacteristicModel, m2: CharacteristicModel,
                     bound: int = 1) -> tuple[tuple[int, ...], ...] | None:
    """Find a unimodular matrix A with A @ label1(F) == label2(F) for every facet F.

    The labels at any vertex form a rational basis, so A is pinned down by one
    vertex; the candidate is then checked for integrality, determinant +-1,
    agreement on all facets and entries bounded by ``bound`` in absolute
    value. Returns the matrix as a tuple of rows, or None.
    """
    if m1.polytope != m2.polytope:
        raise ModelError("delta-translation needs models over the same polytope")
    if bound < 1:
        raise ModelError(f"search bound must be >= 1, got {bound}")
    require_valid(m1)
    n = m1.dim
    v = m1.polytope.vertices[0]
    inv = lattice.inverse(m1.vertex_matrix(v))
    target = m2.vertex_matrix(v)
    a = [[sum(target[k][i] * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in a for x in row):
        return None
    mat = tuple(tuple(int(x) for x in row) for row in a)
    if any(abs(x) > bound for row in mat for x in row):
        return None
    if abs(lattice.det([list(col) for col in zip(*mat)])) != 1:
        return None
    for f in m1.polytope.facets:
        src = m1.label(f)
        if tuple(sum(r[j] * src[j] for j in range(n)) for r in mat) != m2.label(f):
            return None
    return mat


def apply_matrix(mat: Sequence[Sequence[int]], m: CharacteristicModel) -> CharacteristicModel:
    """The delta-translation of ``m`` by ``mat``."""
    n = m.dim
    return CharacteristicModel(
        m.polytope,
        {f: tuple(sum(r[j] * lab[j] for j in range(n)) for r in mat) for f, lab in m.label_map().items()},
    )
