"""Combinatorial simple polytopes.

A polytope is stored as its vertex-facet incidence: every vertex is the set
of the ``dim`` facets containing it. Faces are identified with the set of
facets whose intersection they are, so no coordinates are ever needed.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidPolytopeError

Vertex = frozenset


class Polytope:
    """A simple polytope given by vertex-facet incidence.

    Args:
        dim: dimension n >= 1.
        facets: facet identifiers; their order is the canonical facet order.
        vertices: each vertex as an iterable of the n facet ids meeting there.

    Raises:
        InvalidPolytopeError: if the data is not the incidence structure of a
            simple polytope. The exception carries a ``witness``.
    """

    __slots__ = ("dim", "facets", "vertices", "_index", "_by_facet", "_position")

    def __init__(self, dim: int, facets: Sequence[str], vertices: Iterable[Iterable[str]]):
        if not isinstance(dim, int) or dim < 1:
            raise InvalidPolytopeError(f"dimension must be a positive integer, got {dim!r}")
        facets = tuple(facets)
        dup = [f for f, c in Counter(facets).items() if c > 1]
        if dup:
            raise InvalidPolytopeError(f"duplicate facet ids {dup}", dup)
        index = {f: i for i, f in enumerate(facets)}

        verts = []
        for raw in vertices:
            raw = list(raw)
            unknown = [f for f in raw if f not in index]
            if unknown:
                raise InvalidPolytopeError(f"vertex {raw} uses unknown facets {unknown}", raw)
            v = frozenset(raw)
            if len(v) != len(raw):
                raise InvalidPolytopeError(f"vertex {raw} repeats a facet", raw)
            if len(v) != dim:
                raise InvalidPolytopeError(
                    f"vertex {raw} lies on {len(v)} facets; a simple {dim}-polytope needs {dim}", raw)
            verts.append(v)
        dup_v = [sorted(v, key=index.__getitem__) for v, c in Counter(verts).items() if c > 1]
        if dup_v:
            raise InvalidPolytopeError(f"duplicate vertices {dup_v}", dup_v[0])

        self.dim = dim
        self.facets = facets
        self._index = index
        self.vertices = tuple(sorted(verts, key=self._key))
        self._position = {v: i for i, v in enumerate(self.vertices)}
        by_facet: dict[str, list[Vertex]] = {f: [] for f in facets}
        for v in self.vertices:
            for f in v:
                by_facet[f].append(v)
        self._by_facet = {f: tuple(vs) for f, vs in by_facet.items()}
        self._check()

    def _key(self, s: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self._index[f] for f in s))

    def _check(self) -> None:
        n = self.dim
        if not self.vertices:
            raise InvalidPolytopeError("a polytope needs at least one vertex")
        for f, vs in self._by_facet.items():
            if len(vs) < n:
                raise InvalidPolytopeError(
                    f"facet {f!r} has {len(vs)} vertices; a facet needs at least {n}", f)
        ridges: Counter = Counter()
        for v in self.vertices:
            for r in itertools.combinations(sorted(v, key=self._index.__getitem__), n - 1):
                ridges[frozenset(r)] += 1
        for r, c in ridges.items():
            if c != 2:
                raise InvalidPolytopeError(
                    f"edge {self.ordered(r)} has {c} endpoints instead of 2", self.ordered(r))
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            for u in self.neighbors(todo.popleft()):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        if len(seen) != len(self.vertices):
            missing = next(v for v in self.vertices if v not in seen)
            raise InvalidPolytopeError("vertex graph is disconnected", self.ordered(missing))

    # -- basic queries -------------------------------------------------------

    def index(self, facet: str) -> int:
        return self._index[facet]

    def ordered(self, facet_set: Iterable[str]) -> tuple[str, ...]:
        """The facets of ``facet_set`` listed in canonical facet order."""
        return tuple(sorted(facet_set, key=self._index.__getitem__))

    def vertices_on(self, facet_set: Iterable[str]) -> tuple[Vertex, ...]:
        s = frozenset(facet_set)
        if not s:
            return self.vertices
        first = next(iter(s))
        return tuple(v for v in self._by_facet[first] if s <= v)

    def is_face(self, facet_set: Iterable[str]) -> bool:
        """A set of facets meets in a face iff some vertex contains all of them."""
        return bool(self.vertices_on(facet_set))

    def vertex(self, facet_set: Iterable[str]) -> Vertex:
        v = frozenset(facet_set)
        if v not in self._position:
            raise InvalidPolytopeError(f"{sorted(v)} is not a vertex", sorted(v))
        return v

    def position(self, v: Iterable[str]) -> int:
        """Index of a vertex in ``vertices``."""
        try:
            return self._position[frozenset(v)]
        except KeyError:
            raise InvalidPolytopeError(f"{sorted(v)} is not a vertex", sorted(v)) from None

    def neighbors(self, v: Vertex) -> list[Vertex]:
        """Vertices joined to ``v`` by an edge, in canonical order."""
        out = []
        for f in self.ordered(v):
            ridge = v - {f}
            for u in self.vertices_on(ridge):
                if u != v:
                    out.append(u)
        return out

    def is_simplex(self) -> bool:
        return len(self.facets) == self.dim + 1 and len(self.vertices) == self.dim + 1

    def faces_of_codim(self, codim: int) -> list[Face]:
        if not 0 <= codim <= self.dim:
            raise InvalidPolytopeError(f"codimension {codim} outside [0, {self.dim}]", codim)
        found = {frozenset(c) for v in self.vertices for c in itertools.combinations(v, codim)}
        return [Face(s) for s in sorted(found, key=self._key)]

    def edges(self) -> list[Face]:
        return self.faces_of_codim(self.dim - 1)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.dim, self.facets, self.vertices) == (other.dim, other.facets, other.vertices)

    def __hash__(self) -> int:
        return hash((self.dim, self.facets, self.vertices))

    def __repr__(self) -> str:
        return (f"Polytope(dim={self.dim}, facets={len(self.facets)}, "
                f"vertices={len(self.vertices)})")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": list(self.facets),
            "vertices": [list(self.ordered(v)) for v in self.vertices],
        }

    @classmethod
    def from_json(cls, doc: dict) -> Polytope:
        try:
            return cls(doc["dim"], doc["facets"], doc["vertices"])
        except (KeyError, TypeError) as exc:
            raise InvalidPolytopeError(f"malformed polytope document: {exc!r}") from exc


@dataclass(frozen=True)
class Face:
    facet_set: frozenset

    @property
    def codim(self) -> int:
        return len(self.facet_set)


@dataclass(frozen=True)
class ExceptionalMarking:
    """An ordered set of facets designated as exceptional."""

    exceptional: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "exceptional", tuple(self.exceptional))
        if len(set(self.exceptional)) != len(self.exceptional):
            raise InvalidPolytopeError(f"repeated exceptional facets {list(self.exceptional)}")

    def __contains__(self, facet: str) -> bool:
        return facet in self.exceptional


@dataclass
class MarkingReport:
    ok: bool
    overlaps: list[tuple[tuple[str, ...], tuple[str, ...]]] = field(default_factory=list)
    uncovered: list[tuple[str, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "overlaps": [{"vertex": list(v), "exceptional": list(e)} for v, e in self.overlaps],
            "uncovered": [list(v) for v in self.uncovered],
        }


def validate_marking(p: Polytope, marking: ExceptionalMarking) -> MarkingReport:
    """Check that the exceptional facets are pairwise disjoint and cover every vertex."""
    unknown = [f for f in marking.exceptional if f not in p.facets]
    if unknown:
        raise InvalidPolytopeError(f"unknown exceptional facets {unknown}", unknown)
    exc = set(marking.exceptional)
    report = MarkingReport(ok=True)
    for v in p.vertices:
        hit = v & exc
        if len(hit) > 1:
            report.overlaps.append((p.ordered(v), p.ordered(hit)))
        elif not hit:
            report.uncovered.append(p.ordered(v))
    report.ok = not report.overlaps and not report.uncovered
    return report


def fresh_id(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for i in itertools.count(1):
        cand = f"{base}_{i}"
        if cand not in taken:
            return cand


# -- constructions -----------------------------------------------------------


def simplex(n: int, names: Sequence[str] | None = None) -> Polytope:
    """The n-simplex; facets default to F1..F(n+1)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidPolytopeError(f"simplex dimension must be >= 1, got {n!r}")
    names = tuple(names) if names is not None else tuple(f"F{i}" for i in range(1, n + 2))
    if len(names) != n + 1:
        raise InvalidPolytopeError(f"an {n}-simplex has {n + 1} facets, got {len(names)} names")
    return Polytope(n, names, itertools.combinations(names, n))


def polygon(m: int, names: Sequence[str] | None = None) -> Polytope:
    """The m-gon, facets (edges) in cyclic order."""
    if m < 3:
        raise InvalidPolytopeError(f"a polygon needs at least 3 edges, got {m}")
    names = tuple(names) if names is not None else tuple(f"F{i}" for i in range(1, m + 1))
    return Polytope(2, names, [(names[i], names[(i + 1) % m]) for i in range(m)])


def prism(p: Polytope, bottom: str = "BOTTOM", top: str = "TOP") -> Polytope:
    """P x [0, 1]. Side facets keep their ids; two new facets are appended.

    ``bottom``/``top`` are suffixed if they collide with an existing id; read
    the actual ids off ``facets[-2:]``.
    """
    bottom = fresh_id(p.facets, bottom)
    top = fresh_id(set(p.facets) | {bottom}, top)
    verts = [v | {bottom} for v in p.vertices] + [v | {top} for v in p.vertices]
    return Polytope(p.dim + 1, p.facets + (bottom, top), verts)


def truncate_vertex(q: Polytope, v: Iterable[str], new_id: str | None = None) -> tuple[Polytope, str]:
    """Cut off vertex ``v`` by a hyperplane, creating a new simplex facet."""
    v = q.vertex(v)
    h = fresh_id(q.facets, new_id or "H")
    verts = [u for u in q.vertices if u != v]
    verts += [(v - {f}) | {h} for f in q.ordered(v)]
    return Polytope(q.dim, q.facets + (h,), verts), h


def facet_polytope(p: Polytope, facet: str) -> Polytope:
    """The facet ``facet`` of P as an (n-1)-polytope.

    Its facets are the facets of P meeting it (same ids, same relative order).
    """
    if facet not in p.facets:
        raise InvalidPolytopeError(f"unknown facet {facet!r}", facet)
    if p.dim < 2:
        raise InvalidPolytopeError("facets of a segment are points, not polytopes", facet)
    verts = [v - {facet} for v in p.vertices_on({facet})]
    meeting = set().union(*verts)
    return Polytope(p.dim - 1, [f for f in p.facets if f in meeting], verts)
