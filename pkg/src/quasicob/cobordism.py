"""Cobordism relations produced by orbifolds with quasitoric boundary.

Every construction here ends in an ``IsotropyModel`` (Q, lambda) and reads
the relation off its exceptional facets. Boundary pieces are oriented by the
rule "exceptional facet first" applied to the orientation of Q; with that
rule the signed sum of the pieces vanishes (see ``chern.verify_relation``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from . import lattice
from .charmodel import (CharacteristicModel, Failure, IsotropyModel, OmniorientedModel,
                        OrientationDatum, is_smooth, local_orders, require_valid,
                        restrict_to_exceptional, validate_characteristic, validate_isotropy)
from .errors import InvariantViolation, ModelError
from .lattice import IntVector, Sublattice
from .polytope import ExceptionalMarking, Polytope, facet_polytope, fresh_id, prism, truncate_vertex


@dataclass(frozen=True)
class FakeWeightedProjective:
    """A valid characteristic model over a simplex."""

    model: CharacteristicModel

    def __post_init__(self):
        if not self.model.polytope.is_simplex():
            raise ModelError("a fake weighted projective space lives over a simplex")
        require_valid(self.model)

    @property
    def local_orders(self) -> list[int]:
        return local_orders(self.model)


@dataclass(frozen=True)
class Component:
    model: OmniorientedModel
    sign: int
    source: str

    def to_json(self) -> dict:
        m = self.model.model
        doc = self.model.to_json()
        doc.update(sign=self.sign, source=self.source, smooth=is_smooth(m),
                   simplex=m.polytope.is_simplex(), local_orders=local_orders(m))
        return doc


@dataclass
class CobordismRelation:
    """The claim  sum(sign * [component]) = 0  in complex (orbifold) cobordism."""

    components: list[Component]
    provenance: str
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for c in self.components:
            if c.sign not in (1, -1):
                raise ModelError(f"component sign must be +1 or -1, got {c.sign}")

    @property
    def all_smooth(self) -> bool:
        return all(is_smooth(c.model.model) for c in self.components)

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "details": self.details,
            "all_smooth": self.all_smooth,
            "components": [c.to_json() for c in self.components],
        }


def boundary_components(m: IsotropyModel) -> list[CharacteristicModel]:
    """One characteristic model per exceptional facet, in marking order."""
    require_valid(m)
    return [restrict_to_exceptional(m, f) for f in m.marking.exceptional]


def oriented_boundary(m: IsotropyModel) -> list[OmniorientedModel]:
    orientation = m.oriented()
    return [OmniorientedModel(piece, orientation.restrict(f))
            for f, piece in zip(m.marking.exceptional, boundary_components(m))]


def comcob_relation(m: IsotropyModel) -> CobordismRelation:
    """All boundary pieces with sign +1."""
    pieces = oriented_boundary(m)
    for f, piece in zip(m.marking.exceptional, pieces):
        if not validate_characteristic(piece.model).ok:
            raise InvariantViolation(f"restriction to {f!r} is not a characteristic model")
    return CobordismRelation(
        [Component(piece, 1, f) for f, piece in zip(m.marking.exceptional, pieces)],
        provenance="boundary",
        details={"exceptional": list(m.marking.exceptional),
                 "orientation": "induced on each exceptional facet, listed first"},
    )


def _as_omni(x: CharacteristicModel | OmniorientedModel) -> OmniorientedModel:
    return x if isinstance(x, OmniorientedModel) else OmniorientedModel(x)


def _orient_against(q: IsotropyModel, facet: str, target: OmniorientedModel) -> IsotropyModel:
    """Re-orient q so the orientation induced on ``facet`` is the reverse of the target's."""
    base = OrientationDatum.canonical(q.polytope)
    induced = base.restrict(facet)
    if induced.polytope != target.polytope:
        raise InvariantViolation(f"facet {facet!r} is not the target polytope")
    if induced == target.orientation:
        base = base.reversed()
    elif induced != target.orientation.reversed():
        raise InvariantViolation("target orientation is not an orientation of its polytope")
    return IsotropyModel(q.polytope, q.marking, q.labels, base)


def _relation_against(q: IsotropyModel, facet: str, target: OmniorientedModel,
                      provenance: str, details: dict) -> CobordismRelation:
    """Boundary relation of q, with the piece on ``facet`` presented as  -[target]."""
    rel = comcob_relation(_orient_against(q, facet, target))
    comps = []
    for c in rel.components:
        if c.source == facet:
            if (c.model.model != target.effective_model()
                    or c.model.orientation != target.orientation.reversed()):
                raise InvariantViolation(f"boundary piece on {facet!r} is not the reversed target")
            comps.append(Component(target, -1, "target"))
        else:
            comps.append(c)
    details = dict(rel.details, **details)
    return CobordismRelation(comps, provenance, details)


# -- decomposition into fake weighted projective spaces ----------------------


def edge_spans(x: CharacteristicModel) -> list[tuple[tuple[str, ...], Sublattice]]:
    """For every edge e of P, the sublattice generated by the labels of the facets containing e."""
    p = x.polytope
    return [(p.ordered(e.facet_set), Sublattice([x.label(f) for f in p.ordered(e.facet_set)], x.dim))
            for e in p.edges()]


def choose_lambda0(x: CharacteristicModel, lambda0: Sequence[int] | None = None,
                   workers: int = 1) -> IntVector:
    """Validate a supplied lambda0, or pick the smallest admissible one."""
    spans = edge_spans(x)
    if lambda0 is None:
        unique = list(dict.fromkeys(L for _, L in spans))
        return lattice.find_avoiding_vector(unique, x.dim, workers=workers)
    try:
        lam = lattice.as_vector(lambda0)
    except (lattice.LatticeError, TypeError) as exc:
        raise ModelError(f"lambda0 is not an integer vector: {lambda0!r}") from exc
    if len(lam) != x.dim:
        raise ModelError(f"lambda0 has length {len(lam)}, expected {x.dim}")
    if not lattice.is_primitive(lam):
        raise ModelError(f"lambda0 {list(lam)} is not primitive")
    for edge, L in spans:
        if L.spans(lam):
            raise ModelError(f"lambda0 {list(lam)} lies in the span of the labels on edge {list(edge)}",
                             edge)
    return lam


@dataclass
class QbdConstruction:
    target: OmniorientedModel
    isotropy: IsotropyModel
    lambda0: IntVector
    top: str
    bottom: str
    truncation: dict[str, tuple[str, ...]]  # truncation facet -> vertex of P it replaces


def qbd_construction(x: CharacteristicModel | OmniorientedModel,
                     lambda0: Sequence[int] | None = None, workers: int = 1) -> QbdConstruction:
    """Prism over P, every bottom vertex cut off, labels xi on the sides and lambda0 on the bottom."""
    target = _as_omni(x)
    xi = target.effective_model()
    require_valid(xi)
    lam = choose_lambda0(xi, lambda0, workers)
    p = xi.polytope
    q = prism(p)
    bottom, top = q.facets[-2:]
    cuts: dict[str, tuple[str, ...]] = {}
    for j, v in enumerate(p.vertices, start=1):
        q, h = truncate_vertex(q, v | {bottom}, fresh_id(q.facets, f"H{j}"))
        cuts[h] = p.ordered(v)
    labels = dict(xi.label_map())
    labels[bottom] = lam
    iso = IsotropyModel(q, ExceptionalMarking((top,) + tuple(cuts)), labels)
    iso = _orient_against(iso, top, target)
    return QbdConstruction(target, iso, lam, top, bottom, cuts)


def qbd_decompose(x: CharacteristicModel | OmniorientedModel, lambda0: Sequence[int] | None = None,
                  workers: int = 1) -> CobordismRelation:
    """[x] = sum of [M_j], one fake weighted projective space per vertex of P.

    Component 0 is x with sign -1; then one simplex component per vertex of P
    (in canonical vertex order), sign +1.
    """
    c = qbd_construction(x, lambda0, workers)
    rel = _relation_against(c.isotropy, c.top, c.target, "qbd",
                            {"lambda0": list(c.lambda0),
                             "vertices": {h: list(v) for h, v in c.truncation.items()}})
    for comp in rel.components[1:]:
        FakeWeightedProjective(comp.model.model)
    return rel


# -- vertex cuts ---------------------------------------------------------------


def vertex_truncation(q: Polytope) -> tuple[Polytope, list[str]]:
    cuts = []
    out = q
    for j, v in enumerate(q.vertices, start=1):
        out, h = truncate_vertex(out, v, fresh_id(out.facets, f"H{j}"))
        cuts.append(h)
    return out, cuts


def vertex_cut_relation(q: Polytope, labels: Mapping[str, Sequence[int]],
                        orientation: OrientationDatum | None = None) -> CobordismRelation:
    """Cut off every vertex of q; the simplex facets so created sum to zero.

    ``labels`` assigns vectors of Z^(dim q - 1) to the original facets of q.
    """
    cut, hs = vertex_truncation(q)
    iso = IsotropyModel(cut, ExceptionalMarking(tuple(hs)), labels)
    report = validate_isotropy(iso)
    if not report.ok:
        first = report.failures[0]
        raise ModelError(f"labels are not an isotropy function after truncation: {first.kind} "
                         f"at {list(first.witness)}", first.witness)
    if orientation is not None:
        iso = IsotropyModel(cut, iso.marking, iso.labels, orientation)
    rel = comcob_relation(iso)
    for comp in rel.components:
        FakeWeightedProjective(comp.model.model)
    rel.provenance = "vertexcut"
    return rel


# -- the Hirzebruch-type schema -------------------------------------------------


@dataclass
class HirzebruchReport:
    ok: bool
    failures: list[Failure] = field(default_factory=list)
    relation: CobordismRelation | None = None
    smooth_components: list[bool] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "smooth_components": self.smooth_components,
            "relation": None if self.relation is None else self.relation.to_json(),
        }


def _find_designated(target: CharacteristicModel, q: IsotropyModel) -> str:
    hits = [f for f in q.marking.exceptional
            if q.polytope.dim >= 2 and facet_polytope(q.polytope, f) == target.polytope]
    if len(hits) != 1:
        raise ModelError(f"expected exactly one exceptional facet matching the target polytope, "
                         f"found {hits}")
    return hits[0]


def check_hirzebruch_schema(target: CharacteristicModel | OmniorientedModel, q: IsotropyModel,
                            designated: str | None = None) -> HirzebruchReport:
    """Check the two conditions under which q links the target to smooth projective spaces.

    (1) every free facet meeting the designated facet carries the target's label;
    (2) for every edge of q off the exceptional facets, the labels of the
        facets through it form a basis of Z^n.
    On success the report carries  -[target] + sum [X(simplex_i)] = 0.
    """
    t = _as_omni(target)
    xi = t.effective_model()
    if designated is None:
        designated = _find_designated(xi, q)
    if designated not in q.marking:
        raise ModelError(f"{designated!r} is not an exceptional facet", (designated,))
    others = [f for f in q.marking.exceptional if f != designated]
    for f in others:
        if not facet_polytope(q.polytope, f).is_simplex():
            raise ModelError(f"exceptional facet {f!r} is not a simplex", (f,))
    if facet_polytope(q.polytope, designated) != xi.polytope:
        raise ModelError(f"facet {designated!r} does not match the target polytope", (designated,))

    report = HirzebruchReport(ok=True)
    iso_report = validate_isotropy(q)
    report.failures.extend(iso_report.failures)
    tgt_report = validate_characteristic(xi)
    report.failures.extend(tgt_report.failures)
    for f in xi.polytope.facets:
        if f in q.marking:
            report.failures.append(Failure("condition 1", (f,), "facet is exceptional in q"))
        elif q.label(f) != xi.label(f):
            report.failures.append(Failure("condition 1", (f,),
                                           f"isotropy label {list(q.label(f))} differs from "
                                           f"target label {list(xi.label(f))}"))
    p = q.polytope
    for e in p.faces_of_codim(p.dim - 1):
        if e.facet_set & set(q.marking.exceptional):
            continue
        edge = p.ordered(e.facet_set)
        d = lattice.det([q.label(f) for f in edge])
        if abs(d) != 1:
            report.failures.append(Failure("condition 2", edge,
                                           f"labels on this edge have determinant {d}"))
    report.ok = not report.failures
    if report.ok:
        report.relation = _relation_against(q, designated, t, "hirzebruch",
                                            {"designated": designated})
        report.smooth_components = [is_smooth(c.model.model) for c in report.relation.components]
        if not all(report.smooth_components):
            raise InvariantViolation("schema conditions hold but a component is singular")
    return report
