"""JSON documents in and out.

Polytope document::

    {"dim": 2, "facets": ["F1", ...], "vertices": [["F1", "F2"], ...],
     "exceptional": ["F4", ...]}          # "exceptional" optional

Model document::

    {"model": <polytope document>, "labels": {"F1": [1, 0], ...},
     "orientation": [{"order": ["F1", "F2"], "sign": 1}, ...],   # optional
     "facet_signs": {"F3": -1}}                                    # optional

A model whose polytope carries "exceptional" is an isotropy model.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .charmodel import CharacteristicModel, IsotropyModel, OmniorientedModel, OrientationDatum
from .errors import DocumentError, InvalidPolytopeError, LatticeError, ModelError
from .polytope import ExceptionalMarking, Polytope


def read_document(path: str | Path) -> tuple[Any, str]:
    """Parsed JSON and the sha256 of the raw bytes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return doc, hashlib.sha256(raw).hexdigest()


def _require(doc: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{where}: missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def parse_polytope(doc: Any) -> tuple[Polytope, ExceptionalMarking | None]:
    dim = _require(doc, "dim", int, "polytope")
    facets = _require(doc, "facets", list, "polytope")
    vertices = _require(doc, "vertices", list, "polytope")
    if not all(isinstance(f, str) for f in facets):
        raise DocumentError("polytope: facet ids must be strings")
    if not all(isinstance(v, list) and all(isinstance(f, str) for f in v) for v in vertices):
        raise DocumentError("polytope: vertices must be lists of facet ids")
    try:
        p = Polytope(dim, facets, vertices)
        marking = None
        if "exceptional" in doc:
            exc = doc["exceptional"]
            if not isinstance(exc, list) or not all(isinstance(f, str) for f in exc):
                raise DocumentError("polytope: 'exceptional' must be a list of facet ids")
            marking = ExceptionalMarking(tuple(exc))
            unknown = [f for f in exc if f not in p.facets]
            if unknown:
                raise DocumentError(f"polytope: unknown exceptional facets {unknown}")
    except InvalidPolytopeError as exc:
        raise DocumentError(f"polytope: {exc}") from exc
    return p, marking


def _labels(doc: Any) -> dict[str, list[int]]:
    labels = _require(doc, "labels", dict, "model")
    for f, v in labels.items():
        if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise DocumentError(f"model: label of {f!r} must be a list of integers")
    return labels


def _orientation(doc: Any, p: Polytope) -> OrientationDatum | None:
    raw = doc.get("orientation")
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise DocumentError("model: 'orientation' must be a list of {order, sign} entries")
    entries = []
    for e in raw:
        if (not isinstance(e, dict) or not isinstance(e.get("order"), list)
                or e.get("sign") not in (1, -1)):
            raise DocumentError(f"model: bad orientation entry {e!r}")
        entries.append((e["order"], e["sign"]))
    try:
        return OrientationDatum.from_orderings(p, entries)
    except (ModelError, InvalidPolytopeError) as exc:
        raise DocumentError(f"model: {exc}") from exc


def parse_model(doc: Any) -> OmniorientedModel | IsotropyModel:
    p, marking = parse_polytope(_require(doc, "model", dict, "model"))
    labels = _labels(doc)
    orientation = _orientation(doc, p)
    try:
        if marking is not None:
            return IsotropyModel(p, marking, labels, orientation)
        signs = doc.get("facet_signs")
        if signs is not None and not isinstance(signs, dict):
            raise DocumentError("model: 'facet_signs' must map facet ids to +1/-1")
        return OmniorientedModel(CharacteristicModel(p, labels), orientation, signs)
    except (ModelError, LatticeError) as exc:
        raise DocumentError(f"model: {exc}") from exc


def parse_characteristic(doc: Any) -> OmniorientedModel:
    m = parse_model(doc)
    if isinstance(m, IsotropyModel):
        raise DocumentError("expected a characteristic model, got one with exceptional facets")
    return m


def parse_isotropy(doc: Any) -> IsotropyModel:
    m = parse_model(doc)
    if not isinstance(m, IsotropyModel):
        raise DocumentError("expected a model with 'exceptional' facets")
    return m


def parse_vertexcut(doc: Any) -> tuple[Polytope, dict[str, list[int]]]:
    p, marking = parse_polytope(_require(doc, "model", dict, "vertexcut"))
    if marking is not None:
        raise DocumentError("vertexcut: the polytope must not mark exceptional facets")
    labels = _labels(doc)
    if p.dim < 2:
        raise DocumentError("vertexcut: the polytope must have dimension >= 2")
    if set(labels) != set(p.facets):
        raise DocumentError("vertexcut: labels must be given for exactly the facets of the polytope")
    bad = [f for f, v in labels.items() if len(v) != p.dim - 1]
    if bad:
        raise DocumentError(f"vertexcut: labels of {bad} must have length {p.dim - 1}")
    return p, labels


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
