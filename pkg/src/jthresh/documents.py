"""Input documents: the JSON schema shared by the CLI and the catalog export.

All scalar payloads are exact strings ("p/q", denominator omitted when 1);
quadratic irrationals serialize as {"rat": "p/q", "coef": "r/s", "rad": d}
and collapse to a plain string when rational.  Fan ray indices are 0-based.
Parsing validates everything it loads: lattice signature, cone consistency
and fan structure, so a parsed document is safe to compute with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cones import LightConeFacet, NefConeModel, validate_cone
from .errors import BadDocument, DimensionMismatch
from .exactnum import QuadNum, format_rat, rat
from .lattice import DivClass, IntersectionLattice, validate_signature
from .toric import Fan, ToricClass, validate_fan


def parse_rat(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise BadDocument(f"expected an exact rational string, got {value!r}")
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadDocument(f"bad rational {value!r}: {exc}") from None


def quad_to_json(x: QuadNum) -> Any:
    if x.is_rational:
        return format_rat(x.a)
    return {"rat": format_rat(x.a), "coef": format_rat(x.b), "rad": x.d}


def quad_from_json(value: Any) -> QuadNum:
    if isinstance(value, dict):
        missing = {"rat", "coef", "rad"} - set(value)
        if missing:
            raise BadDocument(f"quadratic number missing fields {sorted(missing)}")
        rad = value["rad"]
        if not isinstance(rad, int) or rad < 0:
            raise BadDocument(f"bad radicand {rad!r}")
        return QuadNum(parse_rat(value["rat"]), parse_rat(value["coef"]), rad)
    return QuadNum(parse_rat(value))


@dataclass
class InputDocument:
    lattice: IntersectionLattice | None = None
    cone: NefConeModel | None = None
    fan: Fan | None = None
    classes: dict[str, DivClass] = field(default_factory=dict)
    toric_classes: dict[str, ToricClass] = field(default_factory=dict)
    query: dict[str, Any] = field(default_factory=dict)


def _parse_lattice(data: Any) -> IntersectionLattice:
    if not isinstance(data, dict) or "matrix" not in data:
        raise BadDocument("lattice must be an object with a 'matrix' field")
    matrix = data["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise BadDocument("lattice matrix must be a list of rows")
    rows = [[parse_rat(x) for x in row] for row in matrix]
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or not all(isinstance(s, str) for s in labels)):
        raise BadDocument("lattice labels must be strings")
    try:
        lattice = IntersectionLattice(rows, labels)
    except DimensionMismatch as exc:
        raise BadDocument(str(exc)) from None
    if "rank" in data and data["rank"] != lattice.rank:
        raise BadDocument(f"declared rank {data['rank']} != matrix rank {lattice.rank}")
    validate_signature(lattice)
    return lattice


def _parse_cone(data: Any, lattice: IntersectionLattice) -> NefConeModel:
    if not isinstance(data, dict):
        raise BadDocument("cone must be an object")
    facets = [DivClass([parse_rat(x) for x in row]) for row in data.get("facets", [])]
    labels = data.get("facet_labels")
    light = None
    lc = data.get("light_cone")
    if lc is not None:
        if not isinstance(lc, dict) or "H" not in lc:
            raise BadDocument("light_cone must be an object with reference class 'H'")
        light = LightConeFacet(DivClass([parse_rat(x) for x in lc["H"]]))
    cone = NefConeModel(facets=facets, light_cone=light, facet_labels=labels)
    validate_cone(lattice, cone)
    return cone


def _parse_fan(data: Any) -> Fan:
    if not isinstance(data, dict):
        raise BadDocument("fan must be an object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise BadDocument(f"fan missing field {key!r}")
    try:
        fan = Fan(dim=data["dim"], rays=data["rays"], max_cones=data["max_cones"])
    except (TypeError, ValueError) as exc:
        raise BadDocument(f"bad fan data: {exc}") from None
    validate_fan(fan)
    return fan


def parse_document(data: Any) -> InputDocument:
    """Parse and fully validate a JSON document object."""
    if not isinstance(data, dict):
        raise BadDocument("document must be a JSON object")
    doc = InputDocument()
    if data.get("lattice") is not None:
        doc.lattice = _parse_lattice(data["lattice"])
    if data.get("cone") is not None:
        if doc.lattice is None:
            raise BadDocument("cone requires a lattice")
        doc.cone = _parse_cone(data["cone"], doc.lattice)
    if data.get("fan") is not None:
        doc.fan = _parse_fan(data["fan"])
    if doc.lattice is None and doc.fan is None:
        raise BadDocument("document must contain a lattice or a fan")
    for label, coords in (data.get("classes") or {}).items():
        if doc.lattice is None:
            raise BadDocument("'classes' requires a lattice; use 'toric_classes' with a fan")
        cls = DivClass([parse_rat(x) for x in coords])
        doc.lattice.check_class(cls)
        doc.classes[str(label)] = cls
    for label, coeffs in (data.get("toric_classes") or {}).items():
        if doc.fan is None:
            raise BadDocument("'toric_classes' requires a fan")
        if len(coeffs) != len(doc.fan.rays):
            raise BadDocument(f"toric class {label!r} needs one coefficient per ray")
        doc.toric_classes[str(label)] = ToricClass([parse_rat(x) for x in coeffs])
    query = data.get("query") or {}
    if not isinstance(query, dict):
        raise BadDocument("query must be an object")
    doc.query = dict(query)
    return doc


def document_to_json(doc: InputDocument) -> dict[str, Any]:
    """Inverse of parse_document up to field ordering."""
    out: dict[str, Any] = {}
    if doc.lattice is not None:
        out["lattice"] = {
            "rank": doc.lattice.rank,
            "matrix": [[format_rat(x) for x in row] for row in doc.lattice.matrix],
            "labels": list(doc.lattice.labels),
        }
    if doc.cone is not None:
        cone: dict[str, Any] = {
            "facets": [[format_rat(x) for x in f.coords] for f in doc.cone.facets],
            "facet_labels": list(doc.cone.facet_labels),
            "light_cone": None,
        }
        if doc.cone.light_cone is not None:
            ref = doc.cone.light_cone.reference_kahler
            cone["light_cone"] = {"H": [format_rat(x) for x in ref.coords]}
        out["cone"] = cone
    if doc.fan is not None:
        out["fan"] = {
            "dim": doc.fan.dim,
            "rays": [list(ray) for ray in doc.fan.rays],
            "max_cones": [list(c) for c in doc.fan.max_cones],
        }
    if doc.classes:
        out["classes"] = {label: [format_rat(x) for x in cls.coords]
                          for label, cls in sorted(doc.classes.items())}
    if doc.toric_classes:
        out["toric_classes"] = {label: [format_rat(x) for x in cls.coeffs]
                                for label, cls in sorted(doc.toric_classes.items())}
    if doc.query:
        out["query"] = doc.query
    return out
