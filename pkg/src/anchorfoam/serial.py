"""JSON interchange for surfaces, foams, and braid words.

Schemas:
  sl2   {"theory":"sl2","components":[{"genus":G,"dots":D,"shifted":[s1,s2],
         "anchors":[slot..],"bottom":[circle..],"top":[circle..]}],
         "anchor_labels":[..bottom-to-top]}
  sl3   {"theory":"sl3u"|"sl3o","facets":[{"genus":G,"dots":D,
         "anchors":[slot..],"slots":B}],"seams":[{"sides":[[f,s],[f,s],[f,s]]}],
         "anchor_labels":[..],"anchor_signs":[..]}   (signs oriented only)
  braid {"theory":"braid","strands":N,"word":[..]}
"""

from __future__ import annotations

import json

from .errors import InvariantViolation, SchemaError
from .foams import Facet, Foam3, ORIENTED, SeamCircle, UNORIENTED
from .homology import BraidWord
from .surfaces import AnchoredSurface, Surface2Component


def _require(data, key, kinds):
    if key not in data:
        raise SchemaError("missing field %r" % key)
    value = data[key]
    if not isinstance(value, kinds):
        raise SchemaError("field %r has the wrong type" % key)
    return value


def _int_list(data, key, default=None):
    if default is not None and key not in data:
        return list(default)
    value = _require(data, key, list)
    for x in value:
        if not isinstance(x, int):
            raise SchemaError("field %r must hold integers" % key)
    return value


def _parse_sl2(data):
    comps = []
    for k, raw in enumerate(_require(data, "components", list)):
        if not isinstance(raw, dict):
            raise SchemaError("component %d is not an object" % k)
        shifted = _int_list(raw, "shifted", default=(0, 0))
        if len(shifted) != 2:
            raise SchemaError("component %d: shifted needs two entries" % k)
        comps.append(
            Surface2Component(
                genus=raw.get("genus", 0),
                dots=raw.get("dots", 0),
                shifted=tuple(shifted),
                anchors=tuple(_int_list(raw, "anchors", default=())),
                bottom=tuple(_int_list(raw, "bottom", default=())),
                top=tuple(_int_list(raw, "top", default=())),
            )
        )
    labels = tuple(_int_list(data, "anchor_labels", default=()))
    return AnchoredSurface(tuple(comps), labels)


def _parse_sl3(data, theory):
    facets = []
    for k, raw in enumerate(_require(data, "facets", list)):
        if not isinstance(raw, dict):
            raise SchemaError("facet %d is not an object" % k)
        facets.append(
            Facet(
                genus=raw.get("genus", 0),
                dots=raw.get("dots", 0),
                slots=raw.get("slots", 0),
                anchors=tuple(_int_list(raw, "anchors", default=())),
            )
        )
    seams = []
    for k, raw in enumerate(data.get("seams", [])):
        if not isinstance(raw, dict):
            raise SchemaError("seam %d is not an object" % k)
        sides = _require(raw, "sides", list)
        if len(sides) != 3:
            raise InvariantViolation("seam %d does not have three sides" % k)
        try:
            sides = tuple((int(f), int(s)) for f, s in sides)
        except (TypeError, ValueError) as exc:
            raise SchemaError("seam %d sides must be [facet, slot] pairs" % k) from exc
        seams.append(SeamCircle(sides))
    labels = tuple(_int_list(data, "anchor_labels", default=()))
    signs = tuple(_int_list(data, "anchor_signs", default=()))
    if theory == UNORIENTED and signs:
        raise SchemaError("anchor_signs is only for oriented foams")
    return Foam3(theory, tuple(facets), tuple(seams), labels, signs)


def _parse_braid(data):
    return BraidWord(
        _require(data, "strands", int), tuple(_int_list(data, "word"))
    )


def parse(data):
    """Dict -> domain object, validating all structural invariants."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    theory = _require(data, "theory", str)
    if theory == "sl2":
        return _parse_sl2(data)
    if theory in (UNORIENTED, ORIENTED):
        return _parse_sl3(data, theory)
    if theory == "braid":
        return _parse_braid(data)
    raise SchemaError("unknown theory %r" % theory)


def parse_input_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("invalid JSON: %s" % exc) from exc
    return parse(data)


def serialize(obj):
    """Domain object -> schema dict."""
    if isinstance(obj, AnchoredSurface):
        return {
            "theory": "sl2",
            "components": [
                {
                    "genus": c.genus,
                    "dots": c.dots,
                    "shifted": list(c.shifted),
                    "anchors": list(c.anchors),
                    "bottom": list(c.bottom),
                    "top": list(c.top),
                }
                for c in obj.components
            ],
            "anchor_labels": list(obj.anchor_labels),
        }
    if isinstance(obj, Foam3):
        out = {
            "theory": obj.theory,
            "facets": [
                {
                    "genus": f.genus,
                    "dots": f.dots,
                    "slots": f.slots,
                    "anchors": list(f.anchors),
                }
                for f in obj.facets
            ],
            "seams": [
                {"sides": [[f, s] for f, s in seam.sides]} for seam in obj.seams
            ],
            "anchor_labels": list(obj.anchor_labels),
        }
        if obj.theory == ORIENTED:
            out["anchor_signs"] = list(obj.anchor_signs)
        return out
    if isinstance(obj, BraidWord):
        return {"theory": "braid", "strands": obj.strands, "word": list(obj.word)}
    raise SchemaError("cannot serialize %r" % type(obj).__name__)
