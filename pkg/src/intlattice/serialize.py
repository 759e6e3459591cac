"""JSON lattice documents and conversion of results to JSON-safe values.

Rationals are written as strings ``"p/q"`` (or ``"p"``) so that nothing is
lost in transit.  A lattice document is either
``{"ambient_dim": m, "generators": [[...], ...]}`` or ``{"gram": [[...], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from . import ratmat as rm
from .lattice import Lattice, from_gram


class DocumentError(ValueError):
    """Malformed lattice document."""


def lattice_from_document(doc: dict) -> Lattice:
    if not isinstance(doc, dict):
        raise DocumentError("lattice document must be a JSON object")
    try:
        if "gram" in doc:
            return from_gram(rm.as_matrix(doc["gram"]))
        if "generators" in doc:
            rows = rm.as_matrix(doc["generators"])
            m = doc.get("ambient_dim", len(rows[0]) if rows else 0)
            if any(len(r) != m for r in rows):
                raise DocumentError("generator length differs from ambient_dim")
            return Lattice(rows)
    except DocumentError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(str(exc)) from exc
    raise DocumentError("document needs a 'gram' or a 'generators' entry")


def load_lattice(path: str | Path) -> tuple[Lattice, dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return lattice_from_document(doc), doc


def lattice_to_document(lat: Lattice) -> dict:
    if lat.form is not None:
        return {"gram": to_json(lat.gram)}
    return {"ambient_dim": lat.ambient_dim, "generators": to_json(lat.basis)}


def to_json(value):
    """Recursively convert Fractions, tuples, sets and dataclasses into JSON-safe values."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return rm.format_rational(value)
    if isinstance(value, float):
        raise TypeError("floating point values are not serialized")
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(to_json(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if is_dataclass(value):
        return {f.name: to_json(getattr(value, f.name)) for f in fields(value)}
    return str(value)


def dumps(value) -> str:
    return json.dumps(to_json(value), indent=2, sort_keys=True)
