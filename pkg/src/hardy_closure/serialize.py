"""Deterministic JSON output: fixed key order and 17 significant digits."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

from .poly_core.parse import format_poly
from .poly_core.poly import Poly

SCHEMA = 1


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        return "0.0"
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def plain(obj):
    """Convert engine values into JSON-ready Python values."""
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real) + 0.0, "im": float(obj.imag) + 0.0}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if is_dataclass(obj):
        return plain(asdict(obj))
    return obj


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    obj = plain(obj) if _level == 0 else obj
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(k) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(kind: str, payload: dict) -> dict:
    out = {"schema": SCHEMA, "kind": kind}
    out.update(payload)
    return out


def disc_status_dict(st):
    if st is None:
        return None
    out = {"status": st.status}
    if st.witness is not None:
        out["witness"] = list(st.witness)
        out["margins"] = list(st.margins)
        out["residual"] = st.residual
    out["resolution"] = dict(sorted(st.resolution.items()))
    return out


def component_dict(c) -> dict:
    out = {"kind": c.kind, "description": c.description, "multiplicity": c.multiplicity}
    if c.kind == "curve":
        out["factor"] = format_poly(c.factor)
        out["sheet_group"] = list(c.sheet_group) if c.sheet_group is not None else None
    else:
        out["point"] = list(c.point)
    out["disc_status"] = disc_status_dict(c.disc_status)
    out["retained"] = bool(c.retained)
    if c.caveats:
        out["caveats"] = list(c.caveats)
    return out


def diagnostic_dict(d) -> dict:
    out = {"degrees": list(d.degrees), "distances": list(d.distances),
           "ranks": list(d.ranks), "kernel_bound": d.kernel_bound}
    if d.ks:
        out["k"] = list(d.ks)
        out["fk_norms"] = list(d.fk_norms)
        out["fk_sups"] = list(d.fk_sups)
        out["sup_bound"] = d.sup_bound
    if d.errors:
        out["errors"] = list(d.errors)
    return out


def report_dict(rep, validation=None) -> dict:
    out = {
        "ideal": rep.ideal.strings(),
        "verdict": rep.verdict,
        "closure": rep.closure.strings(),
        "components": [component_dict(c) for c in rep.components],
        "evidence": {k: diagnostic_dict(v) for k, v in rep.numeric_evidence.items()},
        "caveats": list(rep.caveats),
        "residual_flag": rep.residual_flag,
        "resolution": dict(rep.resolution),
    }
    if validation is not None:
        out["validation"] = {"status": validation.status, "checks": validation.checks,
                             "errors": validation.errors}
    return out


def series_dict(d) -> dict:
    if d.domain is not None:
        domain = {"p": d.domain.p, "q": d.domain.q}
    elif d.variant == "ball":
        domain = "ball"
    else:
        domain = None
    return {
        "domain": domain,
        "point": list(d.point) if d.point is not None else None,
        "variant": d.variant,
        "location": d.location,
        "checkpoints": [{"N": n, "sum": s} for n, s in d.checkpoints],
        "terms_used": d.terms_used,
        "classification": d.classification,
        "tail_bound": d.tail_bound,
        "growth_rate": d.growth_rate,
        "density_verdict": d.density_verdict,
        "thresholds": d.thresholds,
    }
