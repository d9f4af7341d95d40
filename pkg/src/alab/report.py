"""JSON report envelope and value serialization shared by the CLI and the suite."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .places import fmt_rational

SCHEMA_VERSION = "alab-report/1"
CONFIG_SCHEMA = "alab-config/1"
VERDICTS = ("pass", "fail", "inconclusive")

_SQRT2 = math.sqrt(2.0)


def sqrt2_tag(x: float, tol: float = 1e-9, bound: int = 8) -> str | None:
    """Symbolic tag ``a+b*sqrt2`` for x, with a, b half-integers of size <= bound."""
    for twice_b in sorted(range(-2 * bound, 2 * bound + 1), key=abs):
        b = Fraction(twice_b, 2)
        a = x - float(b) * _SQRT2
        a2 = round(2 * a)
        if abs(2 * a - a2) < 2 * tol and abs(a2) <= 4 * bound:
            return _fmt_quadratic(Fraction(a2, 2), b)
    return None


def _fmt_quadratic(a: Fraction, b: Fraction) -> str:
    if b == 0:
        return fmt_rational(a)
    if b == 1:
        s = "sqrt2"
    elif b == -1:
        s = "-sqrt2"
    else:
        s = f"{fmt_rational(b)}*sqrt2"
    if a == 0:
        return s
    return f"{fmt_rational(a)}{s}" if s.startswith("-") else f"{fmt_rational(a)}+{s}"


def decimal12(x: float) -> str:
    d = f"{float(x):.12f}"
    # no "-0.000000000000"
    return d[1:] if d.startswith("-") and float(d) == 0 else d


def irrational(x: float) -> dict:
    """``{decimal, symbolic}`` with the decimal rounded to 12 places."""
    return {"decimal": decimal12(x), "symbolic": sqrt2_tag(float(x))}


def irrational_vec(v) -> list[dict]:
    return [irrational(x) for x in np.asarray(v, dtype=float).ravel()]


def jsonable(obj: Any) -> Any:
    """Recursively turn Fractions, numpy values and tuples into JSON types."""
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return obj


def make_report(command: list[str], payload: Any, verdict: str | None = None,
                witness: Any = None, seconds: float = 0.0) -> dict:
    if verdict is not None and verdict not in VERDICTS:
        raise ValueError(f"bad verdict {verdict!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "command": list(command),
        "timing": {"seconds": round(seconds, 6)},
        "payload": jsonable(payload),
        "verdict": verdict,
        "witness": jsonable(witness),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
