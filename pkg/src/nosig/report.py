"""Canonical JSON reports and sweep CSV.

Floats are written with 17 significant digits and keys are sorted, so the same
report always serialises to the same bytes and re-serialising a parsed report
reproduces it exactly.
"""

import json
import math

import numpy as np

from . import tolerances
from .config import config_to_dict, matrix_to_json, resolved


def _number(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x}")
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _encode(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, float, np.integer, np.floating)):
        out.append(_number(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_json(obj):
    """Compact, key-sorted JSON with ``.17g`` floats."""
    out = []
    _encode(obj, out)
    return "".join(out)


def report_to_dict(report):
    return {
        "scenario": report.kind,
        "mode": report.mode,
        "config": config_to_dict(resolved(report.config)),
        "trace_distance": report.distance,
        "verdict": report.verdict,
        "closed_form_residual": report.closed_form_residual,
        "rho_left": matrix_to_json(report.rho_left.matrix),
        "rho_right": matrix_to_json(report.rho_right.matrix),
        "tolerances": tolerances.as_dict(),
    }


REPORT_KEYS = frozenset(
    ("scenario", "mode", "config", "trace_distance", "verdict", "closed_form_residual", "rho_left", "rho_right", "tolerances")
)


def report_json(reports):
    """One report as an object, or a list of them as an array."""
    if isinstance(reports, (list, tuple)):
        return canonical_json([report_to_dict(r) for r in reports])
    return canonical_json(report_to_dict(reports))


def report_text(report):
    lines = [
        f"scenario: {report.kind} ({report.mode})",
        f"trace distance: {report.distance:.12g}",
        f"verdict: {report.verdict}",
    ]
    if report.closed_form_residual is not None:
        lines.append(f"closed-form residual: {report.closed_form_residual:.3g}")
    return "\n".join(lines)


def sweep_csv(rows, names):
    """CSV text with header ``names...,distance,verdict`` and ``\\n`` line ends."""
    lines = [",".join([*names, "distance", "verdict"])]
    for row in rows:
        lines.append(",".join([*(_number(v) for v in row.values), _number(row.distance), row.verdict]))
    return "\n".join(lines) + "\n"
