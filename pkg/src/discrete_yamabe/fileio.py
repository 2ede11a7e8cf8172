"""Surface, factor and target files; result reports and trace CSV.

Surface files are JSON objects::

    {
      "format_version": 1,
      "vertex_count": 4,
      "faces": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
      "edge_lengths": [[0, 1, 1.0], [0, 2, 1.0], ...]
    }

Edge keys are 0-based with ``i < j``; every edge of the face list must
appear exactly once.  Factor and target files are JSON arrays of N
numbers.  Reports are JSON with a fixed key order and shortest
round-trip float formatting, so identical inputs give identical bytes.
"""

import csv
import hashlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .curvature import TWO_PI
from .energy import TargetCurvature
from .errors import (
    DimensionMismatch,
    ExtraEdgeLength,
    MissingEdgeLength,
    NonPositiveLength,
    SurfaceSyntaxError,
)
from .flow import FlowResult
from .obstruction import ObstructionReport
from .solver import SolveResult
from .surface import PLMetric, build_triangulation

__all__ = [
    "FORMAT_VERSION",
    "parse_surface_file",
    "read_surface",
    "serialize_surface",
    "surface_digest",
    "parse_vector",
    "parse_target",
    "report_dict",
    "format_report",
    "write_report",
    "write_trace",
    "TRACE_COLUMNS",
    "dump_json",
]

FORMAT_VERSION = 1
TRACE_COLUMNS = ("step", "time", "energy", "residual_inf", "min_face_margin")


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _is_number(x):
    return (isinstance(x, (int, float))) and not isinstance(x, bool)


def _load_json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceSyntaxError(f"{what} line {exc.lineno} column {exc.colno}", exc.msg) from None


def parse_surface_file(text):
    """Parse and validate surface text; return ``(triangulation, metric)``."""
    data = _load_json(text, "surface")
    if not isinstance(data, dict):
        raise SurfaceSyntaxError("surface", "top level must be an object")
    for key in ("format_version", "vertex_count", "faces", "edge_lengths"):
        if key not in data:
            raise SurfaceSyntaxError(key, "missing key")
    extra = sorted(set(data) - {"format_version", "vertex_count", "faces", "edge_lengths"})
    if extra:
        raise SurfaceSyntaxError(extra[0], "unknown key")
    if data["format_version"] != FORMAT_VERSION:
        raise SurfaceSyntaxError(
            "format_version", f"unsupported version {data['format_version']!r}"
        )
    n = data["vertex_count"]
    if not _is_int(n) or n <= 0:
        raise SurfaceSyntaxError("vertex_count", "must be a positive integer")

    faces = data["faces"]
    if not isinstance(faces, list):
        raise SurfaceSyntaxError("faces", "must be a list")
    for k, f in enumerate(faces):
        if not (isinstance(f, list) and len(f) == 3 and all(_is_int(v) for v in f)):
            raise SurfaceSyntaxError(f"faces[{k}]", "expected three integer vertex indices")
    triangulation = build_triangulation(faces, n)

    entries = data["edge_lengths"]
    if not isinstance(entries, list):
        raise SurfaceSyntaxError("edge_lengths", "must be a list")
    index = triangulation.edge_index
    lengths = np.empty(triangulation.n_edges)
    given = np.zeros(triangulation.n_edges, dtype=bool)
    for k, entry in enumerate(entries):
        where = f"edge_lengths[{k}]"
        if not (
            isinstance(entry, list)
            and len(entry) == 3
            and _is_int(entry[0])
            and _is_int(entry[1])
            and _is_number(entry[2])
        ):
            raise SurfaceSyntaxError(where, "expected [i, j, length]")
        i, j, length = entry
        if not i < j:
            raise SurfaceSyntaxError(where, f"edge key ({i}, {j}) must have i < j")
        e = index.get((i, j))
        if e is None:
            raise ExtraEdgeLength((i, j))
        if given[e]:
            raise SurfaceSyntaxError(where, f"edge ({i}, {j}) listed twice")
        if not (math.isfinite(length) and length > 0):
            raise NonPositiveLength((i, j), length)
        lengths[e] = length
        given[e] = True
    if not given.all():
        i, j = triangulation.edges[np.flatnonzero(~given)[0]]
        raise MissingEdgeLength((int(i), int(j)))
    return triangulation, PLMetric(triangulation, lengths)


def read_surface(path):
    return parse_surface_file(Path(path).read_text())


def serialize_surface(metric):
    """Canonical surface text; parsing it gives back the same surface."""
    T = metric.triangulation
    data = {
        "format_version": FORMAT_VERSION,
        "vertex_count": T.vertex_count,
        "faces": T.faces.tolist(),
        "edge_lengths": [
            [int(i), int(j), float(x)] for (i, j), x in zip(T.edges, metric.lengths)
        ],
    }
    return dump_json(data)


def surface_digest(metric):
    return "sha256:" + hashlib.sha256(serialize_surface(metric).encode()).hexdigest()


def parse_vector(text, n, what="factor"):
    """Parse a JSON array of ``n`` finite numbers."""
    data = _load_json(text, what)
    if not isinstance(data, list) or not all(_is_number(x) for x in data):
        raise SurfaceSyntaxError(what, "expected a JSON array of numbers")
    if len(data) != n:
        raise DimensionMismatch(n, len(data))
    values = np.array(data, dtype=float)
    if not np.all(np.isfinite(values)):
        raise SurfaceSyntaxError(what, "entries must be finite")
    return values


def parse_target(text, triangulation):
    """Prescribed target curvature; must sum to ``2*pi*chi``."""
    values = parse_vector(text, triangulation.vertex_count, "target")
    return TargetCurvature.prescribed(triangulation, values)


# -- reports ---------------------------------------------------------------

def _floats(a):
    return [float(x) for x in np.asarray(a, dtype=float).ravel()]


def _fraction(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def report_dict(result, metric=None, **extra):
    """Plain-data view of a result, with keys in a fixed order.

    ``result`` may be a :class:`FlowResult`, :class:`SolveResult`,
    :class:`ObstructionReport` or a curvature vector (ndarray).  Passing
    the input ``metric`` adds its digest (and, for curvature vectors, the
    Gauss-Bonnet defect).  ``extra`` items are appended verbatim.
    """
    if isinstance(result, FlowResult):
        out = {
            "kind": "flow",
            "status": result.status,
            "steps": result.steps,
            "rejected_steps": result.rejected_steps,
            "residual_final": float(result.residual_final),
            "u_final": _floats(result.u_final),
            "decay_rate": None,
            "decay_r_squared": None,
            "trace_rows": len(result.trace),
        }
        if result.decay_rate is not None:
            out["decay_rate"] = float(result.decay_rate[0])
            out["decay_r_squared"] = float(result.decay_rate[1])
    elif isinstance(result, SolveResult):
        out = {
            "kind": "solve",
            "status": result.status,
            "iters": result.iters,
            "grad_norm_final": float(result.grad_norm_final),
            "u_star": _floats(result.u_star),
            "step_kinds": list(result.step_kinds),
        }
    elif isinstance(result, ObstructionReport):
        out = {
            "kind": "obstruction",
            "passes": bool(result.passes),
            "global_ratio": _fraction(result.global_ratio),
            "worst_ratio": _fraction(result.worst_ratio),
            "worst_subset": sorted(int(v) for v in result.worst_subset),
            "subsets_checked": int(result.subsets_checked),
        }
    elif isinstance(result, np.ndarray):
        out = {"kind": "curvature", "curvature": _floats(result)}
        if metric is not None:
            chi = metric.triangulation.euler_characteristic
            out["gauss_bonnet_defect"] = float(result.sum() - TWO_PI * chi)
    else:
        raise TypeError(f"cannot report {type(result).__name__}")
    out.update(extra)
    if metric is not None:
        out["input_digest"] = surface_digest(metric)
    return out


def dump_json(data):
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def format_report(result, metric=None, **extra):
    return dump_json(report_dict(result, metric, **extra))


def write_report(result, path, metric=None, **extra):
    """Write a JSON report to ``path``; same inputs give the same bytes."""
    Path(path).write_text(format_report(result, metric, **extra))


def write_trace(trace, path):
    """Write flow trace rows as CSV with a header line."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for row in trace:
        writer.writerow([int(row[0])] + [repr(float(x)) for x in row[1:]])
    Path(path).write_text(buf.getvalue())
