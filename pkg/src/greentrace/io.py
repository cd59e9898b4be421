"""File formats: flux/trace/curvature CSV files and anchors/map-spec/report JSON."""

import csv
import json

import numpy as np

from .errors import ValidationError
from .forward import parse_map_spec
from .mapping import Anchors

FLOAT_FMT = "%.17g"


def _fmt(x):
    return FLOAT_FMT % x


def _write_csv(path, header, columns):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([_fmt(v) for v in row])


def _read_csv(path, header):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [h.strip() for h in rows[0]] != list(header):
        raise ValidationError(f"{path}: expected header {','.join(header)}")
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != len(header):
        raise ValidationError(f"{path}: expected {len(header)} numeric columns")
    return data


def infer_perimeter(s):
    """Perimeter of a uniform grid ``s_j = j L / N``: last node plus one spacing."""
    s = np.asarray(s, dtype=float)
    n = s.size
    if n < 2:
        raise ValidationError("need at least two arclength samples")
    return s[-1] * n / (n - 1)


def check_uniform_grid(s, L):
    s = np.asarray(s, dtype=float)
    expected = L * np.arange(s.size) / s.size
    if np.abs(s - expected).max() > 1e-9 * L:
        raise ValidationError("arclength column must be a uniform grid starting at 0")


def read_flux_csv(path, perimeter=None):
    """Return ``(phi, L)`` from a ``s,phi`` file."""
    data = _read_csv(path, ("s", "phi"))
    s, phi = data[:, 0], data[:, 1]
    L = infer_perimeter(s) if perimeter is None else float(perimeter)
    check_uniform_grid(s, L)
    return phi, L


def write_flux_csv(path, profile):
    _write_csv(path, ("s", "phi"), (profile.grid, profile.samples))


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _complex(pair, name):
    try:
        re, im = pair
        return complex(float(re), float(im))
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a [re, im] pair") from None


def read_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: {exc}") from None


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def read_anchors(path):
    obj = read_json(path)
    zc = _complex(obj.get("zeta_c", [0.0, 0.0]), "zeta_c")
    if "zeta_b" not in obj:
        return zc, None
    return zc, _complex(obj["zeta_b"], "zeta_b")


def anchors_to_dict(anchors):
    return {"zeta_c": _pair(anchors.zeta_c), "zeta_b": _pair(anchors.zeta_b)}


def write_anchors(path, anchors):
    write_json(path, anchors_to_dict(anchors))


def anchors_from_dict(obj):
    return Anchors(_complex(obj["zeta_c"], "zeta_c"), _complex(obj["zeta_b"], "zeta_b"))


def read_map_spec(path):
    obj = read_json(path)
    try:
        return parse_map_spec(obj)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: malformed map spec ({exc})") from None


def write_trace_csv(path, trace):
    pts = trace.points
    _write_csv(
        path,
        ("theta", "x", "y", "s", "psi", "kappa"),
        (trace.theta, pts.real, pts.imag, trace.arclength, trace.tangent_angle, trace.curvature),
    )


def read_trace_csv(path):
    """Columns ``theta, x, y, s, psi, kappa`` as a dict of arrays (``points`` complex)."""
    d = _read_csv(path, ("theta", "x", "y", "s", "psi", "kappa"))
    return {
        "theta": d[:, 0],
        "points": d[:, 1] + 1j * d[:, 2],
        "s": d[:, 3],
        "psi": d[:, 4],
        "kappa": d[:, 5],
    }


def write_level_csv(path, theta, points):
    _write_csv(path, ("theta", "x", "y"), (theta, points.real, points.imag))


def write_curvature_csv(path, s, kappa):
    _write_csv(path, ("s", "kappa"), (s, kappa))


def read_curvature_csv(path):
    d = _read_csv(path, ("s", "kappa"))
    return d[:, 0], d[:, 1]
