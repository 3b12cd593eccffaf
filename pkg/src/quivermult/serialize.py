"""Lossless JSON round-tripping of scalars, quivers, points and systems.

Scalar text format: a rational is "p/q" (q omitted when 1); a complex scalar
is {"re": "p/q", "im": "p/q"}.  The combined string "a/b+c/di" is accepted on
input.  Matrices are row-major nested arrays.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import MomentLevel
from .errors import BundleFormatError
from .linalg import Matrix
from .quiver import Quiver
from .representation import RepPoint, vertex_space_dim
from .scalars import GaussianRational
from .systems import MeromorphicSystem, PoleData


class NonReducedRationalWarning(UserWarning):
    """A rational was given in non-lowest terms and has been normalized."""


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise BundleFormatError(f"bad rational {text!r}") from exc
    if text.lstrip("+") != str(value):
        warnings.warn(f"rational {text!r} normalized to {value}",
                      NonReducedRationalWarning, stacklevel=4)
    return value


def parse_scalar(obj) -> GaussianRational:
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im"}
        if extra:
            raise BundleFormatError(f"unknown scalar fields {sorted(extra)}")
        re = _parse_rational(str(obj.get("re", "0")))
        im = _parse_rational(str(obj.get("im", "0")))
        return GaussianRational(re, im)
    if isinstance(obj, int):
        return GaussianRational(obj)
    s = str(obj).replace(" ", "")
    if not s:
        raise BundleFormatError("empty scalar")
    if not s.endswith("i"):
        return GaussianRational(_parse_rational(s))
    body = s[:-1]
    split = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-":
            split = k
            break
    if split is None:
        re_txt, im_txt = "0", body
    else:
        re_txt, im_txt = body[:split], body[split:]
    if im_txt in ("", "+"):
        im = Fraction(1)
    elif im_txt == "-":
        im = Fraction(-1)
    else:
        im = _parse_rational(im_txt.lstrip("+"))
    return GaussianRational(_parse_rational(re_txt), im)


def scalar_to_json(x: GaussianRational):
    if x.im == 0:
        return str(x.re)
    return {"re": str(x.re), "im": str(x.im)}


def matrix_to_json(m: Matrix):
    return [[scalar_to_json(x) for x in m.row_list(i)] for i in range(m.rows)]


def parse_matrix(obj, rows=None, cols=None, where="matrix") -> Matrix:
    if not isinstance(obj, list):
        raise BundleFormatError(f"{where}: expected a nested array")
    r = len(obj)
    if r == 0:
        if rows not in (0, None) and rows != 0:
            raise BundleFormatError(f"{where}: expected {rows} rows, got 0")
        return Matrix.zeros(0 if rows is None else rows, cols or 0)
    widths = {len(row) for row in obj}
    if len(widths) != 1:
        raise BundleFormatError(f"{where}: ragged rows")
    c = widths.pop()
    if rows is not None and r != rows:
        raise BundleFormatError(f"{where}: expected {rows} rows, got {r}")
    if cols is not None and c != cols:
        raise BundleFormatError(f"{where}: expected {cols} columns, got {c}")
    return Matrix(r, c, [parse_scalar(x) for row in obj for x in row])


def quiver_to_json(q: Quiver):
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.name, "out": a.src, "in": a.dst} for a in q.arrows],
        "mult": {v: q.d(v) for v in q.vertices},
    }


def parse_quiver(obj) -> Quiver:
    try:
        arrows = [(a["id"], a["out"], a["in"]) for a in obj.get("arrows", [])]
        return Quiver(obj["vertices"], arrows, obj.get("mult", {}))
    except BundleFormatError:
        raise
    except Exception as exc:
        raise BundleFormatError(f"bad quiver: {exc}") from exc


def dims_to_json(dims):
    return {v: int(n) for v, n in dims.items()}


def parse_dims(obj, quiver: Quiver | None = None):
    dims = {str(v): int(n) for v, n in obj.items()}
    if quiver is not None:
        for v in dims:
            if v not in quiver.vertices:
                raise BundleFormatError(f"dims mention unknown vertex {v}")
    return dims


def level_to_json(level: MomentLevel):
    return {v: [scalar_to_json(c) for c in level[v]] for v in level.quiver.vertices}


def parse_level(obj, quiver: Quiver) -> MomentLevel:
    table = {}
    for v, coeffs in obj.items():
        if str(v) not in quiver.vertices:
            raise BundleFormatError(f"level mentions unknown vertex {v}")
        table[str(v)] = [parse_scalar(c) for c in coeffs]
    try:
        return MomentLevel(quiver, table)
    except Exception as exc:
        raise BundleFormatError(f"bad level: {exc}") from exc


def rep_to_json(point: RepPoint):
    return {
        "quiver": quiver_to_json(point.quiver),
        "dims": dims_to_json(point.dims),
        "mats": {name: {"fwd": matrix_to_json(f), "bwd": matrix_to_json(b)}
                 for name, (f, b) in sorted(point.mats.items())},
    }


def parse_rep(obj) -> RepPoint:
    q = parse_quiver(obj["quiver"])
    dims = parse_dims(obj.get("dims", {}), q)
    mats = {}
    for name, pair in obj.get("mats", {}).items():
        a = q.arrow(str(name)) if any(x.name == str(name) for x in q.arrows) else None
        if a is None:
            raise BundleFormatError(f"mats mention unknown arrow {name}")
        rows = vertex_space_dim(q, dims, a.dst)
        cols = vertex_space_dim(q, dims, a.src)
        fwd = parse_matrix(pair.get("fwd", []), rows, cols, where=f"arrow {name} fwd")
        bwd = parse_matrix(pair.get("bwd", []), cols, rows, where=f"arrow {name} bwd")
        mats[str(name)] = (fwd, bwd)
    try:
        return RepPoint(q, dims, mats)
    except Exception as exc:
        raise BundleFormatError(f"bad representation point: {exc}") from exc


def system_to_json(system: MeromorphicSystem):
    return {
        "rank": system.rank,
        "poles": [{"t": scalar_to_json(p.t), "order": p.order,
                   "coeffs": [matrix_to_json(c) for c in p.coeffs]}
                  for p in system.poles],
    }


def parse_system(obj) -> MeromorphicSystem:
    try:
        n = int(obj["rank"])
        poles = []
        for idx, p in enumerate(obj.get("poles", [])):
            order = int(p["order"])
            coeffs = [parse_matrix(c, n, n, where=f"pole {idx} coeff {j + 1}")
                      for j, c in enumerate(p.get("coeffs", []))]
            poles.append(PoleData(parse_scalar(p["t"]), order, tuple(coeffs)))
        return MeromorphicSystem(n, poles)
    except BundleFormatError:
        raise
    except Exception as exc:
        raise BundleFormatError(f"bad system: {exc}") from exc


@dataclass
class Bundle:
    """One JSON document holding any subset of the data kinds."""
    quiver: Quiver | None = None
    dims: dict | None = None
    level: MomentLevel | None = None
    rep: RepPoint | None = None
    system: MeromorphicSystem | None = None
    poles: list | None = None
    seed: int | None = None
    meta: dict = field(default_factory=dict)


def bundle_to_json(b: Bundle):
    out = {}
    if b.quiver is not None:
        out["quiver"] = quiver_to_json(b.quiver)
    if b.dims is not None:
        out["dims"] = dims_to_json(b.dims)
    if b.level is not None:
        out["lambda"] = level_to_json(b.level)
    if b.rep is not None:
        out["rep"] = rep_to_json(b.rep)
    if b.system is not None:
        out["system"] = system_to_json(b.system)
    if b.poles is not None:
        out["poles"] = [scalar_to_json(t) for t in b.poles]
    if b.seed is not None:
        out["seed"] = b.seed
    if b.meta:
        out["meta"] = b.meta
    return out


def parse_bundle_obj(obj) -> Bundle:
    if not isinstance(obj, dict):
        raise BundleFormatError("bundle must be a JSON object")
    b = Bundle()
    if "rep" in obj:
        b.rep = parse_rep(obj["rep"])
    if "quiver" in obj:
        b.quiver = parse_quiver(obj["quiver"])
    elif b.rep is not None:
        b.quiver = b.rep.quiver
    if "dims" in obj:
        b.dims = parse_dims(obj["dims"], b.quiver)
    elif b.rep is not None:
        b.dims = dict(b.rep.dims)
    if "lambda" in obj:
        if b.quiver is None:
            raise BundleFormatError("lambda requires a quiver section")
        b.level = parse_level(obj["lambda"], b.quiver)
    if "system" in obj:
        b.system = parse_system(obj["system"])
    if "poles" in obj:
        b.poles = [parse_scalar(t) for t in obj["poles"]]
    if "seed" in obj:
        b.seed = int(obj["seed"])
    b.meta = dict(obj.get("meta", {}))
    if b.rep is not None and "quiver" in obj:
        if b.rep.quiver.vertices != b.quiver.vertices:
            raise BundleFormatError("rep and bundle quivers disagree")
    return b


def parse_bundle(path) -> Bundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise BundleFormatError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise BundleFormatError(f"{path}: {exc}") from exc
    return parse_bundle_obj(obj)


def serialize_bundle(bundle: Bundle, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle_to_json(bundle), fh, indent=2)
        fh.write("\n")
