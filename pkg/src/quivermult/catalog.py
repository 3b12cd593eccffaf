"""The Painleve classification table: star quivers per pole-order tuple,
their Kac-Moody types, dimensions, and normalization chains."""

from __future__ import annotations

import json

from .cartan import cartan_matrix
from .dynkin import (PAINLEVE_EQUATIONS, PAINLEVE_LABELS, PAINLEVE_TUPLES,
                     PAINLEVE_ZERO_DIM_TUPLES, quiver_type, star_quiver)
from .normalization import normalize_quiver, pole_vertex_info
from .quiver import Quiver


def rank2_dims(q: Quiver) -> dict:
    """The central-rank-two dimension vector: 2 at the center, 1 on legs."""
    dims = {v: 1 for v in q.vertices}
    dims[q.vertices[0]] = 2
    return dims


def normalization_chain(q: Quiver):
    """Repeatedly normalize at the first irregular pole vertex; returns the
    list of type labels visited (first entry = the input type)."""
    labels = [quiver_type(q)]
    cur = q
    while True:
        pole = None
        for v in cur.vertices:
            info = pole_vertex_info(cur, v)
            if info is not None and info.is_irregular:
                pole = v
                break
        if pole is None:
            return labels
        cur, _ = normalize_quiver(cur, pole)
        labels.append(quiver_type(cur))


def painleve_catalog():
    """One row per pole tuple of the rank-two classification."""
    rows = []
    for tup in PAINLEVE_TUPLES + PAINLEVE_ZERO_DIM_TUPLES:
        q = star_quiver(tup)
        cd = cartan_matrix(q)
        dims = rank2_dims(q)
        chain = normalization_chain(q)
        weyl = [f"W({a}) = W({b}) : Z/2" for a, b in zip(chain, chain[1:])]
        rows.append({
            "tuple": list(tup),
            "equation": PAINLEVE_EQUATIONS.get(tup),
            "type": chain[0],
            "expected_type": PAINLEVE_LABELS[tup],
            "dimension": cd.variety_dimension(dims),
            "normalization_chain": chain,
            "weyl_decompositions": weyl,
            "quiver_vertices": list(q.vertices),
            "multiplicities": {v: q.d(v) for v in q.vertices},
        })
    return rows


def format_catalog(rows, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    lines = []
    lines.append("pole tuple   equation  type      dim  normalization chain")
    lines.append("-" * 70)
    for r in rows:
        tup = "+".join(str(x) for x in r["tuple"])
        eq = r["equation"] or "-"
        chain = " -> ".join(r["normalization_chain"])
        lines.append(f"{tup:<12} {eq:<9} {r['type']:<9} {r['dimension']:<4} {chain}")
        for w in r["weyl_decompositions"]:
            lines.append(f"{'':<12} {'':<9} {w}")
    return "\n".join(lines) + "\n"
