"""Dynkin diagram recognition against a catalog of quiver realizations.

Each catalog label is generated by an explicit quiver with multiplicities;
recognition compares Cartan matrices up to a simultaneous permutation of the
index set, found by backtracking (diagram sizes here never exceed eight).
"""

from __future__ import annotations

from .cartan import CartanData, cartan_matrix
from .quiver import Quiver

MAX_CATALOG_RANK = 8


# -- quiver builders ------------------------------------------------------

def path_quiver(mults, prefix="v") -> Quiver:
    """Chain v0 - v1 - ... with the given multiplicities."""
    n = len(mults)
    verts = [f"{prefix}{k}" for k in range(n)]
    arrows = [(f"e{k}", verts[k], verts[k + 1]) for k in range(n - 1)]
    return Quiver(verts, arrows, dict(zip(verts, mults)))


def star_quiver(leg_mults) -> Quiver:
    """Central vertex "0" with one length-one leg per entry; arrows point
    from the legs into the center."""
    legs = [str(k + 1) for k in range(len(leg_mults))]
    verts = ["0"] + legs
    arrows = [(f"a{leg}", leg, "0") for leg in legs]
    mult = {"0": 1}
    mult.update({leg: int(d) for leg, d in zip(legs, leg_mults)})
    return Quiver(verts, arrows, mult)


def cycle_quiver(n, prefix="v") -> Quiver:
    verts = [f"{prefix}{k}" for k in range(n)]
    arrows = [(f"e{k}", verts[k], verts[(k + 1) % n]) for k in range(n)]
    return Quiver(verts, arrows)


def multi_edge_quiver(edges) -> Quiver:
    """Two vertices joined by the given number of parallel edges."""
    arrows = [(f"e{k}", "u", "w") for k in range(edges)]
    return Quiver(["u", "w"], arrows)


def forked_path_quiver(mults, fork_at_start=False, fork_at_end=False,
                       prefix="v") -> Quiver:
    """Chain with two extra multiplicity-one prongs at either end."""
    base = path_quiver(mults, prefix=prefix)
    verts = list(base.vertices)
    arrows = [(a.name, a.src, a.dst) for a in base.arrows]
    mult = dict(base.mult)
    if fork_at_start:
        for tag in ("p", "q"):
            verts.append(f"{prefix}_{tag}s")
            arrows.append((f"f{tag}s", f"{prefix}_{tag}s", verts[0]))
            mult[f"{prefix}_{tag}s"] = 1
    if fork_at_end:
        for tag in ("p", "q"):
            verts.append(f"{prefix}_{tag}e")
            arrows.append((f"f{tag}e", f"{prefix}_{tag}e", f"{prefix}{len(mults) - 1}"))
            mult[f"{prefix}_{tag}e"] = 1
    return Quiver(verts, arrows, mult)


# -- catalog ---------------------------------------------------------------

def _catalog_builders():
    table = []
    for n in range(1, MAX_CATALOG_RANK + 1):
        table.append((f"A_{n}", lambda n=n: path_quiver([1] * n)))
    for n in range(2, MAX_CATALOG_RANK + 1):
        table.append((f"C_{n}", lambda n=n: path_quiver([2] + [1] * (n - 1))))
    for n in range(4, MAX_CATALOG_RANK + 1):
        table.append((f"D_{n}", lambda n=n: forked_path_quiver([1] * (n - 2), fork_at_start=True)))
    table.append(("G_2", lambda: path_quiver([3, 1])))

    table.append(("A_1^(1)", lambda: multi_edge_quiver(2)))
    for n in range(2, MAX_CATALOG_RANK):
        table.append((f"A_{n}^(1)", lambda n=n: cycle_quiver(n + 1)))
    for n in range(2, MAX_CATALOG_RANK):
        table.append((f"C_{n}^(1)", lambda n=n: path_quiver([2] + [1] * (n - 1) + [2])))
    for n in range(4, MAX_CATALOG_RANK):
        table.append((f"D_{n}^(1)",
                      lambda n=n: forked_path_quiver([1] * (n - 3), fork_at_start=True,
                                                     fork_at_end=True)))
    table.append(("A_2^(2)", lambda: path_quiver([4, 1])))
    # Twisted A-types: multiplicity-two head, then a chain ending in a fork.
    for m in range(3, 5):
        table.append((f"A_{2 * m - 1}^(2)",
                      lambda m=m: forked_path_quiver([2] + [1] * (m - 2), fork_at_end=True)))
    table.append(("D_3^(2)", lambda: path_quiver([1, 2, 1])))
    table.append(("D_4^(3)", lambda: path_quiver([3, 1, 1])))
    return table


_CATALOG = None


def catalog():
    """List of (label, quiver, cartan matrix rows) for every known type."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = []
        for label, build in _catalog_builders():
            q = build()
            _CATALOG.append((label, q, cartan_matrix(q).c))
    return _CATALOG


def _row_profile(c, i):
    return (c[i][i], tuple(sorted(c[i])), tuple(sorted(row[i] for row in c)))


def _permutation_match(c1, c2) -> bool:
    """Does a simultaneous index permutation carry c1 onto c2?"""
    n = len(c1)
    if len(c2) != n:
        return False
    prof1 = [_row_profile(c1, i) for i in range(n)]
    prof2 = [_row_profile(c2, i) for i in range(n)]
    if sorted(prof1) != sorted(prof2):
        return False
    assignment = [None] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if j in assignment[:i]:
                continue
            if prof1[i] != prof2[j]:
                continue
            ok = True
            for k in range(i):
                jk = assignment[k]
                if c1[i][k] != c2[j][jk] or c1[k][i] != c2[jk][j]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                if extend(i + 1):
                    return True
                assignment[i] = None
        return False

    return extend(0)


def dynkin_type(cd: CartanData) -> str:
    """Catalog label of the Cartan matrix up to permutation, or
    "unrecognized"."""
    if cd.size > MAX_CATALOG_RANK:
        return "unrecognized"
    for label, _q, c in catalog():
        if _permutation_match(cd.c, c):
            return label
    return "unrecognized"


def quiver_type(q: Quiver) -> str:
    return dynkin_type(cartan_matrix(q))


# -- Painleve data ----------------------------------------------------------

PAINLEVE_TUPLES = [(1, 1, 1, 1), (2, 1, 1), (3, 1), (2, 2), (4,)]
PAINLEVE_ZERO_DIM_TUPLES = [(1, 1, 1), (2, 1), (3,)]

PAINLEVE_LABELS = {
    (1, 1, 1, 1): "D_4^(1)",
    (2, 1, 1): "A_5^(2)",
    (3, 1): "D_4^(3)",
    (2, 2): "C_2^(1)",
    (4,): "A_2^(2)",
    (1, 1, 1): "D_4",
    (2, 1): "C_3",
    (3,): "G_2",
}

PAINLEVE_EQUATIONS = {
    (1, 1, 1, 1): "P_VI",
    (2, 1, 1): "P_V",
    (3, 1): "P_IV",
    (2, 2): "P_III",
    (4,): "P_II",
}
