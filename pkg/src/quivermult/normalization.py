"""Normalization at an irregular pole vertex.

The quiver rewrite trades multiplicity d at the pole for d-2 parallel edges
to its base, and the point-level bijection moves the residue of the local
principal part into the moment level, with the residue-free remainder
parametrized by explicit orbit coordinates (a'_k, b'_k).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanData, MomentLevel, cartan_matrix
from .errors import (NotIrregularPole, NotSemisimpleLeading,
                     OrbitAssertionFailed, SizeMismatch, TopCoefficientZero)
from .linalg import Matrix, hstack, inverse, vstack
from .quiver import Quiver
from .reflection import _scalar_corner, _twisted_pair, local_principal_pair
from .representation import (RepPoint, check_level, gauge_act, local_principal,
                             pole_pair, set_vertex_pair, vertex_space_dim)
from .scalars import as_exact
from .truncated import MatPoly, PrincipalPart, coadjoint, nilpotent_on
from . import conventions


@dataclass(frozen=True)
class PoleVertexInfo:
    pole: str
    base: str
    is_irregular: bool


def pole_vertex_info(q: Quiver, i) -> PoleVertexInfo | None:
    """A pole vertex has exactly one incident edge, leading to a base of
    multiplicity one; it is irregular when its own multiplicity exceeds one."""
    i = str(i)
    incident = q.arrows_at(i)
    if len(incident) != 1:
        return None
    a = incident[0]
    j = a.dst if a.src == i else a.src
    if q.d(j) != 1:
        return None
    return PoleVertexInfo(i, j, q.d(i) > 1)


def _require_irregular(q: Quiver, i) -> PoleVertexInfo:
    info = pole_vertex_info(q, i)
    if info is None or not info.is_irregular:
        raise NotIrregularPole(f"vertex {i} is not an irregular pole vertex")
    return info


def _copy_name(name: str, pole: str) -> str:
    return f"{name}@{pole}"


def _extra_name(k: int, pole: str) -> str:
    return f"z{k}@{pole}"


def normalize_quiver(q: Quiver, i):
    """Quiver rewrite at an irregular pole: returns (new quiver, info)."""
    info = _require_irregular(q, i)
    i, j = info.pole, info.base
    d = q.d(i)
    edge = q.edges_between(i, j)[0]
    arrows = [(a.name, a.src, a.dst) for a in q.arrows if a.name != edge.name]
    for a in q.arrows:
        if a.name == edge.name:
            continue
        if a.dst == j:
            arrows.append((_copy_name(a.name, i), a.src, i))
        elif a.src == j:
            arrows.append((_copy_name(a.name, i), i, a.dst))
    for k in range(1, d - 1):
        arrows.append((_extra_name(k, i), j, i))
    mult = dict(q.mult)
    mult[i] = 1
    return Quiver(q.vertices, arrows, mult), info


@dataclass
class OrbitCoords:
    """Coordinate lists (a'_k, b'_k), k = 1..d-2, for the residue-free
    unipotent orbit at a two-block leading term."""
    a: list
    b: list


def assemble_orbit_element(coords: OrbitCoords, lam, p: int, quo: int) -> PrincipalPart:
    """Residue-free orbit element from coordinates: block pattern
    [[lam0*1 + a'b', -a'], [lam0*b' + b'a'b', -b'a']], where a' carries
    negative powers, b' positive ones, and only pole orders 2..d survive."""
    lam = [as_exact(c) for c in lam]
    d = len(lam)
    if len(coords.a) != max(d - 2, 0) or len(coords.b) != max(d - 2, 0):
        raise SizeMismatch("coordinate lists must have length d-2")
    if d >= 1 and not lam[-1]:
        raise TopCoefficientZero("top coefficient must be nonzero")
    n = p + quo
    out = PrincipalPart.zero(d, n)

    def add_block(order, r0, c0, m):
        if 2 <= order <= d and not m.is_zero():
            tgt = out.coeffs[order - 1]
            for r in range(m.rows):
                for c in range(m.cols):
                    tgt.data[(r0 + r) * n + (c0 + c)] = (
                        tgt.data[(r0 + r) * n + (c0 + c)] + m.at(r, c))

    # scalar part lam0 * 1_p on the top-left block, orders 2..d
    for order in range(2, d + 1):
        add_block(order, 0, 0, Matrix.scalar(p, lam[order - 1]))
    ka = range(1, d - 1)
    # B12 = -a'
    for k in ka:
        add_block(k + 1, 0, p, -coords.a[k - 1])
    # B11 += a'(z) b'(z): order (k+1) - s
    for k in ka:
        for s in ka:
            add_block(k + 1 - s, 0, 0, coords.a[k - 1] @ coords.b[s - 1])
    # B22 = -b'(z) a'(z)
    for s in ka:
        for k in ka:
            add_block(k + 1 - s, p, p, -(coords.b[s - 1] @ coords.a[k - 1]))
    # B21 = lam0 b' + b' a' b'
    for s in ka:
        for order in range(2, d + 1):
            m = order + s
            if m <= d:
                add_block(order, p, 0, coords.b[s - 1].scale(lam[m - 1]))
    for s in ka:
        for k in ka:
            for t in ka:
                add_block(k + 1 - s - t, p, 0,
                          coords.b[s - 1] @ coords.a[k - 1] @ coords.b[t - 1])
    return out


def extract_orbit_coords(bloc: PrincipalPart, lam, p: int, quo: int) -> OrbitCoords:
    """Invert assemble_orbit_element; the input must be a residue-free
    element with leading coefficient diag(top * 1_p, 0)."""
    lam = [as_exact(c) for c in lam]
    d = len(lam)
    n = p + quo
    if bloc.d != d or bloc.n != n:
        raise SizeMismatch("orbit element has wrong order or size")
    top = lam[-1]
    if not top:
        raise TopCoefficientZero("top coefficient must be nonzero")
    if d >= 1 and not bloc.residue().is_zero():
        raise OrbitAssertionFailed("orbit element must be residue-free")
    lead = Matrix.zeros(n, n)
    for t in range(p):
        lead.data[t * n + t] = top
    if bloc.leading() != lead:
        raise OrbitAssertionFailed("leading coefficient is not the split scalar")
    a = [-bloc.coeffs[k].sub(0, p, p, n) for k in range(1, d - 1)]
    b = []
    for t in range(1, d - 1):
        m = d - t
        rhs = bloc.coeffs[m - 1].sub(p, n, 0, p)
        for s in range(1, t):
            b11 = bloc.coeffs[m + s - 1].sub(0, p, 0, p)
            rhs = rhs - b[s - 1] @ b11
        b.append(rhs.scale(1 / top))
    coords = OrbitCoords(a, b)
    if assemble_orbit_element(coords, lam, p, quo) != bloc:
        raise OrbitAssertionFailed("orbit element is not on the unipotent orbit")
    return coords


@dataclass
class NormalizedBundle:
    quiver: Quiver
    dims: dict
    level: MomentLevel
    point: RepPoint
    meta: dict


def _rest_moment_at_base(point: RepPoint, j: str, skip_arrow: str) -> Matrix:
    """Moment contribution at the base from every arrow except the pole edge
    (base multiplicity is one, so this is a plain square matrix)."""
    q, dims = point.quiver, point.dims
    n = vertex_space_dim(q, dims, j)
    acc = Matrix.zeros(n, n)
    for a in q.arrows_at(j):
        if a.name == skip_arrow:
            continue
        f, b = point.mats[a.name]
        if a.dst == j:
            acc = acc + (f @ b).scale(conventions.eps(True))
        else:
            acc = acc + (b @ f).scale(conventions.eps(False))
    return acc


def normalize_point(point: RepPoint, level: MomentLevel, i) -> NormalizedBundle:
    """Carry a point on the moment level across the normalization at an
    irregular pole vertex."""
    q, dims = point.quiver, point.dims
    info = _require_irregular(q, i)
    i, j = info.pole, info.base
    d = q.d(i)
    lam = level[i]
    if not lam[-1]:
        raise TopCoefficientZero(f"level at {i} has zero top coefficient")
    if not check_level(point, level):
        raise OrbitAssertionFailed("point is not on the stated moment level")
    vi, vj = dims[i], dims[j]
    if vi > vj:
        raise OrbitAssertionFailed("pole dimension exceeds the base dimension")
    edge = q.edges_between(i, j)[0]

    local = local_principal(point, i)
    from .truncated import spectral_split
    try:
        gauge, p = spectral_split(local, lam[-1])
    except NotSemisimpleLeading as exc:
        raise OrbitAssertionFailed(str(exc)) from exc
    if p != vi or coadjoint(gauge, local) != _scalar_corner(d, vj, vi, list(lam)):
        raise OrbitAssertionFailed("local part is not on the expected orbit")

    # constant alignment at the base so the splitting becomes the
    # coordinate splitting V_j = V_i (+) V_j/V_i
    const = MatPoly.constant(1, gauge.coeffs[0])
    aligned = gauge_act({j: const}, point)
    local = local_principal(aligned, i)

    zeta = level.residue(j)
    rest = _rest_moment_at_base(aligned, j, edge.name)
    expected_res = -(rest + Matrix.scalar(vj, zeta))
    if local.residue() != expected_res:
        raise OrbitAssertionFailed("residue bookkeeping failed at the base")
    bloc = PrincipalPart([Matrix.zeros(vj, vj)] + local.coeffs[1:], vj)
    coords = extract_orbit_coords(bloc, lam, vi, vj - vi)

    new_q, _ = normalize_quiver(q, i)
    new_dims = dict(dims)
    new_dims[j] = vj - vi
    lam_table = {v: list(level[v]) for v in q.vertices}
    lam_table[i] = [as_exact(lam[0]) + zeta]
    lam_table[j] = [zeta]
    new_level = MomentLevel(new_q, lam_table)

    mats = {}
    for a in q.arrows:
        if a.name == edge.name:
            continue
        f, b = aligned.mats[a.name]
        if a.dst == j:
            mats[_copy_name(a.name, i)] = (f.sub(0, vi, 0, f.cols),
                                           b.sub(0, b.rows, 0, vi))
            mats[a.name] = (f.sub(vi, vj, 0, f.cols),
                            b.sub(0, b.rows, vi, vj))
        elif a.src == j:
            mats[_copy_name(a.name, i)] = (f.sub(0, f.rows, 0, vi),
                                           b.sub(0, vi, 0, b.cols))
            mats[a.name] = (f.sub(0, f.rows, vi, vj),
                            b.sub(vi, vj, 0, b.cols))
        else:
            mats[a.name] = (f, b)
    for k in range(1, d - 1):
        mats[_extra_name(k, i)] = (coords.a[k - 1], coords.b[k - 1])
    new_point = RepPoint(new_q, new_dims, mats)

    if not check_level(new_point, new_level):
        raise OrbitAssertionFailed("normalized point violates its moment level")
    meta = {
        "pole": i,
        "base": j,
        "pole_order": d,
        "edge_name": edge.name,
        "edge_src": edge.src,
        "edge_dst": edge.dst,
    }
    return NormalizedBundle(new_q, new_dims, new_level, new_point, meta)


def denormalize_point(bundle: NormalizedBundle, lam_i):
    """Inverse of normalize_point up to gauge, for a caller-chosen level at
    the pole whose residue matches the bundle."""
    meta = bundle.meta
    i, j, d = meta["pole"], meta["base"], meta["pole_order"]
    q, dims = bundle.quiver, bundle.dims
    lam_i = [as_exact(c) for c in lam_i]
    if len(lam_i) != d:
        raise SizeMismatch("pole level length must equal the original order")
    if not lam_i[-1]:
        raise TopCoefficientZero("top coefficient must be nonzero")
    zeta = bundle.level.residue(j)
    if lam_i[0] != bundle.level.residue(i) - zeta:
        raise OrbitAssertionFailed("pole residue does not match the bundle")

    vi = dims[i]
    quo = dims[j]
    vj = vi + quo
    coords = OrbitCoords([bundle.point.fwd(_extra_name(k, i)) for k in range(1, d - 1)],
                         [bundle.point.bwd(_extra_name(k, i)) for k in range(1, d - 1)])
    bloc = assemble_orbit_element(coords, lam_i, vi, quo)

    old_arrows = []
    merged = {}
    for a in q.arrows:
        if a.name.endswith(f"@{i}") or a.name == meta["edge_name"]:
            continue
        copy = _copy_name(a.name, i)
        cf, cb = bundle.point.mats.get(copy, (None, None))
        f, b = bundle.point.mats[a.name]
        if j in (a.src, a.dst) and cf is None:
            raise OrbitAssertionFailed(f"bundle lacks the rerouted copy of {a.name}")
        if a.dst == j:
            merged[a.name] = (vstack([cf, f]), hstack([cb, b]))
            old_arrows.append((a.name, a.src, a.dst))
        elif a.src == j:
            merged[a.name] = (hstack([cf, f]), vstack([cb, b]))
            old_arrows.append((a.name, a.src, a.dst))
        else:
            merged[a.name] = (f, b)
            old_arrows.append((a.name, a.src, a.dst))
    old_arrows.append((meta["edge_name"], meta["edge_src"], meta["edge_dst"]))
    mult = dict(q.mult)
    mult[i] = d
    old_q = Quiver(q.vertices, old_arrows, mult)
    old_dims = dict(dims)
    old_dims[j] = vj

    rest = Matrix.zeros(vj, vj)
    for name, src, dst in old_arrows[:-1]:
        if j not in (src, dst):
            continue
        f, b = merged[name]
        if dst == j:
            rest = rest + (f @ b).scale(conventions.eps(True))
        else:
            rest = rest + (b @ f).scale(conventions.eps(False))

    local = PrincipalPart([-(rest + Matrix.scalar(vj, zeta))] + bloc.coeffs[1:], vj)
    from .truncated import spectral_split
    try:
        gauge, p = spectral_split(local, lam_i[-1])
    except NotSemisimpleLeading as exc:
        raise OrbitAssertionFailed(str(exc)) from exc
    if p != vi or coadjoint(gauge, local) != _scalar_corner(d, vj, vi, lam_i):
        raise OrbitAssertionFailed("assembled local part left the expected orbit")
    base_in, base_out = pole_pair(d, vi, vj, lam_i)
    nilp = nilpotent_on(vi, d)
    b_in, b_out = _twisted_pair(base_in, base_out, gauge, nilp)
    if local_principal_pair(b_in, b_out, nilp, d, vj) != local:
        raise OrbitAssertionFailed("twisted pair does not reproduce the local part")

    blank = RepPoint.zero(old_q, old_dims).with_mats(merged)
    old_point = set_vertex_pair(blank, i, b_in, b_out)

    lam_table = {v: list(bundle.level[v]) for v in q.vertices}
    lam_table[i] = lam_i
    lam_table[j] = [zeta]
    old_level = MomentLevel(old_q, lam_table)
    if not check_level(old_point, old_level):
        raise OrbitAssertionFailed("denormalized point violates its moment level")
    return old_point, old_level, old_dims


# -- root-lattice comparison --------------------------------------------------

@dataclass
class PhiWeylReport:
    form_identity: bool
    residue_identity: bool
    sigma_fixes_cartan: bool
    equivariance: bool
    samples: int

    @property
    def all_ok(self) -> bool:
        return (self.form_identity and self.residue_identity
                and self.sigma_fixes_cartan and self.equivariance)


def _mat_int(rows):
    return [list(r) for r in rows]


def _mul_int(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def _transpose_int(a):
    return [list(col) for col in zip(*a)]


def phi_weyl_check(q: Quiver, i, seed: int = 0, samples: int = 25) -> PhiWeylReport:
    """Exact comparison of the root data before and after normalization:
    the lattice map phi preserves the symmetrized form, intertwines residues,
    and conjugates the pole reflection to the pole/base swap."""
    import random

    info = _require_irregular(q, i)
    i, j = info.pole, info.base
    cd = cartan_matrix(q)
    new_q, _ = normalize_quiver(q, i)
    cd2 = cartan_matrix(new_q)
    n = cd.size
    ii, jj = q.index(i), q.index(j)

    phi = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    phi[jj][ii] = -1
    phi_inv = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    phi_inv[jj][ii] = 1

    dc = _mat_int(cd.b)
    dc2 = _mat_int(cd2.b)
    form_ok = _mul_int(_transpose_int(phi), _mul_int(dc2, phi)) == dc

    sigma = list(range(n))
    sigma[ii], sigma[jj] = jj, ii
    sigma_ok = all(cd2.c[sigma[r]][sigma[c]] == cd2.c[r][c]
                   for r in range(n) for c in range(n))

    def s_mat(c, k):
        m = [[1 if r == t else 0 for t in range(n)] for r in range(n)]
        for t in range(n):
            m[k][t] -= c[k][t]
        return m

    def perm_mat(p):
        return [[1 if r == p[c] else 0 for c in range(n)] for r in range(n)]

    sig = perm_mat(sigma)
    equiv_ok = True
    tphi_inv = _transpose_int(phi_inv)
    for k in range(n):
        sk = s_mat(cd.c, k)
        if k == ii:
            target = _mul_int(sig, phi)
            target_res = _mul_int(sig, tphi_inv)
        else:
            target = _mul_int(s_mat(cd2.c, k), phi)
            target_res = _mul_int(_transpose_int(s_mat(cd2.c, k)), tphi_inv)
        if _mul_int(phi, sk) != target:
            equiv_ok = False
        if _mul_int(tphi_inv, _transpose_int(sk)) != target_res:
            equiv_ok = False

    rng = random.Random(seed)
    residue_ok = True
    for _ in range(samples):
        lam_table = {v: [rng.randint(-4, 4) for _ in range(q.d(v))]
                     for v in q.vertices}
        level = MomentLevel(q, lam_table)
        res = [level.residue(v) for v in q.vertices]
        lam2_table = dict(lam_table)
        lam2_table[i] = [level.residue(i) + level.residue(j)]
        lam2_table[j] = [level.residue(j)]
        level2 = MomentLevel(new_q, lam2_table)
        res2 = [level2.residue(v) for v in q.vertices]
        mapped = [sum(as_exact(tphi_inv[r][c]) * res[c] for c in range(n))
                  for r in range(n)]
        if mapped != res2:
            residue_ok = False
        dims = {v: rng.randint(0, 4) for v in q.vertices}
        dims2 = dict(dims)
        dims2[j] = dims[j] - dims[i]
        lhs = sum(as_exact(dims[v]) * level.residue(v) for v in q.vertices)
        rhs = sum(as_exact(dims2[v]) * level2.residue(v) for v in q.vertices)
        if lhs != rhs:
            residue_ok = False
    return PhiWeylReport(form_ok, residue_ok, sigma_ok, equiv_ok, samples)
