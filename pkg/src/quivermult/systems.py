"""Meromorphic systems on the sphere, minimal realizations, middle
convolution, and the dictionary with star-quiver representation points.

A system is stored by its pole locations with local principal-part
coefficients: A(z) = sum_i sum_j A_{i,j} (z - t_i)^{-j}, with possibly one
extra simple pole at infinity carrying residue -sum_i A_{i,1}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import MomentLevel
from .errors import (EmptySpace, OrbitAssertionFailed, SizeMismatch,
                     TopCoefficientZero, TraceConditionViolated)
from .linalg import (Matrix, complement_columns, hstack, inverse,
                     is_invertible_matrix, kernel_basis, rank, solve,
                     spans_matrix_algebra, vstack)
from .quiver import Quiver
from .representation import (RepPoint, check_level, local_principal,
                             pole_pair, set_vertex_pair)
from .reflection import _scalar_corner, _twisted_pair, local_principal_pair
from .scalars import GaussianRational, as_exact
from .truncated import (MatPoly, PrincipalPart, coadjoint, nilpotent_on,
                        spectral_split)
from .errors import NotSemisimpleLeading


@dataclass(frozen=True)
class PoleData:
    t: GaussianRational
    order: int
    coeffs: tuple  # coeffs[j-1] multiplies (z - t)^{-j}


class MeromorphicSystem:
    __slots__ = ("rank", "poles")

    def __init__(self, rank: int, poles):
        self.rank = int(rank)
        built = []
        seen = []
        for p in poles:
            t = as_exact(p.t if isinstance(p, PoleData) else p[0])
            order = int(p.order if isinstance(p, PoleData) else p[1])
            coeffs = tuple(p.coeffs if isinstance(p, PoleData) else p[2])
            if order < 1 or len(coeffs) != order:
                raise SizeMismatch("pole order and coefficient count disagree")
            for c in coeffs:
                if c.rows != self.rank or c.cols != self.rank:
                    raise SizeMismatch("coefficient size differs from the rank")
            if t in seen:
                raise SizeMismatch("poles must be pairwise distinct")
            seen.append(t)
            built.append(PoleData(t, order, coeffs))
        self.poles = tuple(built)

    def local_part(self, idx: int) -> PrincipalPart:
        p = self.poles[idx]
        return PrincipalPart(list(p.coeffs), self.rank)

    def residue_total(self) -> Matrix:
        acc = Matrix.zeros(self.rank, self.rank)
        for p in self.poles:
            acc = acc + p.coeffs[0]
        return acc

    def map_coeffs(self, fn) -> "MeromorphicSystem":
        return MeromorphicSystem(self.rank, [
            PoleData(p.t, p.order, tuple(fn(c) for c in p.coeffs))
            for p in self.poles])

    def __eq__(self, other):
        if not isinstance(other, MeromorphicSystem):
            return NotImplemented
        return self.rank == other.rank and self.poles == other.poles

    def __repr__(self):
        return f"MeromorphicSystem(rank={self.rank}, poles={len(self.poles)})"


def is_irreducible_system(system: MeromorphicSystem) -> bool:
    """No common invariant subspace of all coefficient matrices."""
    if system.rank < 1:
        raise EmptySpace("irreducibility of a rank-zero system")
    gens = [c for p in system.poles for c in p.coeffs if not c.is_zero()]
    return spans_matrix_algebra(gens, system.rank)


@dataclass
class RealizationBlock:
    t: GaussianRational
    nilp: Matrix          # nilpotent part on this block
    x: Matrix             # block -> V
    y: Matrix             # V -> block

    @property
    def dim(self) -> int:
        return self.nilp.rows


@dataclass
class Realization:
    """Quadruple presentation A(z) = X (z - T)^{-1} Y split into the
    generalized eigenblocks of T."""
    rank: int
    blocks: list

    @property
    def w_dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    def x_full(self) -> Matrix:
        mats = [b.x for b in self.blocks]
        return hstack(mats) if mats else Matrix.zeros(self.rank, 0)

    def y_full(self) -> Matrix:
        mats = [b.y for b in self.blocks]
        return vstack(mats) if mats else Matrix.zeros(0, self.rank)

    def t_full(self) -> Matrix:
        w = self.w_dim
        out = Matrix.zeros(w, w)
        off = 0
        for b in self.blocks:
            for r in range(b.dim):
                for c in range(b.dim):
                    x = b.nilp.at(r, c)
                    if r == c:
                        x = x + b.t
                    out.data[(off + r) * w + (off + c)] = x
            off += b.dim
        return out

    def coeff(self, i: int, j: int) -> Matrix:
        b = self.blocks[i]
        cur = b.y
        for _ in range(j - 1):
            cur = b.nilp @ cur
        return b.x @ cur

    def to_system(self, orders) -> MeromorphicSystem:
        poles = []
        for i, b in enumerate(self.blocks):
            coeffs = [self.coeff(i, j) for j in range(1, orders[i] + 1)]
            poles.append(PoleData(b.t, orders[i], tuple(coeffs)))
        return MeromorphicSystem(self.rank, poles)


def _restrict_block(nilp, x, y):
    """Cut down to the smallest N-stable subspace containing range(Y), then
    divide out the largest N-stable subspace killed by all X N^m."""
    w = nilp.rows
    reach = [y]
    cur = y
    for _ in range(w - 1):
        cur = nilp @ cur
        if cur.is_zero():
            break
        reach.append(cur)
    span = hstack(reach) if reach else Matrix.zeros(w, 0)
    from .linalg import rref
    _, pivots = rref(span)
    basis = span.select_columns(pivots)
    nilp1 = solve(basis, nilp @ basis)
    y1 = solve(basis, y)
    if nilp1 is None or y1 is None:
        raise OrbitAssertionFailed("restriction failed to close up")
    x1 = x @ basis

    r = basis.cols
    obs = [x1]
    cur = x1
    for _ in range(r - 1):
        cur = cur @ nilp1
        if cur.is_zero():
            break
        obs.append(cur)
    killed = kernel_basis(vstack(obs))
    if not killed:
        return nilp1, x1, y1
    comp = complement_columns(killed, r)
    u = hstack(killed + comp)
    uinv = inverse(u)
    proj = uinv.sub(len(killed), r, 0, r)
    cmat = hstack(comp) if comp else Matrix.zeros(r, 0)
    return proj @ nilp1 @ cmat, x1 @ cmat, proj @ y1


def minimal_realization(system: MeromorphicSystem) -> Realization:
    """Per-pole companion realization reduced until both non-degeneracy
    conditions hold; unique up to isomorphism of quadruples."""
    n = system.rank
    if n < 1:
        raise EmptySpace("realization of a rank-zero system")
    blocks = []
    for p in system.poles:
        k = p.order
        nilp = nilpotent_on(n, k)
        x = Matrix.zeros(n, n * k)
        for t in range(n):
            x.data[t * (n * k) + t] = as_exact(1)
        y = vstack(list(p.coeffs))
        nilp, x, y = _restrict_block(nilp, x, y)
        blocks.append(RealizationBlock(p.t, nilp, x, y))
    return Realization(n, blocks)


def realization_conditions(real: Realization) -> bool:
    """Exact check of the two non-degeneracy conditions on every block."""
    for b in real.blocks:
        w = b.dim
        if rank(vstack([b.x, b.nilp])) != w:
            return False
        if w and rank(hstack([b.y, b.nilp])) != w:
            return False
    return True


def realization_identity_holds(real: Realization, system: MeromorphicSystem) -> bool:
    for i, p in enumerate(system.poles):
        for j in range(1, p.order + 1):
            if real.coeff(i, j) != p.coeffs[j - 1]:
                return False
    return True


def _invertible_combination(vectors, build, check_invertible, bound):
    for v in vectors:
        cand = build(v)
        if check_invertible(cand):
            return cand
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            for c in range(1, bound + 2):
                vec = [a + as_exact(c) * b
                       for a, b in zip(vectors[i], vectors[j])]
                cand = build(vec)
                if check_invertible(cand):
                    return cand
    return None


def realization_intertwiner(r1: Realization, r2: Realization):
    """Isomorphism f with f T1 = T2 f, X1 = X2 f, f Y1 = Y2, or None."""
    if r1.rank != r2.rank or r1.w_dim != r2.w_dim:
        return None
    w = r1.w_dim
    t1, t2 = r1.t_full(), r2.t_full()
    x1, x2 = r1.x_full(), r2.x_full()
    y1, y2 = r1.y_full(), r2.y_full()
    cols = []
    rhs = []
    for idx in range(w * w):
        f = Matrix.zeros(w, w)
        f.data[idx] = as_exact(1)
        col = (f @ t1 - t2 @ f).data + (x2 @ f).data + (f @ y1).data
        cols.append(col)
    rhs = ([as_exact(0)] * (w * w)) + x1.data + y2.data
    system = Matrix(len(rhs), w * w,
                    [cols[j][i] for i in range(len(rhs)) for j in range(w * w)])
    part = solve(system, Matrix(len(rhs), 1, rhs))
    if part is None:
        return None
    kern = kernel_basis(system)
    base = [part.at(i, 0) for i in range(w * w)]
    cands = [base] + [[b + k.at(i, 0) for i, b in enumerate(base)] for k in kern]
    f = _invertible_combination(
        cands, lambda v: Matrix(w, w, v), is_invertible_matrix, w)
    return f


def middle_convolution(system: MeromorphicSystem, zeta) -> MeromorphicSystem:
    """Quotient the minimal realization space by ker(YX + zeta) and read the
    induced system off the same pole structure."""
    zeta = as_exact(zeta)
    real = minimal_realization(system)
    w = real.w_dim
    m = real.y_full() @ real.x_full() + Matrix.scalar(w, zeta)
    killed = kernel_basis(m)
    comp = complement_columns(killed, w)
    new_rank = len(comp)
    if w:
        u = hstack(killed + comp)
        uinv = inverse(u)
        proj = uinv.sub(len(killed), w, 0, w)
    else:
        proj = Matrix.zeros(0, 0)
    cmat = hstack(comp) if comp else Matrix.zeros(w, 0)
    yz = m @ cmat
    poles = []
    off = 0
    for i, b in enumerate(real.blocks):
        xzi = proj.sub(0, new_rank, off, off + b.dim)
        yzi = yz.sub(off, off + b.dim, 0, new_rank)
        coeffs = []
        cur = yzi
        for j in range(system.poles[i].order):
            if j > 0:
                cur = b.nilp @ cur
            coeffs.append(xzi @ cur)
        poles.append(PoleData(b.t, system.poles[i].order, tuple(coeffs)))
        off += b.dim
    return MeromorphicSystem(new_rank, poles)


def systems_conjugate(s1: MeromorphicSystem, s2: MeromorphicSystem):
    """Constant conjugation g with g A g^{-1} = A', or (False, None)."""
    if s1.rank != s2.rank or len(s1.poles) != len(s2.poles):
        return False, None
    for p, q in zip(s1.poles, s2.poles):
        if p.t != q.t or p.order != q.order:
            return False, None
    n = s1.rank
    cols = []
    for idx in range(n * n):
        g = Matrix.zeros(n, n)
        g.data[idx] = as_exact(1)
        col = []
        for p, q in zip(s1.poles, s2.poles):
            for c1, c2 in zip(p.coeffs, q.coeffs):
                col.extend((g @ c1 - c2 @ g).data)
        cols.append(col)
    if not cols or not cols[0]:
        return n == 0, Matrix.zeros(n, n)
    system = Matrix(len(cols[0]), n * n,
                    [cols[j][i] for i in range(len(cols[0])) for j in range(n * n)])
    vecs = [[k.at(i, 0) for i in range(n * n)] for k in kernel_basis(system)]
    g = _invertible_combination(vecs, lambda v: Matrix(n, n, v),
                                is_invertible_matrix, n)
    if g is None:
        return False, None
    return True, g


def scalar_shift_system(system: MeromorphicSystem, pole_idx: int, lam) -> MeromorphicSystem:
    """Subtract the scalar principal part lam(z - t_i) at one pole."""
    lam = [as_exact(c) for c in lam]
    p = system.poles[pole_idx]
    if len(lam) > p.order:
        raise SizeMismatch("shift longer than the pole order")
    coeffs = list(p.coeffs)
    for k, c in enumerate(lam):
        coeffs[k] = coeffs[k] - Matrix.scalar(system.rank, c)
    poles = list(system.poles)
    poles[pole_idx] = PoleData(p.t, p.order, tuple(coeffs))
    return MeromorphicSystem(system.rank, poles)


# -- the star-quiver dictionary ----------------------------------------------

def _star_layout(q: Quiver):
    center = q.vertices[0]
    if q.d(center) != 1:
        raise SizeMismatch("central vertex must have multiplicity one")
    legs = list(q.vertices[1:])
    for leg in legs:
        edges = q.edges_between(center, leg)
        if len(edges) != 1 or len(q.arrows_at(leg)) != 1:
            raise SizeMismatch("not a star quiver with length-one legs")
    if len(q.arrows) != len(legs):
        raise SizeMismatch("extra arrows outside the star")
    return center, legs


def point_to_system(point: RepPoint, poles) -> MeromorphicSystem:
    """The local principal parts of a star point, placed at the given pole
    locations (one per leg, in vertex order)."""
    q = point.quiver
    center, legs = _star_layout(q)
    poles = [as_exact(t) for t in poles]
    if len(poles) != len(legs):
        raise SizeMismatch("need exactly one pole location per leg")
    data = []
    for leg, t in zip(legs, poles):
        phi = local_principal(point, leg)
        data.append(PoleData(t, q.d(leg), tuple(phi.coeffs)))
    return MeromorphicSystem(point.dims[center], data)


@dataclass(frozen=True)
class SplitType:
    """Two-eigenvalue truncated local type: xi on a block of the given
    size, eta on a complement."""
    xi: tuple
    eta: tuple
    block: int


def _lam_of_type(tp: SplitType, order: int):
    xi = [as_exact(c) for c in tp.xi] + [as_exact(0)] * (order - len(tp.xi))
    eta = [as_exact(c) for c in tp.eta] + [as_exact(0)] * (order - len(tp.eta))
    lam = [a - b for a, b in zip(xi, eta)]
    d = 0
    for k in range(order, 0, -1):
        if lam[k - 1]:
            d = k
            break
    if d == 0:
        raise TopCoefficientZero("split type needs xi distinct from eta")
    return lam[:d], eta


def system_to_point(system: MeromorphicSystem, types):
    """Realize a system of prescribed split local types as a star point;
    returns (point, level, dims, quiver).

    The eta-shifted local parts must lie exactly on the scalar-corner orbits
    and the total residue of the system must vanish.
    """
    n = system.rank
    if n < 1:
        raise EmptySpace("cannot realize a rank-zero system")
    if len(types) != len(system.poles):
        raise SizeMismatch("need one split type per pole")
    legs = [str(k + 1) for k in range(len(system.poles))]
    verts = ["0"] + legs
    arrows = [(f"a{leg}", leg, "0") for leg in legs]
    mult = {"0": 1}
    dims = {"0": n}
    level_table = {}
    pairs = []
    eta_residues = as_exact(0)
    for idx, (pd, tp) in enumerate(zip(system.poles, types)):
        lam, eta = _lam_of_type(tp, pd.order)
        d = len(lam)
        if not 0 <= tp.block <= n:
            raise OrbitAssertionFailed("block size out of range")
        shifted = system.local_part(idx) - PrincipalPart.scalar(pd.order, n, eta)
        try:
            local = shifted.truncated(d)
        except SizeMismatch as exc:
            raise OrbitAssertionFailed(
                f"pole {idx}: local part exceeds the type's order") from exc
        try:
            gauge, p = spectral_split(local, lam[-1])
        except NotSemisimpleLeading as exc:
            raise OrbitAssertionFailed(f"pole {idx}: {exc}") from exc
        if p != tp.block or coadjoint(gauge, local) != _scalar_corner(d, n, tp.block, lam):
            raise OrbitAssertionFailed(f"pole {idx}: wrong block sizes for the type")
        base_in, base_out = pole_pair(d, tp.block, n, lam)
        nilp = nilpotent_on(tp.block, d)
        b_in, b_out = _twisted_pair(base_in, base_out, gauge, nilp)
        if local_principal_pair(b_in, b_out, nilp, d, n) != local:
            raise OrbitAssertionFailed(f"pole {idx}: twisted pair mismatch")
        leg = legs[idx]
        mult[leg] = d
        dims[leg] = tp.block
        level_table[leg] = lam
        pairs.append((leg, b_in, b_out))
        eta_residues = eta_residues + eta[0]
    quiver = Quiver(verts, arrows, mult)
    level_table["0"] = [eta_residues]
    level = MomentLevel(quiver, level_table)
    point = RepPoint.zero(quiver, dims)
    for leg, b_in, b_out in pairs:
        point = set_vertex_pair(point, leg, b_in, b_out)
    if not check_level(point, level):
        raise OrbitAssertionFailed(
            "system is not compatible with a scalar moment level "
            "(total residue must vanish)")
    return point, level, dims, quiver


def double_pole_witness(l12, l11, l22, l21, zeta, t1=0, t2=1) -> MeromorphicSystem:
    """Explicit irreducible rank-two system with two order-two poles on the
    prescribed scalar-corner orbits and total residue -zeta."""
    l12, l11, l22, l21, zeta = (as_exact(x) for x in (l12, l11, l22, l21, zeta))
    if not l12 or not l22:
        raise TopCoefficientZero("both top coefficients must be nonzero")
    if l11 + l21 != -2 * zeta:
        raise TraceConditionViolated("need l11 + l21 = -2*zeta")
    a11 = Matrix.from_rows([[l11 + zeta, -l11 - zeta], [zeta, -zeta]])
    a12 = Matrix.from_rows([[2 * l12, -2 * l12], [l12, -l12]])
    a21 = Matrix.from_rows([[l21, l11 + zeta], [-zeta, as_exact(0)]])
    a22 = Matrix.from_rows([[l22, as_exact(0)], [as_exact(0), as_exact(0)]])
    system = MeromorphicSystem(2, [PoleData(as_exact(t1), 2, (a11, a12)),
                                   PoleData(as_exact(t2), 2, (a21, a22))])
    if system.residue_total() != Matrix.scalar(2, -zeta):
        raise TraceConditionViolated("residue sum is not the expected scalar")

    # both local parts must be reachable from the scalar-corner normal form;
    # a gauge 1 + S z moves diag(m, 0) z^{-2} by [S, diag(m, 0)] z^{-1},
    # which has upper-right -m*S_12 and lower-left +m*S_21
    zero = as_exact(0)
    lam1 = _scalar_corner(2, 2, 1, [l11, l12])
    u = Matrix.from_rows([[2, 1], [1, 1]])
    inner = Matrix.from_rows([[zero, zero], [(zeta - l11) / l12, zero]])
    g1 = MatPoly.constant(2, u) * MatPoly.one_plus(2, 1, inner)
    if coadjoint(g1, lam1) != system.local_part(0):
        raise OrbitAssertionFailed("first pole left its coadjoint orbit")
    lam2 = _scalar_corner(2, 2, 1, [l21, l22])
    s = Matrix.from_rows([[zero, -(l11 + zeta) / l22],
                          [-zeta / l22, zero]])
    g2 = MatPoly.one_plus(2, 1, s)
    if coadjoint(g2, lam2) != system.local_part(1):
        raise OrbitAssertionFailed("second pole left its coadjoint orbit")
    return system
