"""Points of the doubled-quiver representation space, their moment maps,
gauge action, stability and symplectic pairing.

Stacking convention at a vertex v: the incoming summands of the space
``Vhat_v`` are the double-quiver arrows pointing into v, ordered by
(neighbor index, arrow name).  ``vertex_in`` collects the orientation-signed
maps into v (columns blocked by summand); ``vertex_out`` stacks the reverse
maps (rows blocked the same way).  The moment map at v is the partial-trace
projection of ``vertex_in @ vertex_out``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import conventions
from .cartan import MomentLevel
from .errors import (DimensionTooLarge, EmptySpace, SizeMismatch,
                     TopCoefficientZero)
from .linalg import (Matrix, hstack, is_invertible_matrix, kernel_basis,
                     solve, spans_matrix_algebra, vstack)
from .quiver import Quiver
from .scalars import GaussianRational, Jet, as_exact, tan_of, val_of
from .truncated import (MatPoly, PrincipalPart, nilpotent_on,
                        principal_projection)

HALF = GaussianRational(1) / GaussianRational(2)


@dataclass(frozen=True)
class Slot:
    """One summand of the incoming space at a vertex."""
    arrow: object
    forward: bool          # the arrow itself points into the vertex
    neighbor: str
    width: int
    offset: int


def vertex_space_dim(q: Quiver, dims, v) -> int:
    return dims.get(str(v), 0) * q.d(v)


def total_dim(q: Quiver, dims) -> int:
    return sum(vertex_space_dim(q, dims, v) for v in q.vertices)


def nilpotent_at(q: Quiver, dims, v) -> Matrix:
    return nilpotent_on(dims.get(str(v), 0), q.d(v))


def slots_at(q: Quiver, dims, v):
    v = str(v)
    items = []
    for a in q.arrows_at(v):
        if a.dst == v:
            items.append((q.index(a.src), a.name, a, True, a.src))
        else:
            items.append((q.index(a.dst), a.name, a, False, a.dst))
    items.sort(key=lambda t: (t[0], t[1]))
    out = []
    off = 0
    for _, _, a, fwd, nbr in items:
        w = vertex_space_dim(q, dims, nbr)
        out.append(Slot(a, fwd, nbr, w, off))
        off += w
    return out


def hat_dim(q: Quiver, dims, v) -> int:
    return sum(s.width for s in slots_at(q, dims, v))


class RepPoint:
    """One matrix pair (fwd, bwd) per arrow of the underlying quiver."""

    __slots__ = ("quiver", "dims", "mats")

    def __init__(self, quiver: Quiver, dims, mats):
        self.quiver = quiver
        self.dims = {str(v): int(dims.get(str(v), 0)) for v in quiver.vertices}
        if any(x < 0 for x in self.dims.values()):
            raise SizeMismatch("negative dimension")
        self.mats = {}
        for a in quiver.arrows:
            pair = mats.get(a.name)
            rows = vertex_space_dim(quiver, self.dims, a.dst)
            cols = vertex_space_dim(quiver, self.dims, a.src)
            if pair is None:
                pair = (Matrix.zeros(rows, cols), Matrix.zeros(cols, rows))
            fwd, bwd = pair
            if fwd.rows != rows or fwd.cols != cols:
                raise SizeMismatch(f"arrow {a.name}: fwd is {fwd.rows}x{fwd.cols}, "
                                   f"need {rows}x{cols}")
            if bwd.rows != cols or bwd.cols != rows:
                raise SizeMismatch(f"arrow {a.name}: bwd is {bwd.rows}x{bwd.cols}, "
                                   f"need {cols}x{rows}")
            self.mats[a.name] = (fwd, bwd)

    @classmethod
    def zero(cls, quiver: Quiver, dims) -> "RepPoint":
        return cls(quiver, dims, {})

    def fwd(self, name: str) -> Matrix:
        return self.mats[name][0]

    def bwd(self, name: str) -> Matrix:
        return self.mats[name][1]

    def with_mats(self, updates) -> "RepPoint":
        mats = dict(self.mats)
        mats.update(updates)
        return RepPoint(self.quiver, self.dims, mats)

    def map_entries(self, fn) -> "RepPoint":
        return RepPoint(self.quiver, self.dims,
                        {k: (f.map(fn), b.map(fn)) for k, (f, b) in self.mats.items()})

    def value_part(self) -> "RepPoint":
        return self.map_entries(val_of)

    def tangent_part(self) -> dict:
        return {k: (f.tan_part(), b.tan_part()) for k, (f, b) in self.mats.items()}

    def __eq__(self, other):
        if not isinstance(other, RepPoint):
            return NotImplemented
        return (self.quiver.vertices == other.quiver.vertices
                and self.dims == other.dims and self.mats == other.mats)

    def __repr__(self):
        return f"RepPoint(dims={self.dims})"


def vertex_in(point: RepPoint, v) -> Matrix:
    """Signed stacked map Vhat_v -> V_v (x) R_{d_v}."""
    q, dims = point.quiver, point.dims
    rows = vertex_space_dim(q, dims, v)
    blocks = []
    for s in slots_at(q, dims, v):
        m = point.fwd(s.arrow.name) if s.forward else point.bwd(s.arrow.name)
        e = conventions.eps(s.forward)
        blocks.append(m if e == 1 else m.scale(e))
    return hstack(blocks) if blocks else Matrix.zeros(rows, 0)


def vertex_out(point: RepPoint, v) -> Matrix:
    """Stacked reverse map V_v (x) R_{d_v} -> Vhat_v."""
    q, dims = point.quiver, point.dims
    cols = vertex_space_dim(q, dims, v)
    blocks = []
    for s in slots_at(q, dims, v):
        m = point.bwd(s.arrow.name) if s.forward else point.fwd(s.arrow.name)
        blocks.append(m)
    return vstack(blocks) if blocks else Matrix.zeros(0, cols)


def set_vertex_pair(point: RepPoint, v, b_in: Matrix, b_out: Matrix) -> RepPoint:
    """Replace all arrow matrices at v by unstacking a signed pair."""
    q, dims = point.quiver, point.dims
    updates = {}
    for s in slots_at(q, dims, v):
        cols = b_in.sub(0, b_in.rows, s.offset, s.offset + s.width)
        rows = b_out.sub(s.offset, s.offset + s.width, 0, b_out.cols)
        e = conventions.eps(s.forward)
        signed = cols if e == 1 else cols.scale(e)
        if s.forward:
            updates[s.arrow.name] = (signed, rows)
        else:
            updates[s.arrow.name] = (rows, signed)
    return point.with_mats(updates)


def moment_map(point: RepPoint) -> dict:
    """Per-vertex principal part of the moment map."""
    out = {}
    for v in point.quiver.vertices:
        x = vertex_in(point, v) @ vertex_out(point, v)
        out[v] = principal_projection(x, point.dims[v], point.quiver.d(v))
    return out


def check_level(point: RepPoint, level: MomentLevel) -> bool:
    """Exact test of moment(point) = -level * identity at every vertex."""
    mm = moment_map(point)
    for v in point.quiver.vertices:
        target = [-c for c in level[v]]
        if not mm[v].is_scalar(target):
            return False
    return True


def gauge_act(gauge: dict, point: RepPoint) -> RepPoint:
    """Act by one truncated polynomial g_v per vertex (missing = identity)."""
    q, dims = point.quiver, point.dims
    real, real_inv = {}, {}
    for v in q.vertices:
        g = gauge.get(v)
        if g is None:
            continue
        if g.d != q.d(v) or g.n != dims[v]:
            raise SizeMismatch(f"gauge at {v} has wrong order or size")
        real[v] = g.realize()
        real_inv[v] = g.inverse().realize()
    def left(v):
        return real.get(v)
    def right_inv(v):
        return real_inv.get(v)
    updates = {}
    for a in q.arrows:
        fwd, bwd = point.mats[a.name]
        lf, rf = left(a.dst), right_inv(a.src)
        lb, rb = left(a.src), right_inv(a.dst)
        if lf is not None:
            fwd = lf @ fwd
        if rf is not None:
            fwd = fwd @ rf
        if lb is not None:
            bwd = lb @ bwd
        if rb is not None:
            bwd = bwd @ rb
        updates[a.name] = (fwd, bwd)
    return point.with_mats(updates)


def _offsets(q: Quiver, dims):
    offs, n = {}, 0
    for v in q.vertices:
        offs[v] = n
        n += vertex_space_dim(q, dims, v)
    return offs, n


def _embed(total: int, off_r: int, off_c: int, m: Matrix) -> Matrix:
    out = Matrix.zeros(total, total)
    for i in range(m.rows):
        base = (off_r + i) * total + off_c
        row = m.row_list(i)
        for j in range(m.cols):
            out.data[base + j] = row[j]
    return out


def is_stable(point: RepPoint) -> bool:
    """Absence of a proper nonzero graded, z-stable, arrow-invariant
    subspace, decided by the span criterion: the unital algebra generated
    by the arrow matrices, the vertex shifts and the vertex projectors must
    fill the full matrix algebra."""
    q, dims = point.quiver, point.dims
    offs, n = _offsets(q, dims)
    if n == 0:
        raise EmptySpace("stability of an empty representation")
    gens = []
    for v in q.vertices:
        w = vertex_space_dim(q, dims, v)
        if w == 0:
            continue
        gens.append(_embed(n, offs[v], offs[v], Matrix.identity(w)))
        nil = nilpotent_at(q, dims, v)
        if not nil.is_zero():
            gens.append(_embed(n, offs[v], offs[v], nil))
    for a in q.arrows:
        fwd, bwd = point.mats[a.name]
        if not fwd.is_zero():
            gens.append(_embed(n, offs[a.dst], offs[a.src], fwd))
        if not bwd.is_zero():
            gens.append(_embed(n, offs[a.src], offs[a.dst], bwd))
    return spans_matrix_algebra(gens, n)


def symplectic_pair(t1: dict, t2: dict, point: RepPoint):
    """Canonical two-form on a pair of tangents given per arrow as
    (delta fwd, delta bwd)."""
    q, dims = point.quiver, point.dims
    acc = as_exact(0)
    for a in q.arrows:
        rows = vertex_space_dim(q, dims, a.dst)
        cols = vertex_space_dim(q, dims, a.src)
        f1, b1 = t1.get(a.name, (Matrix.zeros(rows, cols), Matrix.zeros(cols, rows)))
        f2, b2 = t2.get(a.name, (Matrix.zeros(rows, cols), Matrix.zeros(cols, rows)))
        fwd_part = (f1 @ b2).trace() - (f2 @ b1).trace()
        bwd_part = (b1 @ f2).trace() - (b2 @ f1).trace()
        acc = acc + HALF * (conventions.eps(True) * fwd_part
                            + conventions.eps(False) * bwd_part)
    return acc


def pole_pair(d: int, v: int, ambient: int, lam):
    """Normal-form pair realizing the scalar level -lam at a multiplicity-d
    vertex of dimension v inside an ambient space: returns (b_in, b_out)."""
    lam = [as_exact(c) for c in lam]
    if len(lam) != d:
        raise SizeMismatch("level length must equal the multiplicity")
    if not lam[-1]:
        raise TopCoefficientZero("the top level coefficient must be nonzero")
    if v > ambient:
        raise DimensionTooLarge(f"dimension {v} exceeds ambient {ambient}")
    b_in = Matrix.zeros(v * d, ambient)
    for t in range(v):
        b_in.data[((d - 1) * v + t) * ambient + t] = as_exact(1)
    b_out = Matrix.zeros(ambient, v * d)
    for m in range(1, d + 1):
        c = -lam[d - m]
        for t in range(v):
            b_out.data[t * (v * d) + (m - 1) * v + t] = c
    return b_in, b_out


def local_principal(point: RepPoint, v) -> PrincipalPart:
    """The principal part -(vertex_out)(z - N)^{-1}(vertex_in) carried by
    the pair at v, an element of the dual at the incoming space."""
    q, dims = point.quiver, point.dims
    d = q.d(v)
    b_in, b_out = vertex_in(point, v), vertex_out(point, v)
    n = nilpotent_at(q, dims, v)
    w = b_out.rows
    coeffs = []
    cur = b_in
    for k in range(1, d + 1):
        if k > 1:
            cur = n @ cur
        coeffs.append(-(b_out @ cur))
    return PrincipalPart(coeffs, w)


def _gauge_unknown_layout(q: Quiver, dims):
    layout = []
    for v in q.vertices:
        nv = dims[v]
        for k in range(q.d(v)):
            for i in range(nv):
                for j in range(nv):
                    layout.append((v, k, i, j))
    return layout


def _gauge_from_vector(q: Quiver, dims, layout, vec):
    polys = {}
    for v in q.vertices:
        nv = dims[v]
        polys[v] = [Matrix.zeros(nv, nv) for _ in range(q.d(v))]
    for idx, (v, k, i, j) in enumerate(layout):
        x = vec[idx]
        if x:
            polys[v][k].data[i * dims[v] + j] = x
    return {v: MatPoly(cs) for v, cs in polys.items()}


def _intertwiner_equations(p1: RepPoint, p2: RepPoint, layout):
    """Columns of the linear system g |-> (g B - B' g) over all arrows."""
    q, dims = p1.quiver, p1.dims
    cols = []
    for idx in range(len(layout)):
        vec = [as_exact(0)] * len(layout)
        vec[idx] = as_exact(1)
        gauge = _gauge_from_vector(q, dims, layout, vec)
        real = {v: gauge[v].realize() for v in q.vertices}
        rows = []
        for a in q.arrows:
            f1, b1 = p1.mats[a.name]
            f2, b2 = p2.mats[a.name]
            rows.extend((real[a.dst] @ f1 - f2 @ real[a.src]).data)
            rows.extend((real[a.src] @ b1 - b2 @ real[a.dst]).data)
        cols.append(rows)
    if not cols:
        return Matrix.zeros(0, 0)
    return Matrix(len(cols[0]), len(cols),
                  [cols[j][i] for i in range(len(cols[0])) for j in range(len(cols))])


def _invertible_gauge(q: Quiver, dims, layout, vectors):
    """Search the solution span for a gauge with invertible constant terms."""
    def usable(vec):
        gauge = _gauge_from_vector(q, dims, layout, vec)
        for v in q.vertices:
            if dims[v] and not is_invertible_matrix(gauge[v].coeffs[0]):
                return None
        return gauge

    vecs = [[g.at(i, 0) for i in range(g.rows)] for g in vectors]
    for vec in vecs:
        found = usable(vec)
        if found:
            return found
    n_total = total_dim(q, dims)
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            for c in range(1, n_total + 2):
                vec = [a + as_exact(c) * b for a, b in zip(vecs[i], vecs[j])]
                found = usable(vec)
                if found:
                    return found
    return None


def isomorphic_points(p1: RepPoint, p2: RepPoint):
    """Decide whether two points lie on one gauge orbit; returns
    (bool, witness gauge or None).  Intended for stable points, where the
    intertwiner space has dimension at most one."""
    if p1.quiver.vertices != p2.quiver.vertices or p1.dims != p2.dims:
        return False, None
    q, dims = p1.quiver, p1.dims
    layout = _gauge_unknown_layout(q, dims)
    system = _intertwiner_equations(p1, p2, layout)
    gauge = _invertible_gauge(q, dims, layout, kernel_basis(system))
    if gauge is None:
        return False, None
    return True, gauge


def reorient_point(point: RepPoint, target: Quiver) -> RepPoint:
    """Carry a point to a reorientation of its quiver.  Unchanged arrows
    keep their pair; a reversed arrow swaps its pair and negates the copy
    running from the earlier vertex to the later one, which preserves the
    moment level and makes double reversal the identity."""
    q = point.quiver
    if not q.same_underlying_graph(target):
        raise SizeMismatch("quivers do not share the underlying graph")
    mats = {}
    for a in q.arrows:
        b = target.arrow(a.name)
        fwd, bwd = point.mats[a.name]
        if (a.src, a.dst) == (b.src, b.dst):
            mats[a.name] = (fwd, bwd)
        else:
            if target.index(b.src) < target.index(b.dst):
                mats[a.name] = (-bwd, fwd)
            else:
                mats[a.name] = (bwd, -fwd)
    return RepPoint(target, point.dims, mats)


# -- deterministic random generation ---------------------------------------

def _rand_scalar(rng: random.Random, box: int) -> GaussianRational:
    return GaussianRational(rng.randint(-box, box))


def _rand_matrix(rng, rows, cols, box) -> Matrix:
    return Matrix(rows, cols, [_rand_scalar(rng, box) for _ in range(rows * cols)])


def _rand_unit_poly(rng, d, n, box) -> MatPoly:
    while True:
        g0 = _rand_matrix(rng, n, n, box)
        if is_invertible_matrix(g0):
            break
    return MatPoly([g0] + [_rand_matrix(rng, n, n, box) for _ in range(d - 1)])


@dataclass
class SampleResult:
    point: RepPoint
    level: MomentLevel
    non_scalar: tuple


def sample_point(q: Quiver, dims, pole_vertex, lam, seed: int, box: int = 2) -> SampleResult:
    """Deterministic pseudo-random point whose moment at ``pole_vertex`` is
    exactly -lam * identity: normal-form pair there, random matrices on the
    remaining arrows, then a random gauge.  The returned level records the
    moment wherever it happens to be scalar; other vertices are flagged."""
    rng = random.Random(seed)
    v = str(pole_vertex)
    d, nv = q.d(v), dims.get(v, 0)
    b_in, b_out = pole_pair(d, nv, hat_dim(q, dims, v), lam)
    point = set_vertex_pair(RepPoint.zero(q, dims), v, b_in, b_out)
    updates = {}
    for a in q.arrows:
        if v in (a.src, a.dst):
            continue
        rows = vertex_space_dim(q, dims, a.dst)
        cols = vertex_space_dim(q, dims, a.src)
        updates[a.name] = (_rand_matrix(rng, rows, cols, box),
                           _rand_matrix(rng, cols, rows, box))
    point = point.with_mats(updates)
    gauge = {u: _rand_unit_poly(rng, q.d(u), dims.get(u, 0), box) for u in q.vertices
             if dims.get(u, 0)}
    point = gauge_act(gauge, point)
    moments = moment_map(point)
    table, flagged = {}, []
    for u in q.vertices:
        coeffs = []
        scalar = True
        for k in range(q.d(u)):
            m = moments[u].coeffs[k]
            c = m.at(0, 0) if m.rows else as_exact(0)
            if m != Matrix.scalar(m.rows, c):
                scalar = False
                break
            coeffs.append(-c)
        if scalar:
            table[u] = coeffs
        else:
            table[u] = [0] * q.d(u)
            flagged.append(u)
    return SampleResult(point, MomentLevel(q, table), tuple(flagged))


def _moment_rhs(q: Quiver, dims, level: MomentLevel):
    rhs = []
    for v in q.vertices:
        nv = dims.get(v, 0)
        for k in range(q.d(v)):
            target = Matrix.scalar(nv, -level[v][k])
            rhs.extend(target.data)
    return rhs


def _moment_of_bwd(q, dims, fwds, bwds):
    point = RepPoint(q, dims, {a.name: (fwds[a.name], bwds[a.name]) for a in q.arrows})
    mm = moment_map(point)
    out = []
    for v in q.vertices:
        for k in range(q.d(v)):
            out.extend(mm[v].coeffs[k].data)
    return out


def sample_level_point(q: Quiver, dims, level: MomentLevel, seed: int,
                       attempts: int = 80, box: int = 2,
                       require_stable: bool = True):
    """Deterministic point on the full scalar moment level: draw the forward
    halves at random, solve the linear system for the backward halves, and
    retry until the point is stable.  Returns None when no attempt works."""
    rng = random.Random(seed)
    layout = []
    for a in q.arrows:
        rows = vertex_space_dim(q, dims, a.dst)
        cols = vertex_space_dim(q, dims, a.src)
        for i in range(cols):
            for j in range(rows):
                layout.append((a.name, i, j))
    rhs_data = _moment_rhs(q, dims, level)
    rhs = Matrix(len(rhs_data), 1, rhs_data)
    for _ in range(attempts):
        fwds = {}
        for a in q.arrows:
            rows = vertex_space_dim(q, dims, a.dst)
            cols = vertex_space_dim(q, dims, a.src)
            fwds[a.name] = _rand_matrix(rng, rows, cols, box)
        cols_mat = []
        for idx in range(len(layout)):
            bwds = {a.name: Matrix.zeros(vertex_space_dim(q, dims, a.src),
                                         vertex_space_dim(q, dims, a.dst))
                    for a in q.arrows}
            name, i, j = layout[idx]
            probe = bwds[name]
            probe.data[i * probe.cols + j] = as_exact(1)
            cols_mat.append(_moment_of_bwd(q, dims, fwds, bwds))
        system = Matrix(len(cols_mat[0]) if cols_mat else rhs.rows, len(cols_mat),
                        [cols_mat[j][i] for i in range(len(cols_mat[0]) if cols_mat else 0)
                         for j in range(len(cols_mat))])
        particular = solve(system, rhs)
        if particular is None:
            continue
        vec = [particular.at(i, 0) for i in range(particular.rows)]
        for kv in kernel_basis(system):
            c = as_exact(rng.randint(-box, box))
            if c:
                vec = [x + c * kv.at(i, 0) for i, x in enumerate(vec)]
        bwds = {a.name: Matrix.zeros(vertex_space_dim(q, dims, a.src),
                                     vertex_space_dim(q, dims, a.dst))
                for a in q.arrows}
        for idx, (name, i, j) in enumerate(layout):
            m = bwds[name]
            m.data[i * m.cols + j] = vec[idx]
        point = RepPoint(q, dims, {a.name: (fwds[a.name], bwds[a.name]) for a in q.arrows})
        if not check_level(point, level):
            continue
        if require_stable and not is_stable(point):
            continue
        return point
    return None


# -- tangent utilities -------------------------------------------------------

def zero_tangent(point: RepPoint) -> dict:
    q, dims = point.quiver, point.dims
    return {a.name: (Matrix.zeros(vertex_space_dim(q, dims, a.dst),
                                  vertex_space_dim(q, dims, a.src)),
                     Matrix.zeros(vertex_space_dim(q, dims, a.src),
                                  vertex_space_dim(q, dims, a.dst)))
            for a in q.arrows}


def point_with_tangent(point: RepPoint, tangent: dict) -> RepPoint:
    """Embed a tangent as the jet part of the point's entries."""
    mats = {}
    for name, (f, b) in point.mats.items():
        tf, tb = tangent.get(name, (Matrix.zeros(f.rows, f.cols),
                                    Matrix.zeros(b.rows, b.cols)))
        mats[name] = (
            Matrix(f.rows, f.cols, [Jet(val_of(x), val_of(y))
                                    for x, y in zip(f.data, tf.data)]),
            Matrix(b.rows, b.cols, [Jet(val_of(x), val_of(y))
                                    for x, y in zip(b.data, tb.data)]),
        )
    return RepPoint(point.quiver, point.dims, mats)


def gauge_tangent(point: RepPoint, xi: dict) -> dict:
    """Infinitesimal gauge direction generated by xi_v in the truncated
    polynomial algebra at each vertex."""
    q = point.quiver
    real = {v: xi[v].realize() if v in xi else None for v in q.vertices}
    out = {}
    for a in q.arrows:
        f, b = point.mats[a.name]
        df = Matrix.zeros(f.rows, f.cols)
        db = Matrix.zeros(b.rows, b.cols)
        if real[a.dst] is not None:
            df = df + real[a.dst] @ f
            db = db - b @ real[a.dst]
        if real[a.src] is not None:
            df = df - f @ real[a.src]
            db = db + real[a.src] @ b
        out[a.name] = (df, db)
    return out


def moment_tangent_basis(point: RepPoint, limit: int | None = None):
    """Deterministic basis of tangents annihilating the differential of the
    moment map at every vertex."""
    q, dims = point.quiver, point.dims
    layout = []
    for a in q.arrows:
        rows = vertex_space_dim(q, dims, a.dst)
        cols = vertex_space_dim(q, dims, a.src)
        for i in range(rows):
            for j in range(cols):
                layout.append((a.name, "f", i, j))
        for i in range(cols):
            for j in range(rows):
                layout.append((a.name, "b", i, j))

    def tangent_from_vec(vec):
        t = zero_tangent(point)
        for idx, (name, side, i, j) in enumerate(layout):
            x = vec[idx]
            if not x:
                continue
            f, b = t[name]
            if side == "f":
                f = Matrix(f.rows, f.cols, list(f.data))
                f.data[i * f.cols + j] = x
            else:
                b = Matrix(b.rows, b.cols, list(b.data))
                b.data[i * b.cols + j] = x
            t[name] = (f, b)
        return t

    cols = []
    for idx in range(len(layout)):
        vec = [as_exact(0)] * len(layout)
        vec[idx] = as_exact(1)
        jet_pt = point_with_tangent(point, tangent_from_vec(vec))
        mm = moment_map(jet_pt)
        col = []
        for v in q.vertices:
            for k in range(q.d(v)):
                col.extend(mm[v].coeffs[k].tan_part().data)
        cols.append(col)
    system = Matrix(len(cols[0]) if cols else 0, len(cols),
                    [cols[j][i] for i in range(len(cols[0]) if cols else 0)
                     for j in range(len(cols))])
    basis = kernel_basis(system)
    if limit is not None:
        basis = basis[:limit]
    return [tangent_from_vec([kv.at(i, 0) for i in range(kv.rows)]) for kv in basis]


def moment_pairing(xi: MatPoly, eta: PrincipalPart):
    """Residue-trace pairing between the truncated polynomial algebra and
    its dual."""
    if xi.d != eta.d or xi.n != eta.n:
        raise SizeMismatch("pairing sizes differ")
    acc = as_exact(0)
    for k in range(xi.d):
        acc = acc + (xi.coeffs[k] @ eta.coeffs[k]).trace()
    return acc
