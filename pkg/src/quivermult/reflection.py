"""Reflection functors: simple-reflection symmetries of representation
points, realized as explicit matrix algorithms.

At the chosen vertex the local pair carries a principal part on the incoming
space; shifting it by the scalar level and re-realizing the shifted orbit
over the complementary dimension gives the reflected point.  All other
arrows are untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanData, MomentLevel, cartan_matrix, reflect_level
from .errors import (NegativeTargetDimension, NotSemisimpleLeading,
                     OrbitAssertionFailed, TopCoefficientZero)
from .representation import (RepPoint, hat_dim, local_principal, pole_pair,
                             set_vertex_pair, vertex_in, vertex_out)
from .truncated import (MatPoly, PrincipalPart, coadjoint, nilpotent_on,
                        principal_projection, spectral_split)


@dataclass
class ReflectionResult:
    point: RepPoint
    dims: dict
    level: MomentLevel
    vertex: str
    gauge: MatPoly          # splitting certificate on the incoming space
    block_dim: int          # new dimension at the reflected vertex


def _twisted_pair(b_in, b_out, gauge: MatPoly, nilp):
    """Conjugate a normal-form pair by a gauge on the incoming space:
    b_in' = sum_k N^k b_in g_k,  b_out' = sum_k (g^{-1})_k b_out N^k."""
    ginv = gauge.inverse()
    new_in = b_in @ gauge.coeffs[0]
    new_out = ginv.coeffs[0] @ b_out
    npow = None
    for k in range(1, gauge.d):
        npow = nilp if npow is None else npow @ nilp
        gk = gauge.coeffs[k]
        if not gk.is_zero():
            new_in = new_in + npow @ b_in @ gk
        hk = ginv.coeffs[k]
        if not hk.is_zero():
            new_out = new_out + hk @ b_out @ npow
    return new_in, new_out


def reflect_vertex(point: RepPoint, vertex, level: MomentLevel,
                   cd: CartanData | None = None) -> ReflectionResult:
    """Apply the reflection functor at one vertex.

    Requires a nonzero top level coefficient there and the moment condition
    at that vertex; everything else about the point is arbitrary.
    """
    q, dims = point.quiver, point.dims
    v = str(vertex)
    d = q.d(v)
    lam = level[v]
    if not lam[-1]:
        raise TopCoefficientZero(f"level at {v} has zero top coefficient")
    if cd is None:
        cd = cartan_matrix(q)
    w = hat_dim(q, dims, v)
    nv = dims[v]
    nv2 = w - nv
    if nv2 < 0:
        raise NegativeTargetDimension(f"target dimension {nv2} at {v}")

    mu_here = principal_projection(vertex_in(point, v) @ vertex_out(point, v), nv, d)
    if not mu_here.is_scalar([-c for c in lam]):
        raise OrbitAssertionFailed(f"moment at {v} is not the expected scalar level")

    shifted = local_principal(point, v).shift_scalar(lam)
    try:
        gauge, p = spectral_split(shifted, -lam[-1])
    except NotSemisimpleLeading as exc:
        raise OrbitAssertionFailed(str(exc)) from exc
    if p != nv2:
        raise OrbitAssertionFailed(f"split block has size {p}, expected {nv2}")
    split = coadjoint(gauge, shifted)
    if split != _scalar_corner(d, w, nv2, _negate(lam)):
        raise OrbitAssertionFailed("split did not land on the shifted scalar orbit")

    base_in, base_out = pole_pair(d, nv2, w, _negate(lam))
    nilp = nilpotent_on(nv2, d)
    new_in, new_out = _twisted_pair(base_in, base_out, gauge, nilp)

    if local_principal_pair(new_in, new_out, nilp, d, w) != shifted:
        raise OrbitAssertionFailed("twisted pair does not carry the shifted orbit")
    if not principal_projection(new_in @ new_out, nv2, d).is_scalar(lam):
        raise OrbitAssertionFailed("reflected moment at the vertex is wrong")

    dims2 = dict(dims)
    dims2[v] = nv2
    blank = RepPoint.zero(q, dims2)
    carried = {a.name: point.mats[a.name] for a in q.arrows
               if v not in (a.src, a.dst)}
    blank = blank.with_mats(carried)
    new_point = set_vertex_pair(blank, v, new_in, new_out)
    return ReflectionResult(new_point, dims2, reflect_level(cd, v, level),
                            v, gauge, nv2)


def _negate(lam):
    return [-c for c in lam]


def _scalar_corner(d, w, p, lam) -> PrincipalPart:
    """diag(lam(z) * 1_p, 0) as a principal part on a w-dimensional space."""
    from .linalg import Matrix
    out = PrincipalPart.zero(d, w)
    for k, c in enumerate(lam):
        m = Matrix.zeros(w, w)
        for i in range(p):
            m.data[i * w + i] = c
        out.coeffs[k] = m
    return out


def local_principal_pair(b_in, b_out, nilp, d, w) -> PrincipalPart:
    coeffs = []
    cur = b_in
    for k in range(1, d + 1):
        if k > 1:
            cur = nilp @ cur
        coeffs.append(-(b_out @ cur))
    return PrincipalPart(coeffs, w)


def apply_weyl_word(point: RepPoint, level: MomentLevel, word,
                    cd: CartanData | None = None):
    """Left-to-right composition of reflection functors along a word of
    vertices; returns (point, level, dims)."""
    if cd is None:
        cd = cartan_matrix(point.quiver)
    cur, lvl = point, level
    for pos, letter in enumerate(word):
        try:
            res = reflect_vertex(cur, letter, lvl, cd)
        except TopCoefficientZero as exc:
            raise TopCoefficientZero(
                f"letter {pos} ({letter}): {exc}") from exc
        cur, lvl = res.point, res.level
    return cur, lvl, dict(cur.dims)
