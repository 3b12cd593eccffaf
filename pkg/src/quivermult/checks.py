"""Executable contract suites: every algebraic identity the library
promises, run on deterministic pseudo-random data.

Used three ways: as the `selfcheck` CLI command, from the test suite, and
under flipped sign conventions to confirm the suites pin the conventions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cartan import (MomentLevel, cartan_matrix, reflect_level,
                     residue_pairing)
from .dynkin import (PAINLEVE_TUPLES, PAINLEVE_ZERO_DIM_TUPLES, catalog,
                     dynkin_type, star_quiver)
from .linalg import Matrix, kernel_basis, rank, vstack, hstack
from .quiver import Quiver
from .representation import (RepPoint, check_level, gauge_act, gauge_tangent,
                             hat_dim, is_stable, local_principal, moment_map,
                             moment_pairing, moment_tangent_basis,
                             point_with_tangent, pole_pair, reorient_point,
                             sample_level_point, set_vertex_pair,
                             symplectic_pair, vertex_space_dim, zero_tangent)
from .scalars import GaussianRational, Jet, as_exact, val_of
from .truncated import (MatPoly, PrincipalPart, coadjoint, jordan_shift,
                        nilpotent_on, principal_projection, spectral_split)


@dataclass
class CheckResult:
    name: str
    ok: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        msg = f" [{self.detail}]" if (self.detail and not self.ok) else ""
        return f"{status:>4}  {self.name} ({self.cases} cases){msg}"


# -- random data -------------------------------------------------------------

def rand_scalar(rng, box=3, complex_ok=True) -> GaussianRational:
    im = rng.randint(-1, 1) if complex_ok and rng.random() < 0.3 else 0
    return GaussianRational(rng.randint(-box, box), im)


def rand_nonzero_scalar(rng, box=3) -> GaussianRational:
    while True:
        x = rand_scalar(rng, box)
        if x:
            return x


def rand_matrix(rng, rows, cols, box=2) -> Matrix:
    return Matrix(rows, cols, [rand_scalar(rng, box) for _ in range(rows * cols)])


def rand_unit_poly(rng, d, n, box=2) -> MatPoly:
    from .linalg import is_invertible_matrix
    while True:
        g0 = rand_matrix(rng, n, n, box)
        if is_invertible_matrix(g0):
            break
    return MatPoly([g0] + [rand_matrix(rng, n, n, box) for _ in range(d - 1)])


def rand_principal(rng, d, n, box=2) -> PrincipalPart:
    return PrincipalPart([rand_matrix(rng, n, n, box) for _ in range(d)], n)


def rand_jet_matrix(rng, rows, cols, box=2) -> Matrix:
    return Matrix(rows, cols, [Jet(rand_scalar(rng, box), rand_scalar(rng, box))
                               for _ in range(rows * cols)])


def painleve_star(tup) -> Quiver:
    return star_quiver(tup)


def star_dims(q: Quiver) -> dict:
    dims = {v: 1 for v in q.vertices}
    dims[q.vertices[0]] = 2
    return dims


def star_level(q: Quiver, rng, nonzero_center=True) -> MomentLevel:
    """Random level on a star with nonzero leg tops and total residue
    pairing zero against the rank-two dimension vector."""
    legs = q.vertices[1:]
    while True:
        table = {}
        for leg in legs:
            d = q.d(leg)
            coeffs = [rand_scalar(rng, 3) for _ in range(d - 1)]
            coeffs.append(rand_nonzero_scalar(rng, 3))
            table[leg] = coeffs
        total = sum((table[leg][0] for leg in legs), as_exact(0))
        zeta = -total / as_exact(2)
        if nonzero_center and not zeta:
            continue
        table[q.vertices[0]] = [zeta]
        return MomentLevel(q, table)


def star_point(tup, seed, nonzero_center=True):
    """Stable point on a full scalar moment level of a Painleve star."""
    q = painleve_star(tup)
    dims = star_dims(q)
    rng = random.Random(seed)
    for trial in range(40):
        level = star_level(q, rng, nonzero_center)
        point = sample_level_point(q, dims, level, seed=seed * 997 + trial + 1)
        if point is not None:
            return point, level, dims, q
    raise RuntimeError(f"no stable point found for tuple {tup}")


def two_vertex_quiver(d0=1, d1=2) -> Quiver:
    return Quiver(["0", "1"], [("e", "0", "1")], {"0": d0, "1": d1})


# -- suites -------------------------------------------------------------------

def suite_truncated_inverse(seed=0, cases=200) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 4)
        n = rng.randint(1, 3)
        g = rand_unit_poly(rng, d, n)
        if g * g.inverse() != MatPoly.identity(d, n):
            return CheckResult("truncated_inverse", False, c + 1, "g * g^-1 != 1")
        if g.inverse().inverse() != g:
            return CheckResult("truncated_inverse", False, c + 1, "double inverse")
    return CheckResult("truncated_inverse", True, cases)


def suite_coadjoint_action(seed=0, cases=60) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 3)
        n = rng.randint(1, 3)
        g = rand_unit_poly(rng, d, n)
        h = rand_unit_poly(rng, d, n)
        eta = rand_principal(rng, d, n)
        if coadjoint(g * h, eta) != coadjoint(g, coadjoint(h, eta)):
            return CheckResult("coadjoint_action", False, c + 1, "not a left action")
        scalar = PrincipalPart.scalar(d, n, [rand_scalar(rng) for _ in range(d)])
        if coadjoint(g, scalar) != scalar:
            return CheckResult("coadjoint_action", False, c + 1,
                               "scalars are not fixed")
        const = MatPoly.constant(d, Matrix.scalar(n, rand_nonzero_scalar(rng)))
        if coadjoint(const, eta) != eta:
            return CheckResult("coadjoint_action", False, c + 1,
                               "central constants act nontrivially")
    return CheckResult("coadjoint_action", True, cases)


def suite_projection_kernel(seed=0, cases=60) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 4)
        v = rng.randint(1, 3)
        n = nilpotent_on(v, d)
        x = rand_matrix(rng, v * d, v * d)
        commutator = n @ x - x @ n
        if not principal_projection(commutator, v, d).is_zero():
            return CheckResult("projection_kernel", False, c + 1,
                               "projection does not kill ad_N")
        ident = principal_projection(Matrix.identity(v * d), v, d)
        expected = PrincipalPart.scalar(d, v, [d])
        if ident != expected:
            return CheckResult("projection_kernel", False, c + 1,
                               "projection of the identity")
    # fixed low-order example: the lower-left block unit at d=2, v=1
    e21 = Matrix.zeros(2, 2)
    e21.data[2] = as_exact(1)
    got = principal_projection(e21, 1, 2)
    want = PrincipalPart([Matrix.zeros(1, 1), Matrix.identity(1)], 1)
    if got != want:
        return CheckResult("projection_kernel", False, cases, "block unit example")
    return CheckResult("projection_kernel", True, cases)


def suite_spectral_split(seed=0, cases=40) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 4)
        p = rng.randint(0, 2)
        quo = rng.randint(0 if p else 1, 2)
        n = p + quo
        if n == 0:
            continue
        mu = rand_nonzero_scalar(rng)
        corner = PrincipalPart.zero(d, n)
        for k in range(d):
            m = Matrix.zeros(n, n)
            coeff = mu if k == d - 1 else rand_scalar(rng)
            for t in range(p):
                m.data[t * n + t] = coeff
            if k < d - 1:
                sub = rand_matrix(rng, quo, quo)
                for r in range(quo):
                    for s in range(quo):
                        m.data[(p + r) * n + (p + s)] = sub.at(r, s)
            corner.coeffs[k] = m
        g = rand_unit_poly(rng, d, n)
        scrambled = coadjoint(g, corner)
        split_gauge, pp = spectral_split(scrambled, mu)
        if pp != p:
            return CheckResult("spectral_split", False, c + 1, "wrong block size")
        back = coadjoint(split_gauge, scrambled)
        for coeff in back.coeffs:
            if not (coeff.sub(0, p, p, n).is_zero()
                    and coeff.sub(p, n, 0, p).is_zero()):
                return CheckResult("spectral_split", False, c + 1,
                                   "off-diagonal block survived")
    return CheckResult("spectral_split", True, cases)


def suite_jet_projection(seed=0, cases=40) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 3)
        n = rng.randint(1, 2)
        gv = rand_unit_poly(rng, d, n)
        g = MatPoly([Matrix(n, n, [Jet(val_of(x), rand_scalar(rng))
                                   for x in coeff.data])
                     for coeff in gv.coeffs])
        eta = PrincipalPart([rand_jet_matrix(rng, n, n) for _ in range(d)], n)
        acted = coadjoint(g, eta)
        val_acted = coadjoint(MatPoly([m.val_part() for m in g.coeffs]),
                              PrincipalPart([m.val_part() for m in eta.coeffs], n))
        if [m.val_part() for m in acted.coeffs] != val_acted.coeffs:
            return CheckResult("jet_projection", False, c + 1,
                               "coadjoint does not commute with projection")
        x = rand_jet_matrix(rng, n * d, n * d)
        pr = principal_projection(x, n, d)
        pr_val = principal_projection(x.val_part(), n, d)
        if [m.val_part() for m in pr.coeffs] != pr_val.coeffs:
            return CheckResult("jet_projection", False, c + 1,
                               "projection does not commute")
    return CheckResult("jet_projection", True, cases)


def _rand_two_vertex_point(rng, d1=2):
    q = two_vertex_quiver(1, d1)
    dims = {"0": rng.randint(1, 2), "1": rng.randint(1, 2)}
    fwd = rand_matrix(rng, vertex_space_dim(q, dims, "1"),
                      vertex_space_dim(q, dims, "0"))
    bwd = rand_matrix(rng, vertex_space_dim(q, dims, "0"),
                      vertex_space_dim(q, dims, "1"))
    return q, dims, RepPoint(q, dims, {"e": (fwd, bwd)})


def suite_moment_map_contract(seed=0, cases=40) -> CheckResult:
    rng = random.Random(seed)
    # frozen single-arrow example: moment is (xy, -yx)
    q = Quiver(["0", "1"], [("e", "0", "1")])
    x = rand_nonzero_scalar(rng)
    y = rand_nonzero_scalar(rng)
    point = RepPoint(q, {"0": 1, "1": 1},
                     {"e": (Matrix(1, 1, [x]), Matrix(1, 1, [y]))})
    mm = moment_map(point)
    if mm["1"].coeffs[0].at(0, 0) != x * y or mm["0"].coeffs[0].at(0, 0) != -(y * x):
        return CheckResult("moment_map_contract", False, 1, "single-arrow moment")
    # frozen source-side order-two example pinning the sign and shift
    # conventions: fwd = [1 0], bwd = [0;1] across 0 -> 1 with d_0 = 2
    # gives moment -z^{-2} at the source
    q2 = Quiver(["0", "1"], [("e", "0", "1")], {"0": 2})
    one = as_exact(1)
    pt2 = RepPoint(q2, {"0": 1, "1": 1},
                   {"e": (Matrix(1, 2, [one, 0]), Matrix(2, 1, [0, one]))})
    mm2 = moment_map(pt2)["0"]
    if mm2 != PrincipalPart([Matrix.zeros(1, 1), Matrix.scalar(1, -1)], 1):
        return CheckResult("moment_map_contract", False, 1,
                           "source-side order-two moment")
    for c in range(cases):
        d1 = rng.randint(1, 3)
        q, dims, point = _rand_two_vertex_point(rng, d1)
        gauge = {v: rand_unit_poly(rng, q.d(v), dims[v]) for v in q.vertices}
        moved = gauge_act(gauge, point)
        mm0, mm1 = moment_map(point), moment_map(moved)
        for v in q.vertices:
            if mm1[v] != coadjoint(gauge[v], mm0[v]):
                return CheckResult("moment_map_contract", False, c + 1,
                                   f"equivariance at {v}")
        total = sum((mm0[v].residue().trace() for v in q.vertices), as_exact(0))
        if total:
            return CheckResult("moment_map_contract", False, c + 1,
                               "trace identity")
    return CheckResult("moment_map_contract", True, cases)


def suite_pole_pair(seed=0, cases=40) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        d = rng.randint(1, 4)
        v = rng.randint(1, 2)
        w = rng.randint(v, v + 2)
        lam = [rand_scalar(rng) for _ in range(d - 1)] + [rand_nonzero_scalar(rng)]
        b_in, b_out = pole_pair(d, v, w, lam)
        if not principal_projection(b_in @ b_out, v, d).is_scalar([-x for x in lam]):
            return CheckResult("pole_pair", False, c + 1, "projection level")
        nilp = nilpotent_on(v, d)
        coeffs = []
        cur = b_in
        for k in range(d):
            if k:
                cur = nilp @ cur
            coeffs.append(-(b_out @ cur))
        phi = PrincipalPart(coeffs, w)
        corner = PrincipalPart.zero(d, w)
        for k in range(d):
            m = Matrix.zeros(w, w)
            for t in range(v):
                m.data[t * w + t] = lam[k]
            corner.coeffs[k] = m
        if phi != corner:
            return CheckResult("pole_pair", False, c + 1, "local part pattern")
        # non-degeneracy: b_out injective on ker N, b_in + range N surjective
        if rank(vstack([b_out, nilp])) != v * d:
            return CheckResult("pole_pair", False, c + 1, "kernel condition")
        if rank(hstack([b_in, nilp])) != v * d:
            return CheckResult("pole_pair", False, c + 1, "range condition")
        # placed at a vertex with one incoming and one outgoing arrow, the
        # moment must agree with the orientation-signed defining sum
        if w >= 2:
            q = Quiver(["u", "p", "x"], [("a", "u", "p"), ("b", "p", "x")],
                       {"p": d, "u": 1, "x": 1})
            dims = {"u": w - 1, "p": v, "x": 1}
            point = set_vertex_pair(RepPoint.zero(q, dims), "p", b_in, b_out)
            fa, ba = point.mats["a"]
            fb, bb = point.mats["b"]
            anchor = principal_projection(fa @ ba - bb @ fb, v, d)
            if moment_map(point)["p"] != anchor:
                return CheckResult("pole_pair", False, c + 1,
                                   "orientation-signed defining sum")
            if not anchor.is_scalar([-x for x in lam]):
                return CheckResult("pole_pair", False, c + 1,
                                   "level through the arrow interface")
    return CheckResult("pole_pair", True, cases)


def suite_stability_invariance(seed=0, cases=8) -> CheckResult:
    rng = random.Random(seed)
    done = 0
    tuples = [(1, 1, 1, 1), (2, 2), (4,), (2, 1, 1)]
    for c in range(cases):
        tup = tuples[c % len(tuples)]
        point, level, dims, q = star_point(tup, seed * 313 + c)
        if not is_stable(point):
            return CheckResult("stability_invariance", False, c + 1, "not stable")
        gauge = {v: rand_unit_poly(rng, q.d(v), dims[v]) for v in q.vertices}
        if not is_stable(gauge_act(gauge, point)):
            return CheckResult("stability_invariance", False, c + 1,
                               "gauge broke stability")
        flipped = Quiver(q.vertices,
                         [(a.name, a.dst, a.src) for a in q.arrows], q.mult)
        moved = reorient_point(point, flipped)
        if not is_stable(moved):
            return CheckResult("stability_invariance", False, c + 1,
                               "reorientation broke stability")
        if not check_level(moved, MomentLevel(flipped,
                                              {v: list(level[v]) for v in q.vertices})):
            return CheckResult("stability_invariance", False, c + 1,
                               "reorientation broke the level")
        back = reorient_point(moved, q)
        if back != point:
            return CheckResult("stability_invariance", False, c + 1,
                               "double reversal is not the identity")
        done += 1
    return CheckResult("stability_invariance", True, done)


def suite_symplectic_moment_pairing(seed=0, cases=10) -> CheckResult:
    rng = random.Random(seed)
    for c in range(cases):
        q, dims, point = _rand_two_vertex_point(rng, rng.randint(1, 2))
        xi = {v: MatPoly([rand_matrix(rng, dims[v], dims[v])
                          for _ in range(q.d(v))]) for v in q.vertices}
        dgauge = gauge_tangent(point, xi)
        delta = {a.name: (rand_matrix(rng, point.fwd(a.name).rows,
                                      point.fwd(a.name).cols),
                          rand_matrix(rng, point.bwd(a.name).rows,
                                      point.bwd(a.name).cols))
                 for a in q.arrows}
        lhs = symplectic_pair(dgauge, delta, point)
        jet_pt = point_with_tangent(point, delta)
        mm = moment_map(jet_pt)
        rhs = as_exact(0)
        for v in q.vertices:
            dmu = PrincipalPart([m.tan_part() for m in mm[v].coeffs], dims[v])
            rhs = rhs + moment_pairing(xi[v], dmu)
        if lhs != rhs:
            return CheckResult("symplectic_moment_pairing", False, c + 1,
                               "Hamiltonian identity")
    return CheckResult("symplectic_moment_pairing", True, cases)


def suite_weyl_relations(seed=0, cases=100) -> CheckResult:
    rng = random.Random(seed)
    diagrams = [star_quiver(t) for t in PAINLEVE_TUPLES + PAINLEVE_ZERO_DIM_TUPLES]
    for q in diagrams:
        cd = cartan_matrix(q)
        verts = list(q.vertices)
        for c in range(cases):
            dims = {v: rng.randint(-4, 5) for v in verts}
            level = MomentLevel(q, {v: [rand_scalar(rng) for _ in range(q.d(v))]
                                    for v in verts})
            i = verts[rng.randrange(len(verts))]
            j = verts[rng.randrange(len(verts))]
            if cd.reflect_dims(i, cd.reflect_dims(i, dims)) != dims:
                return CheckResult("weyl_relations", False, c + 1, "s_i^2 != 1")
            if reflect_level(cd, i, reflect_level(cd, i, level)) != level:
                return CheckResult("weyl_relations", False, c + 1, "r_i^2 != 1")
            if i == j:
                continue
            m = cd.coxeter_order(i, j)
            if m is None:
                continue
            dd, ll = dims, level
            for _ in range(m):
                dd = cd.reflect_dims(j, cd.reflect_dims(i, dd))
                ll = reflect_level(cd, j, reflect_level(cd, i, ll))
            if dd != dims:
                return CheckResult("weyl_relations", False, c + 1,
                                   f"(s_i s_j)^{m} != 1")
            if ll != level:
                return CheckResult("weyl_relations", False, c + 1,
                                   f"(r_i r_j)^{m} != 1")
            # residue side transforms by the transposed reflection
            ri = reflect_level(cd, i, level)
            ii = q.index(i)
            for v in verts:
                expect = level.residue(v) - as_exact(cd.c[ii][q.index(v)]) \
                    * level.residue(i)
                if ri.residue(v) != expect:
                    return CheckResult("weyl_relations", False, c + 1,
                                       "transposed reflection on residues")
    return CheckResult("weyl_relations", True, cases)


def suite_dynkin_relabel(seed=0, cases=12) -> CheckResult:
    rng = random.Random(seed)
    entries = catalog()
    for c in range(cases):
        label, q, _ = entries[rng.randrange(len(entries))]
        perm_targets = list(q.vertices)
        rng.shuffle(perm_targets)
        perm = dict(zip(q.vertices, perm_targets))
        shuffled = q.relabeled(perm)
        order = sorted(shuffled.vertices, key=lambda v: perm_targets.index(v))
        reordered = Quiver(order, [(a.name, a.src, a.dst) for a in shuffled.arrows],
                           shuffled.mult)
        if dynkin_type(cartan_matrix(reordered)) != label:
            return CheckResult("dynkin_relabel", False, c + 1,
                               f"{label} lost under relabeling")
    return CheckResult("dynkin_relabel", True, cases)


SUITES = [
    suite_truncated_inverse,
    suite_coadjoint_action,
    suite_projection_kernel,
    suite_spectral_split,
    suite_jet_projection,
    suite_moment_map_contract,
    suite_pole_pair,
    suite_stability_invariance,
    suite_symplectic_moment_pairing,
    suite_weyl_relations,
    suite_dynkin_relabel,
]


def run_selfcheck(seed: int = 0, scale: Fraction | float = 1):
    """Run every suite; returns (all_ok, [CheckResult])."""
    results = []
    for fn in SUITES:
        import inspect
        default_cases = inspect.signature(fn).parameters["cases"].default
        cases = max(1, int(default_cases * scale))
        try:
            results.append(fn(seed=seed, cases=cases))
        except Exception as exc:  # a crash is a failure with a counterexample
            results.append(CheckResult(fn.__name__.removeprefix("suite_"),
                                       False, 0, f"raised {exc!r}"))
    return all(r.ok for r in results), results
