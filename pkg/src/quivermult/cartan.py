"""Generalized Cartan matrices, bilinear forms, Weyl actions, root tests.

A quiver with multiplicities determines C = 2*I - A*D where A is the
adjacency matrix of the underlying graph and D = diag(multiplicities).
D*C is symmetric and induces the invariant form (alpha_i, alpha_j) = d_i c_ij.
"""

from __future__ import annotations

from .errors import SizeMismatch
from .quiver import Quiver
from .scalars import GaussianRational, ZERO, as_exact


class CartanData:
    """Cartan matrix C, multiplicity matrix D and symmetrized form D*C."""

    __slots__ = ("quiver", "a", "dmat", "c", "b")

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        n = len(quiver.vertices)
        self.a = quiver.adjacency()
        self.dmat = [quiver.d(v) for v in quiver.vertices]
        self.c = [[(2 if i == j else 0) - self.a[i][j] * self.dmat[j]
                   for j in range(n)] for i in range(n)]
        self.b = [[self.dmat[i] * self.c[i][j] for j in range(n)] for i in range(n)]

    @property
    def size(self) -> int:
        return len(self.dmat)

    def _vec(self, dims) -> list:
        return [dims.get(v, 0) for v in self.quiver.vertices]

    def pairing(self, v, w) -> int:
        """Symmetric bilinear form (v, w) = v^T (D C) w on dimension vectors."""
        x, y = self._vec(v), self._vec(w)
        return sum(x[i] * self.b[i][j] * y[j]
                   for i in range(self.size) for j in range(self.size))

    def coroot_pairing(self, v, i) -> int:
        """<v, alpha_i^vee> = sum_j c_ij v_j."""
        x = self._vec(v)
        i = self.quiver.index(i)
        return sum(self.c[i][j] * x[j] for j in range(self.size))

    def reflect_dims(self, i, dims) -> dict:
        """Simple reflection s_i on dimension vectors; may leave Z_{>=0}."""
        i = str(i)
        out = dict(dims)
        out[i] = dims.get(i, 0) - self.coroot_pairing(dims, i)
        return out

    def coxeter_order(self, i, j):
        """Order m_ij of s_i s_j, or None when infinite."""
        i, j = self.quiver.index(i), self.quiver.index(j)
        if i == j:
            raise SizeMismatch("coxeter_order needs distinct vertices")
        p = self.c[i][j] * self.c[j][i]
        table = {0: 2, 1: 3, 2: 4, 3: 6}
        return table.get(p) if p < 4 else None

    def variety_dimension(self, dims) -> int:
        """2 - (v, v)."""
        return 2 - self.pairing(dims, dims)

    def root_type(self, dims) -> str:
        """Classify a nonzero vector in the positive cone as a positive
        "real" root, "imaginary" root, or "not_root".

        Iterated descent: reflect down whenever some (v, alpha_i) > 0; a
        simple root is real; landing outside the cone means no root; a
        connected-support vector pairing non-positively with every simple
        coroot is imaginary.
        """
        cur = {v: dims.get(v, 0) for v in self.quiver.vertices}
        if all(x == 0 for x in cur.values()):
            raise SizeMismatch("the zero vector is not classified")
        if any(x < 0 for x in cur.values()):
            return "not_root"
        while True:
            simple = [v for v in self.quiver.vertices if cur[v] != 0]
            if len(simple) == 1 and cur[simple[0]] == 1:
                return "real"
            descended = False
            for v in self.quiver.vertices:
                if self.coroot_pairing(cur, v) > 0:
                    cur = self.reflect_dims(v, cur)
                    if cur[v] < 0:
                        return "not_root"
                    descended = True
                    break
            if descended:
                continue
            support = [v for v in self.quiver.vertices if cur[v] > 0]
            return "imaginary" if self.quiver.support_connected(support) else "not_root"


def cartan_matrix(quiver: Quiver) -> CartanData:
    return CartanData(quiver)


class MomentLevel:
    """Per-vertex pole coefficients (lam_{v,1}, ..., lam_{v,d_v}) fixing the
    scalar level of the moment map."""

    __slots__ = ("quiver", "coeffs")

    def __init__(self, quiver: Quiver, coeffs):
        self.quiver = quiver
        table = {}
        for v in quiver.vertices:
            raw = list(coeffs.get(v, []))
            d = quiver.d(v)
            if len(raw) > d:
                raise SizeMismatch(f"level at {v} longer than multiplicity {d}")
            raw = raw + [0] * (d - len(raw))
            table[v] = tuple(as_exact(c) for c in raw)
        self.coeffs = table

    def __getitem__(self, v):
        return self.coeffs[str(v)]

    def residue(self, v) -> GaussianRational:
        c = self.coeffs[str(v)]
        return c[0] if c else ZERO

    def residues(self) -> dict:
        return {v: self.residue(v) for v in self.quiver.vertices}

    def top(self, v) -> GaussianRational:
        return self.coeffs[str(v)][-1]

    def replace(self, v, coeffs) -> "MomentLevel":
        table = {u: list(c) for u, c in self.coeffs.items()}
        table[str(v)] = list(coeffs)
        return MomentLevel(self.quiver, table)

    def __eq__(self, other):
        if not isinstance(other, MomentLevel):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"MomentLevel({self.coeffs})"


def reflect_level(cd: CartanData, i, level: MomentLevel) -> MomentLevel:
    """Reflection r_i on levels: negate at i, shift residues elsewhere by
    -c_ij * res(lam_i)."""
    i = str(i)
    res_i = level.residue(i)
    ii = cd.quiver.index(i)
    table = {}
    for v in cd.quiver.vertices:
        cur = list(level[v])
        if v == i:
            table[v] = [-c for c in cur]
        else:
            jj = cd.quiver.index(v)
            if cur:
                cur[0] = cur[0] - as_exact(cd.c[ii][jj]) * res_i
            table[v] = cur
    return MomentLevel(cd.quiver, table)


def residue_pairing(dims, level: MomentLevel) -> GaussianRational:
    """Scalar product v . res(lambda); a nonzero value forces the moment
    level set to be empty."""
    out = ZERO
    for v in level.quiver.vertices:
        out = out + as_exact(dims.get(v, 0)) * level.residue(v)
    return out


def level_set_forced_empty(dims, level: MomentLevel) -> bool:
    return bool(residue_pairing(dims, level))


def apply_dim_word(cd: CartanData, word, dims) -> dict:
    out = dict(dims)
    for i in word:
        out = cd.reflect_dims(i, out)
    return out


def apply_level_word(cd: CartanData, word, level: MomentLevel) -> MomentLevel:
    out = level
    for i in word:
        out = reflect_level(cd, i, out)
    return out


def imaginary_null_vector(cd: CartanData) -> dict | None:
    """Primitive positive integer vector in the kernel of C, when the kernel
    is one-dimensional (the affine null root delta)."""
    from .linalg import Matrix, kernel_basis

    n = cd.size
    m = Matrix.from_rows([[as_exact(cd.c[i][j]) for j in range(n)] for i in range(n)])
    basis = kernel_basis(m)
    if len(basis) != 1:
        return None
    vec = [basis[0].at(i, 0) for i in range(n)]
    denoms = [x.re.denominator for x in vec]
    lcm = 1
    for q in denoms:
        g = _gcd(lcm, q)
        lcm = lcm // g * q
    ints = [int(x.re * lcm) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        return None
    return {v: ints[i] for i, v in enumerate(cd.quiver.vertices)}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1
