"""Truncated matrix polynomials, principal parts and their coadjoint calculus.

Conventions, fixed once for the whole package:

* ``R_d = C[[z]]/z^d`` carries the basis ``z^{d-1}, ..., z, 1``; block ``m``
  (1-based) of a flattened space ``V (x) R_d`` holds the ``z^{d-m}``
  component, so the flattened index of (power slot m, vector slot a) is
  ``(m-1)*v + a``.
* Multiplication by z is ``jordan_shift(d)`` (ones on the superdiagonal),
  and acts on ``V (x) R_d`` as ``kron(J_d, 1_V)``.
* A polynomial ``g(z) = sum g_k z^k`` acts as ``sum kron(J_d^k, g_k)``.
* A principal part ``eta(z) = sum_{k=1..d} eta_k z^{-k}`` stores its
  coefficients ascending in pole order: ``coeffs == [eta_1, ..., eta_d]``.
"""

from __future__ import annotations

from . import conventions
from .errors import (NonInvertibleConstantTerm, NotSemisimpleLeading,
                     SingularMatrix, SizeMismatch)
from .linalg import Matrix, hstack, inverse, kernel_basis, kron
from .scalars import ZERO, as_scalar


def jordan_shift(d: int) -> Matrix:
    """Nilpotent single-block shift representing multiplication by z."""
    j = Matrix.zeros(d, d)
    one = as_scalar(1)
    for t in range(d - 1):
        if conventions.shift_upper():
            j.data[t * d + (t + 1)] = one
        else:
            j.data[(t + 1) * d + t] = one
    return j


def nilpotent_on(v: int, d: int) -> Matrix:
    """Multiplication by z on a flattened ``V (x) R_d`` with dim V = v."""
    return kron(jordan_shift(d), Matrix.identity(v))


class MatPoly:
    """Element of the truncated polynomial algebra gl(V) (x) R_d."""

    __slots__ = ("d", "n", "coeffs")

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise SizeMismatch("a truncated polynomial needs order >= 1")
        n = coeffs[0].rows
        for c in coeffs:
            if c.rows != n or c.cols != n:
                raise SizeMismatch("coefficients must be square of equal size")
        self.d = len(coeffs)
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def identity(cls, d: int, n: int) -> "MatPoly":
        return cls([Matrix.identity(n)] + [Matrix.zeros(n, n) for _ in range(d - 1)])

    @classmethod
    def constant(cls, d: int, m: Matrix) -> "MatPoly":
        if m.rows != m.cols:
            raise SizeMismatch("constant term must be square")
        return cls([m] + [Matrix.zeros(m.rows, m.rows) for _ in range(d - 1)])

    @classmethod
    def one_plus(cls, d: int, power: int, s: Matrix) -> "MatPoly":
        """1 + s * z^power."""
        g = cls.identity(d, s.rows)
        if not 1 <= power < d:
            raise SizeMismatch("power out of range")
        g.coeffs[power] = s
        return g

    def _check(self, other: "MatPoly"):
        if self.d != other.d or self.n != other.n:
            raise SizeMismatch("truncation order or size mismatch")

    def __mul__(self, other: "MatPoly") -> "MatPoly":
        self._check(other)
        out = [Matrix.zeros(self.n, self.n) for _ in range(self.d)]
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for b in range(self.d - a):
                cb = other.coeffs[b]
                if not cb.is_zero():
                    out[a + b] = out[a + b] + ca @ cb
        return MatPoly(out)

    def inverse(self) -> "MatPoly":
        try:
            h0 = inverse(self.coeffs[0])
        except SingularMatrix as exc:
            raise NonInvertibleConstantTerm(str(exc)) from exc
        out = [h0]
        for k in range(1, self.d):
            acc = Matrix.zeros(self.n, self.n)
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] @ out[k - j]
            out.append(-(h0 @ acc))
        return MatPoly(out)

    def realize(self) -> Matrix:
        """The (n*d) x (n*d) matrix of this polynomial acting on V (x) R_d."""
        j = jordan_shift(self.d)
        out = kron(Matrix.identity(self.d), self.coeffs[0])
        jp = Matrix.identity(self.d)
        for k in range(1, self.d):
            jp = jp @ j
            if not self.coeffs[k].is_zero():
                out = out + kron(jp, self.coeffs[k])
        return out

    def is_unit(self) -> bool:
        from .linalg import is_invertible_matrix
        return is_invertible_matrix(self.coeffs[0])

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return self.d == other.d and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        return f"MatPoly(d={self.d}, n={self.n})"


def trunc_mul(f: MatPoly, g: MatPoly) -> MatPoly:
    return f * g


def trunc_inv(g: MatPoly) -> MatPoly:
    return g.inverse()


class PrincipalPart:
    """Element sum_{k=1..d} eta_k z^{-k} of the dual of gl(V) (x) R_d."""

    __slots__ = ("d", "n", "coeffs")

    def __init__(self, coeffs, n=None):
        coeffs = list(coeffs)
        if not coeffs and n is None:
            raise SizeMismatch("order-0 principal part needs an explicit size")
        if coeffs:
            n = coeffs[0].rows
            for c in coeffs:
                if c.rows != n or c.cols != n:
                    raise SizeMismatch("coefficients must be square of equal size")
        self.d = len(coeffs)
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def zero(cls, d: int, n: int) -> "PrincipalPart":
        return cls([Matrix.zeros(n, n) for _ in range(d)], n)

    @classmethod
    def scalar(cls, d: int, n: int, lam) -> "PrincipalPart":
        """lam(z) * identity, for lam given as coefficients (lam_1, ..)."""
        lam = list(lam)
        if len(lam) > d:
            raise SizeMismatch("scalar part longer than the truncation order")
        out = cls.zero(d, n)
        for k, c in enumerate(lam):
            out.coeffs[k] = Matrix.scalar(n, as_scalar(c))
        return out

    def _check(self, other: "PrincipalPart"):
        if self.d != other.d or self.n != other.n:
            raise SizeMismatch("principal part mismatch")

    def __add__(self, other):
        self._check(other)
        return PrincipalPart([a + b for a, b in zip(self.coeffs, other.coeffs)], self.n)

    def __sub__(self, other):
        self._check(other)
        return PrincipalPart([a - b for a, b in zip(self.coeffs, other.coeffs)], self.n)

    def __neg__(self):
        return PrincipalPart([-a for a in self.coeffs], self.n)

    def shift_scalar(self, lam) -> "PrincipalPart":
        """Subtract lam(z) * identity."""
        return self - PrincipalPart.scalar(self.d, self.n, lam)

    def residue(self) -> Matrix:
        return self.coeffs[0] if self.d >= 1 else Matrix.zeros(self.n, self.n)

    def leading(self) -> Matrix:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_scalar(self, lam) -> bool:
        """Exact equality with lam(z) * identity."""
        return self == PrincipalPart.scalar(self.d, self.n, lam)

    def padded(self, d2: int) -> "PrincipalPart":
        if d2 < self.d:
            raise SizeMismatch("cannot pad downwards")
        return PrincipalPart(self.coeffs + [Matrix.zeros(self.n, self.n)
                                            for _ in range(d2 - self.d)], self.n)

    def truncated(self, d2: int) -> "PrincipalPart":
        """Drop coefficients above pole order d2 (they must vanish)."""
        for c in self.coeffs[d2:]:
            if not c.is_zero():
                raise SizeMismatch("nonzero coefficient above the target order")
        return PrincipalPart(self.coeffs[:d2], self.n)

    def effective_order(self) -> int:
        for k in range(self.d, 0, -1):
            if not self.coeffs[k - 1].is_zero():
                return k
        return 0

    def __eq__(self, other):
        if not isinstance(other, PrincipalPart):
            return NotImplemented
        return self.d == other.d and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PrincipalPart(d={self.d}, n={self.n})"


def coadjoint(g: MatPoly, eta: PrincipalPart) -> PrincipalPart:
    """Principal part of g(z) eta(z) g(z)^{-1}."""
    if g.d != eta.d or g.n != eta.n:
        raise SizeMismatch("gauge and principal part sizes differ")
    h = g.inverse()
    d, n = eta.d, eta.n
    out = [Matrix.zeros(n, n) for _ in range(d)]
    for a in range(d):
        ga = g.coeffs[a]
        if ga.is_zero():
            continue
        for c in range(d):
            hc = h.coeffs[c]
            if hc.is_zero():
                continue
            # z-power bookkeeping: a - b + c = -k with 1 <= b <= d
            for k in range(1, d + 1):
                b = k + a + c
                if b > d:
                    break
                eb = eta.coeffs[b - 1]
                if not eb.is_zero():
                    out[k - 1] = out[k - 1] + ga @ eb @ hc
    return PrincipalPart(out, n)


def principal_projection(x: Matrix, v: int, d: int) -> PrincipalPart:
    """Transpose of the inclusion of gl(V) (x) R_d into End(V (x) R_d):
    coefficient k is the R_d-partial trace of x @ N^{k-1}."""
    if x.rows != v * d or x.cols != v * d:
        raise SizeMismatch(f"expected a {v * d} x {v * d} matrix")
    n = nilpotent_on(v, d)
    out = []
    cur = x
    for k in range(1, d + 1):
        if k > 1:
            cur = cur @ n
        acc = Matrix.zeros(v, v)
        for m in range(d):
            acc = acc + cur.sub(m * v, (m + 1) * v, m * v, (m + 1) * v)
        out.append(acc)
    return PrincipalPart(out, v)


def _block_offdiag_zero(m: Matrix, p: int) -> bool:
    n = m.rows
    return m.sub(0, p, p, n).is_zero() and m.sub(p, n, 0, p).is_zero()


def spectral_split(eta: PrincipalPart, mu) -> tuple[MatPoly, int]:
    """Gauge eta into block-diagonal form when its leading coefficient is
    semisimple with spectrum in {mu, 0}.

    Returns (g, p) where p is the size of the mu-eigenblock (placed first)
    and ``coadjoint(g, eta)`` has every coefficient block-diagonal with
    leading coefficient diag(mu * 1_p, 0).
    """
    mu = as_scalar(mu)
    if not mu:
        raise NotSemisimpleLeading("the split eigenvalue must be nonzero")
    n = eta.n
    d = eta.d
    lead = eta.leading()
    k_mu = kernel_basis(lead - Matrix.scalar(n, mu))
    k_zero = kernel_basis(lead)
    if len(k_mu) + len(k_zero) != n:
        raise NotSemisimpleLeading("kernel dimensions do not fill the space")
    p = len(k_mu)
    cols = k_mu + k_zero
    u = hstack(cols) if cols else Matrix.zeros(n, 0)
    try:
        g0 = inverse(u)
    except SingularMatrix as exc:
        raise NotSemisimpleLeading("eigenvectors are not independent") from exc
    g = MatPoly.constant(d, g0)
    cur = coadjoint(g, eta)
    for k in range(d - 1, 0, -1):
        ek = cur.coeffs[k - 1]
        s12 = ek.sub(0, p, p, n).scale(1 / mu)
        s21 = ek.sub(p, n, 0, p).scale(-1 / mu)
        if s12.is_zero() and s21.is_zero():
            continue
        s = Matrix.zeros(n, n)
        for i in range(p):
            for j in range(n - p):
                s.data[i * n + (p + j)] = s12.at(i, j)
        for i in range(n - p):
            for j in range(p):
                s.data[(p + i) * n + j] = s21.at(i, j)
        step = MatPoly.one_plus(d, d - k, s)
        cur = coadjoint(step, cur)
        g = step * g
    expected_lead = Matrix.zeros(n, n)
    for i in range(p):
        expected_lead.data[i * n + i] = mu
    if cur.leading() != expected_lead:
        raise NotSemisimpleLeading("leading coefficient failed to align")
    for c in cur.coeffs:
        if not _block_offdiag_zero(c, p):
            raise NotSemisimpleLeading("off-diagonal blocks did not vanish")
    return g, p
