"""Quadratic-type extensions L = F[t]/(p) for irreducible palindromials p.

Elements of L are plain coefficient tuples of length deg(p), so matrices
over L reuse the generic :class:`bireflect.linalg.Matrix`.  The field comes
with three pieces of structure beyond the arithmetic:

* the involution sending the class of t to its inverse (the unique
  nontrivial F-algebra automorphism doing so),
* the F-linear form ``fp`` reading the constant coordinate of lambda +
  lambda-conjugate through the fixed-subfield basis (t + 1/t)^j,
* the sesquilinear lift turning a compatible F-bilinear form on an
  L-space into a matrix over L (Hermitian or skew-Hermitian).

The degenerate palindromials t - 1 and t + 1 are rejected here; forms
attached to them live directly over F.
"""

from __future__ import annotations

from .linalg import Matrix
from .poly import (
    Poly,
    PolynomialError,
    is_irreducible,
    is_palindromial,
    trace_decompose,
)


class ExtensionField:
    """F[t]/(p) with the t -> 1/t involution; elements are coeff tuples."""

    kind = "extension"

    def __init__(self, modulus: Poly, check_irreducible: bool = True):
        F = modulus.field
        n = modulus.degree
        if n < 2 or n % 2 != 0:
            raise PolynomialError(f"modulus must have even degree >= 2, got {modulus}")
        if not modulus.is_monic or modulus.coeff(0) != F.one:
            raise PolynomialError("modulus must be monic with constant term 1")
        if not is_palindromial(modulus):
            raise PolynomialError(f"modulus {modulus} is not a palindromial")
        self.irreducibility_checked = False
        if check_irreducible and F.kind == "prime":
            if not is_irreducible(modulus):
                raise PolynomialError(f"modulus {modulus} is reducible")
            self.irreducibility_checked = True
        self.base = F
        self.modulus = modulus
        self.deg = n
        self.d = n // 2
        self.char = F.char
        self.key = f"{F.key}[t]/({modulus})"
        self.zero = (F.zero,) * n
        self.one = self._embed_poly(Poly.one(F))
        self.t = self._embed_poly(Poly.x(F))
        # t^{-1} = -(c_1 + c_2 t + ... + t^{n-1}) since the constant term is 1
        inv = [F.neg(modulus.coeff(k + 1)) for k in range(n)]
        self.t_inv = tuple(inv)
        self._conj = self._conjugation_matrix()
        self.trace_poly = trace_decompose(modulus)
        self._prepare_fixed_field()
        self._prepare_pairing()

    # -- internal setup ----------------------------------------------------
    def _embed_poly(self, p: Poly):
        r = p % self.modulus if p.degree >= self.deg else p
        return tuple(r.coeff(k) for k in range(self.deg))

    def _conjugation_matrix(self) -> Matrix:
        cols = []
        power = self.one
        for _ in range(self.deg):
            cols.append(power)
            power = self.mul(power, self.t_inv)
        return Matrix.from_columns(self.base, cols, nrows=self.deg)

    def _prepare_fixed_field(self):
        # columns: (t + 1/t)^j for j < d, in the power basis of L
        F = self.base
        w = self.add(self.t, self.t_inv)
        cols = []
        power = self.one
        for _ in range(self.d):
            cols.append(power)
            power = self.mul(power, w)
        kb = Matrix.from_columns(F, cols, nrows=self.deg)
        self.k_basis = kb
        red, pivots = kb.T.rref()
        if len(pivots) != self.d:
            raise AssertionError("fixed-subfield basis is not independent")
        rows = list(pivots)
        square = Matrix(F, [[kb.at(i, j) for j in range(self.d)] for i in rows], self.d)
        self._k_rows = rows
        self._k_inv = square.inverse()

    def _prepare_pairing(self):
        # Gram of (a, b) -> fp(a*b) on the power basis, inverted once
        F = self.base
        powers = []
        power = self.one
        for _ in range(2 * self.deg - 1):
            powers.append(power)
            power = self.mul(power, self.t)
        vals = [self.fp(pk) for pk in powers]
        phi = Matrix(F, [[vals[i + j] for j in range(self.deg)] for i in range(self.deg)], self.deg)
        self._phi_inv = phi.inverse()

    # -- element arithmetic --------------------------------------------------
    def canon(self, x):
        if isinstance(x, tuple) and len(x) == self.deg:
            return tuple(self.base.canon(c) for c in x)
        if isinstance(x, (list, tuple)):
            return self._embed_poly(Poly(self.base, x))
        if isinstance(x, Poly):
            return self._embed_poly(x)
        # base-field scalar
        c = self.base.canon(x)
        return (c,) + (self.base.zero,) * (self.deg - 1)

    def embed(self, scalar):
        return self.canon(scalar)

    def add(self, a, b):
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.base
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        prod = Poly(self.base, a) * Poly(self.base, b)
        return self._embed_poly(prod)

    def inv(self, a):
        pa = Poly(self.base, a)
        if pa.is_zero:
            raise ZeroDivisionError("inverse of zero in " + self.key)
        # extended Euclid against the modulus
        r0, r1 = self.modulus, pa
        s0, s1 = Poly.zero(self.base), Poly.one(self.base)
        while not r1.is_zero:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ZeroDivisionError(
                f"zero divisor in {self.key} (modulus not irreducible?)"
            )
        c = self.base.inv(r0.coeff(0))
        return self._embed_poly(s0 * c)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def dot(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def rand(self, rng):
        return tuple(self.base.rand(rng) for _ in range(self.deg))

    def sort_key(self, a):
        return tuple(self.base.sort_key(x) for x in a)

    def to_str(self, a) -> str:
        return "[" + ",".join(self.base.to_str(x) for x in a) + "]"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ExtensionField({self.modulus!r})"

    # -- the extra structure -------------------------------------------------
    def conj(self, a):
        """Image under the involution taking the class of t to its inverse."""
        return self._conj.apply(a)

    def fp(self, a):
        """The invariant F-linear form: constant coordinate of a + conj(a)
        in the (t + 1/t)-power basis of the fixed subfield."""
        mu = self.add(a, self.conj(a))
        rhs = tuple(mu[i] for i in self._k_rows)
        coeffs = self._k_inv.apply(rhs)
        return coeffs[0]

    def norm_down(self, a):
        """Coordinates of an involution-fixed element in the (t+1/t) basis."""
        rhs = tuple(a[i] for i in self._k_rows)
        coeffs = self._k_inv.apply(rhs)
        # consistency: a must actually lie in the fixed subfield span
        recon = self.zero
        for c, j in zip(coeffs, range(self.d)):
            recon = self.add(recon, tuple(self.base.mul(c, x) for x in self.k_basis.col(j)))
        if recon != tuple(a):
            raise ValueError("element is not in the fixed subfield")
        return coeffs

    def skew_unit(self):
        """A nonzero eta with conj(eta) = -eta (t - 1/t, or a basis fallback)."""
        cand = self.sub(self.t, self.t_inv)
        if not self.is_zero(cand):
            return cand
        for j in range(self.deg):
            e = tuple(self.base.one if i == j else self.base.zero for i in range(self.deg))
            cand = self.sub(e, self.conj(e))
            if not self.is_zero(cand):
                return cand
        raise AssertionError("involution is trivial")


_EXT_CACHE: dict = {}


def get_extension(modulus: Poly) -> ExtensionField:
    """Cached ExtensionField constructor (construction does factoring work)."""
    key = (modulus.field.key, modulus.coeffs)
    ext = _EXT_CACHE.get(key)
    if ext is None:
        ext = ExtensionField(modulus)
        _EXT_CACHE[key] = ext
    return ext


def sesquilift(gram: Matrix, action: Matrix, ext: ExtensionField):
    """Lift an F-bilinear Gram on an L-space to a matrix over L.

    ``gram`` is the Gram of an F-bilinear form B on an F-space carrying an
    L-structure whose multiplication-by-t operator is ``action``.  B must
    satisfy B(t^{-1} x, y) = B(x, t y), which for an invertible action is
    the isometry condition action^T gram action = gram (checked).  Returns
    ``(H, basis)`` where basis columns are an L-basis of the space and H is
    the unique L-valued matrix with B(x_i, lam x_j) = fp(lam * H[i][j]) for
    all lam; the identity is re-verified on the power basis.
    """
    F = ext.base
    n = gram.nrows
    if n % ext.deg:
        raise ValueError("space dimension is not a multiple of [L:F]")
    if action.T @ gram @ action != gram:
        raise ValueError("bilinear form is not compatible with the L-structure")
    from .linalg import Subspace, krylov_basis, poly_on_matrix

    if poly_on_matrix(ext.modulus, action) != Matrix.zeros(F, n, n):
        raise ValueError("action does not satisfy the modulus")

    m = n // ext.deg
    basis_cols = []
    span = Subspace.zero(F, n)
    for j in range(n):
        if len(basis_cols) == m:
            break
        e = tuple(F.one if i == j else F.zero for i in range(n))
        if span.contains(e):
            continue
        basis_cols.append(e)
        block = krylov_basis(action, e, ext.deg)
        span = span.add(Subspace(F, n, block))
    if len(basis_cols) != m:
        raise AssertionError("could not extract an L-basis")
    powers = [Matrix.identity(F, n)]
    for _ in range(ext.deg - 1):
        powers.append(powers[-1] @ action)
    gpow = [gram @ pk for pk in powers]
    entries = []
    for xi in basis_cols:
        row = []
        for xj in basis_cols:
            rhs = tuple(F.dot(xi, gp.apply(xj)) for gp in gpow)
            row.append(tuple(ext._phi_inv.apply(rhs)))
        entries.append(row)
    H = Matrix(ext, entries, m)
    # round-trip identity on the power basis of L
    for i, xi in enumerate(basis_cols):
        for j, xj in enumerate(basis_cols):
            lam = ext.one
            for k in range(ext.deg):
                if F.dot(xi, gpow[k].apply(xj)) != ext.fp(ext.mul(lam, H.at(i, j))):
                    raise AssertionError("sesquilinear lift round-trip failed")
                lam = ext.mul(lam, ext.t)
    basis = Matrix.from_columns(F, basis_cols, nrows=n)
    return H, basis


def conj_transpose(H: Matrix) -> Matrix:
    """Conjugate transpose over an ExtensionField matrix."""
    ext = H.field
    return Matrix(ext, [[ext.conj(H.at(j, i)) for j in range(H.nrows)] for i in range(H.ncols)], H.nrows)
