"""Isometry pairs: a nondegenerate symmetric or symplectic form plus one
of its isometries, with the doubled-space constructions around them.

Conventions fixed once here: column vectors, b(x, y) = x^T G y, so the
form-to-dual map L_b has matrix G and the transposed inverse realizes the
dual action.  On the doubled space V x V* the first block of coordinates
is V, the second the dual basis, and the hyperbolic Gram is
[[0, eps*I], [I, 0]].  Zero-dimensional pairs are legal and act as the
identity for orthogonal sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Subspace, block_diag, hstack


class IsopairError(ValueError):
    """Invalid isometry-pair data or an inadmissible operation on it."""


class Isopair:
    """(epsilon, Gram, isometry) over one field; immutable by convention."""

    __slots__ = ("field", "epsilon", "gram", "u")

    def __init__(self, epsilon: int, gram: Matrix, u: Matrix):
        if epsilon not in (1, -1):
            raise IsopairError("epsilon must be +1 or -1")
        if gram.field.key != u.field.key:
            raise IsopairError("gram and u live over different fields")
        if not (gram.is_square and u.is_square and gram.nrows == u.nrows):
            raise IsopairError("gram and u must be square of equal size")
        object.__setattr__(self, "field", gram.field)
        object.__setattr__(self, "epsilon", epsilon)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "u", u)

    def __setattr__(self, *a):
        raise AttributeError("Isopair is immutable")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Isopair)
            and other.epsilon == self.epsilon
            and other.gram == self.gram
            and other.u == self.u
        )

    def __hash__(self):
        return hash((self.epsilon, self.gram, self.u))

    def __repr__(self):
        return f"Isopair(eps={self.epsilon}, dim={self.dim}, {self.field.key})"


def validate(pair: Isopair) -> list:
    """Check all invariants; returns a list of failure descriptions."""
    problems = []
    if pair.field.char == 2:
        problems.append("characteristic 2 field")
    if not pair.gram.is_invertible():
        problems.append("degenerate form: Gram matrix is singular")
    if pair.epsilon == 1:
        if not pair.gram.is_symmetric():
            problems.append("epsilon=+1 but Gram is not symmetric")
    else:
        if not pair.gram.is_alternating():
            problems.append("epsilon=-1 but Gram is not alternating")
    if not pair.u.is_invertible():
        problems.append("u is singular")
    if pair.u.T @ pair.gram @ pair.u != pair.gram:
        problems.append("u is not an isometry of the form")
    return problems


def require_valid(pair: Isopair):
    problems = validate(pair)
    if problems:
        raise IsopairError("; ".join(problems))


def is_isometry_of(pair: Isopair, s: Matrix) -> bool:
    return s.T @ pair.gram @ s == pair.gram


def perp_sum(p1: Isopair, p2: Isopair) -> Isopair:
    """Orthogonal sum: block-diagonal Gram and isometry."""
    if p1.epsilon != p2.epsilon:
        raise IsopairError("orthogonal sum needs equal epsilon")
    if p1.field.key != p2.field.key:
        raise IsopairError("orthogonal sum needs a common field")
    F = p1.field
    return Isopair(
        p1.epsilon,
        block_diag(F, [p1.gram, p2.gram]),
        block_diag(F, [p1.u, p2.u]),
    )


def restrict(pair: Isopair, basis) -> Isopair:
    """Restrict to the span of the given basis columns, in that basis.

    ``basis`` is an n x k matrix (or a Subspace, whose canonical basis is
    used).  The span must be invariant under u and regular for the form;
    otherwise IsopairError is raised.
    """
    if isinstance(basis, Subspace):
        basis = basis.basis
    b = basis
    if b.ncols and b.rank() != b.ncols:
        raise IsopairError("restriction basis columns are dependent")
    ub = pair.u @ b
    coords = b.solve(ub)
    if coords is None:
        raise IsopairError("subspace is not invariant under u")
    gram = b.T @ pair.gram @ b
    if gram.ncols and not gram.is_invertible():
        raise IsopairError("subspace is not regular for the form")
    return Isopair(pair.epsilon, gram, coords)


def orthogonal_complement(pair: Isopair, basis) -> Subspace:
    """The orthogonal complement of the span of the basis columns."""
    if isinstance(basis, Subspace):
        basis = basis.basis
    return Subspace(pair.field, pair.dim, (basis.T @ pair.gram).kernel())


def transport(pair: Isopair, g: Matrix) -> Isopair:
    """The isometric pair carried through an invertible g:
    u -> g^{-1} u g and Gram -> g^T G g."""
    gi = g.inverse()
    return Isopair(pair.epsilon, g.T @ pair.gram @ g, gi @ pair.u @ g)


# ----------------------------------------------------------------------
# Doubled-space constructions
# ----------------------------------------------------------------------

def hyperbolic_gram(field, n: int, epsilon: int) -> Matrix:
    eye = Matrix.identity(field, n)
    zero = Matrix.zeros(field, n, n)
    top = hstack(zero, eye.scale(field.canon(epsilon)))
    bot = hstack(eye, zero)
    rows = list(top.rows) + list(bot.rows)
    return Matrix(field, rows, 2 * n)


def dual_action(u: Matrix) -> Matrix:
    """Matrix of the dual-space action phi -> phi o u^{-1} in dual coords."""
    return u.inverse().T


def h_of(u: Matrix) -> Matrix:
    """The doubled isometry u + dual action on V x V*."""
    return block_diag(u.field, [u, dual_action(u)])


def hyperbolic_extension(u: Matrix, epsilon: int) -> Isopair:
    """The pair (hyperbolic form on V x V*, u + dual action of u)."""
    if not u.is_square:
        raise IsopairError("hyperbolic extension needs a square matrix")
    if not u.is_invertible():
        raise IsopairError("hyperbolic extension needs an invertible matrix")
    return Isopair(epsilon, hyperbolic_gram(u.field, u.nrows, epsilon), h_of(u))


@dataclass(frozen=True)
class KappaForm:
    """The bilinear form recovered from a block-exchanging involution."""

    gram: Matrix
    epsilon: int


def kappa(bgram: Matrix, epsilon: int) -> Matrix:
    """The involution (x, phi) -> (L_b^{-1} phi, L_b x) of V x V*."""
    if epsilon == 1:
        if not bgram.is_symmetric():
            raise IsopairError("kappa with epsilon=+1 needs a symmetric form")
    elif epsilon == -1:
        if not bgram.is_alternating():
            raise IsopairError("kappa with epsilon=-1 needs an alternating form")
    else:
        raise IsopairError("epsilon must be +1 or -1")
    if not bgram.is_invertible():
        raise IsopairError("kappa needs a nondegenerate form")
    F = bgram.field
    n = bgram.nrows
    zero = Matrix.zeros(F, n, n)
    top = hstack(zero, bgram.inverse())
    bot = hstack(bgram, zero)
    return Matrix(F, list(top.rows) + list(bot.rows), 2 * n)


def kappa_compose(bgram: Matrix, cgram: Matrix):
    """Return (kappa(b) @ kappa(c), h(b^{-1} c)); the two are asserted equal."""
    sym = bgram.is_symmetric() and cgram.is_symmetric()
    alt = bgram.is_alternating() and cgram.is_alternating()
    if not (sym or alt):
        raise IsopairError("forms must be both symmetric or both alternating")
    eps = 1 if sym else -1
    product = kappa(bgram, eps) @ kappa(cgram, eps)
    extended = h_of(bgram.inverse() @ cgram)
    if product != extended:
        raise AssertionError("kappa(b) kappa(c) differs from the extension of b^{-1} c")
    return product, extended


def recognize_kappa(v: Matrix, epsilon: int) -> KappaForm:
    """Recover the unique b with v = kappa(b) from a block-exchanging
    isometric involution of the doubled space."""
    F = v.field
    if v.nrows % 2:
        raise IsopairError("doubled space must have even dimension")
    n = v.nrows // 2
    zero = Matrix.zeros(F, n, n)
    ul = Matrix(F, [r[:n] for r in v.rows[:n]], n)
    lr = Matrix(F, [r[n:] for r in v.rows[n:]], n)
    if ul != zero or lr != zero:
        raise IsopairError("involution does not exchange the two blocks")
    if v @ v != Matrix.identity(F, 2 * n):
        raise IsopairError("matrix is not an involution")
    hpair = Isopair(epsilon, hyperbolic_gram(F, n, epsilon), v)
    if validate(hpair):
        raise IsopairError("matrix is not an isometry of the hyperbolic form")
    b = Matrix(F, [r[:n] for r in v.rows[n:]], n)  # lower-left block
    if epsilon == 1 and not b.is_symmetric():
        raise IsopairError("recovered form is not symmetric")
    if epsilon == -1 and not b.is_alternating():
        raise IsopairError("recovered form is not alternating")
    return KappaForm(gram=b, epsilon=epsilon)


def sum_extension_isometry(field, n1: int, n2: int) -> Matrix:
    """The coordinate permutation taking the doubled space of a direct sum
    to the orthogonal sum of the two doubled spaces."""
    size = 2 * (n1 + n2)
    rows = [[field.zero] * size for _ in range(size)]

    def emit(target, source):
        rows[target][source] = field.one

    for i in range(n1):
        emit(i, i)                                 # V1
        emit(n1 + i, n1 + n2 + i)                  # V1* from phi . i1
    for i in range(n2):
        emit(2 * n1 + i, n1 + i)                   # V2
        emit(2 * n1 + n2 + i, 2 * n1 + n2 + i)     # V2* from phi . i2
    return Matrix(field, rows, size)
