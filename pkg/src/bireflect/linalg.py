"""Dense exact matrices and module-theoretic invariants.

Matrices are immutable (tuple-of-tuples entries, canonicalized through the
field object) so they can serve as dict keys and BFS states.  Everything is
plain Gaussian elimination at desk scale; no floating point anywhere.

Besides rank/kernel/solve this module computes minimal polynomials and
local annihilators by Krylov closure, invariant factors by Smith reduction
of tI - u over F[t], Jordan numbers n_{p,r} from a rank second difference,
and the palindromial criterion for similarity to the inverse.
"""

from __future__ import annotations

from .poly import Poly, poly_lcm, poly_reciprocal


class Matrix:
    """Immutable rectangular matrix over a field object."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(field.canon(x) for x in row) for row in rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, field, n: int):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, r: int, c: int):
        return cls(field, [[field.zero] * c for _ in range(r)], c)

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        cols = list(cols)
        if cols:
            return cls(field, list(map(list, zip(*cols))))
        return cls.zeros(field, nrows or 0, 0)

    @classmethod
    def diagonal(cls, field, entries):
        entries = list(entries)
        n = len(entries)
        m = [[field.zero] * n for _ in range(n)]
        for i, e in enumerate(entries):
            m[i][i] = e
        return cls(field, m, n)

    # -- access ------------------------------------------------------------
    def at(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int):
        return self.rows[i]

    def col(self, j: int):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field.key == self.field.key
            and other.rows == self.rows
            and other.ncols == self.ncols
        )

    def __hash__(self):
        return hash((self.field.key, self.ncols, self.rows))

    def key(self):
        """Sortable canonical key (within one field)."""
        return tuple(tuple(self.field.sort_key(x) for x in r) for r in self.rows)

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.field.key}, {self.nrows}x{self.ncols})"

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        F = self.field
        return Matrix(
            F,
            [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other):
        F = self.field
        return Matrix(
            F,
            [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        F = self.field
        return Matrix(F, [[F.neg(a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        F = self.field
        c = F.canon(c)
        return Matrix(F, [[F.mul(a, c) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        bcols = [other.col(j) for j in range(other.ncols)]
        return Matrix(F, [[F.dot(r, c) for c in bcols] for r in self.rows], other.ncols)

    def apply(self, vec):
        """Matrix times column vector (tuple in, tuple out)."""
        F = self.field
        return tuple(F.dot(r, vec) for r in self.rows)

    @property
    def T(self):
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [], self.nrows)

    def pow(self, k: int):
        if not self.is_square:
            raise ValueError("pow needs a square matrix")
        if k < 0:
            return self.inverse().pow(-k)
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # -- elimination ---------------------------------------------------------
    def rref(self):
        """Reduced row echelon form and the tuple of pivot columns."""
        F = self.field
        rows = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(n):
            if r >= m:
                break
            piv = None
            for i in range(r, m):
                if not F.is_zero(rows[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(x, inv) for x in rows[r]]
            for i in range(m):
                if i != r and not F.is_zero(rows[i][c]):
                    f = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return Matrix(F, rows, n), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        rows = [list(r) for r in self.rows]
        n = self.nrows
        acc = F.one
        for c in range(n):
            piv = None
            for i in range(c, n):
                if not F.is_zero(rows[i][c]):
                    piv = i
                    break
            if piv is None:
                return F.zero
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                acc = F.neg(acc)
            acc = F.mul(acc, rows[c][c])
            inv = F.inv(rows[c][c])
            for i in range(c + 1, n):
                if not F.is_zero(rows[i][c]):
                    f = F.mul(rows[i][c], inv)
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
        return acc

    def inverse(self):
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = hstack(self, Matrix.identity(self.field, n))
        red, pivots = aug.rref()
        if tuple(pivots) != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red.rows], n)

    def is_invertible(self) -> bool:
        return self.is_square and not self.field.is_zero(self.det())

    def kernel(self):
        """Right null space; columns of the returned n x k matrix are a basis."""
        F = self.field
        red, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        cols = []
        for f in free:
            v = [F.zero] * n
            v[f] = F.one
            for r_idx, pc in enumerate(pivots):
                v[pc] = F.neg(red.rows[r_idx][f])
            cols.append(tuple(v))
        return Matrix.from_columns(F, cols, nrows=n)

    def solve(self, rhs):
        """Solve self @ X = rhs for a matrix rhs; None when inconsistent."""
        F = self.field
        if rhs.nrows != self.nrows:
            raise ValueError("dimension mismatch in solve")
        aug = hstack(self, rhs)
        red, pivots = aug.rref()
        n = self.ncols
        if any(p >= n for p in pivots):
            return None
        xs = [[F.zero] * rhs.ncols for _ in range(n)]
        for r_idx, pc in enumerate(pivots):
            for j in range(rhs.ncols):
                xs[pc][j] = red.rows[r_idx][n + j]
        return Matrix(F, xs, rhs.ncols)

    def solve_vec(self, b):
        sol = self.solve(Matrix.from_columns(self.field, [tuple(b)]))
        return None if sol is None else sol.col(0)

    # -- structure predicates ---------------------------------------------
    def is_symmetric(self) -> bool:
        return self.is_square and self.T == self

    def is_alternating(self) -> bool:
        if not self.is_square:
            return False
        F = self.field
        if any(not F.is_zero(self.rows[i][i]) for i in range(self.nrows)):
            return False
        return self.T == -self


def hstack(*mats) -> Matrix:
    if not mats:
        raise ValueError("hstack needs at least one matrix")
    F = mats[0].field
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("hstack row-count mismatch")
    rows = [sum((list(m.rows[i]) for m in mats), []) for i in range(nrows)]
    return Matrix(F, rows, sum(m.ncols for m in mats))


def vstack(*mats) -> Matrix:
    F = mats[0].field
    rows = [list(r) for m in mats for r in m.rows]
    return Matrix(F, rows, mats[0].ncols)


def block_diag(field, mats) -> Matrix:
    """Block-diagonal assembly; empty blocks are dropped."""
    mats = [m for m in mats if m.nrows or m.ncols]
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    out = [[field.zero] * c for _ in range(n)]
    i0 = j0 = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            for j, x in enumerate(row):
                out[i0 + i][j0 + j] = x
        i0 += m.nrows
        j0 += m.ncols
    return Matrix(field, out, c)


def companion(q: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (last column = -coefficients)."""
    if not q.is_monic or q.degree < 1:
        raise ValueError("companion needs a monic polynomial of degree >= 1")
    F = q.field
    d = q.degree
    m = [[F.zero] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = F.one
    for i in range(d):
        m[i][d - 1] = F.neg(q.coeff(i))
    return Matrix(F, m, d)


def poly_on_matrix(q: Poly, a: Matrix) -> Matrix:
    """Evaluate q at a square matrix by Horner's rule."""
    F = a.field
    n = a.nrows
    out = Matrix.zeros(F, n, n)
    ident = Matrix.identity(F, n)
    for c in reversed(q.coeffs):
        out = out @ a + ident.scale(c)
    return out


# ----------------------------------------------------------------------
# Subspaces (canonical reduced column echelon bases)
# ----------------------------------------------------------------------

class Subspace:
    """A subspace with a canonical basis, so equality is matrix equality."""

    __slots__ = ("field", "ambient", "basis", "_rows", "_pivots")

    def __init__(self, field, ambient: int, columns: Matrix):
        red, pivots = columns.T.rref()
        rows = list(red.rows[: len(pivots)])
        if rows:
            basis = Matrix(field, list(zip(*rows)), len(rows))
        else:
            basis = Matrix.zeros(field, ambient, 0)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_rows", [list(r) for r in rows])
        object.__setattr__(self, "_pivots", list(pivots))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_columns(cls, field, ambient, cols):
        return cls(field, ambient, Matrix.from_columns(field, cols, nrows=ambient))

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, Matrix.zeros(field, ambient, 0))

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, Matrix.identity(field, ambient))

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def _reduce(self, vec):
        F = self.field
        v = list(vec)
        for row, pc in zip(self._rows, self._pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self._reduce(vec))

    def contains_space(self, other) -> bool:
        return all(self.contains(other.basis.col(j)) for j in range(other.dim))

    def add(self, other):
        return Subspace(self.field, self.ambient, hstack(self.basis, other.basis))

    def intersect(self, other):
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = hstack(self.basis, other.basis)
        ker = stacked.kernel()
        cols = []
        for j in range(ker.ncols):
            coeffs = ker.col(j)[: self.dim]
            vec = [self.field.zero] * self.ambient
            for c, bcol in zip(coeffs, range(self.dim)):
                if not self.field.is_zero(c):
                    col = self.basis.col(bcol)
                    vec = [self.field.add(x, self.field.mul(c, y)) for x, y in zip(vec, col)]
            cols.append(tuple(vec))
        return Subspace.from_columns(self.field, self.ambient, cols)

    def complement_within(self, larger) -> Matrix:
        """Columns extending self to larger, chosen greedily from larger's
        canonical basis (deterministic, so quotient Grams are reproducible)."""
        F = self.field
        rows = [list(r) for r in self._rows]
        pivots = list(self._pivots)
        reps = []
        for j in range(larger.dim):
            v = list(larger.basis.col(j))
            for row, pc in zip(rows, pivots):
                c = v[pc]
                if not F.is_zero(c):
                    v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
            piv = next((i for i, x in enumerate(v) if not F.is_zero(x)), None)
            if piv is None:
                continue
            inv = F.inv(v[piv])
            v = [F.mul(x, inv) for x in v]
            reps.append(larger.basis.col(j))
            rows.append(v)
            pivots.append(piv)
        return Matrix.from_columns(F, reps, nrows=self.ambient)


def image(a: Matrix) -> Subspace:
    return Subspace(a.field, a.nrows, a)


def kernel_space(a: Matrix) -> Subspace:
    return Subspace(a.field, a.ncols, a.kernel())


# ----------------------------------------------------------------------
# Annihilators, minimal polynomial, invariant factors
# ----------------------------------------------------------------------

def local_annihilator(a: Matrix, vec) -> Poly:
    """Monic generator of {q : q(a) vec = 0} by Krylov closure."""
    F = a.field
    n = a.nrows
    rows = []  # (pivot, reduced vector, relation coefficients)
    v = tuple(F.canon(x) for x in vec)
    coeffs = [F.one]
    while True:
        red = list(v)
        rel = list(coeffs) + [F.zero] * (len(rows) + 1 - len(coeffs))
        for piv, rvec, rcoef in rows:
            c = red[piv]
            if not F.is_zero(c):
                red = [F.sub(x, F.mul(c, y)) for x, y in zip(red, rvec)]
                for i, y in enumerate(rcoef):
                    rel[i] = F.sub(rel[i], F.mul(c, y))
        piv = next((i for i, x in enumerate(red) if not F.is_zero(x)), None)
        if piv is None:
            return Poly(F, rel).monic()
        inv = F.inv(red[piv])
        rows.append((piv, [F.mul(x, inv) for x in red], [F.mul(x, inv) for x in rel]))
        v = a.apply(v)
        coeffs = [F.zero] * len(rows) + [F.one]


def minimal_polynomial(a: Matrix) -> Poly:
    """Least-degree monic annihilator (lcm of local annihilators)."""
    if not a.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    F = a.field
    n = a.nrows
    if n == 0:
        return Poly.one(F)
    m = Poly.one(F)
    for i in range(n):
        e = tuple(F.one if j == i else F.zero for j in range(n))
        m = poly_lcm(m, local_annihilator(a, e))
        if m.degree == n:
            break
    return m


def krylov_basis(a: Matrix, vec, d: int) -> Matrix:
    """Columns vec, a vec, ..., a^{d-1} vec."""
    cols = []
    v = tuple(a.field.canon(x) for x in vec)
    for _ in range(d):
        cols.append(v)
        v = a.apply(v)
    return Matrix.from_columns(a.field, cols, nrows=a.nrows)


def invariant_factors(a: Matrix) -> list:
    """Nontrivial invariant factors of a, ascending divisibility chain.

    Smith reduction of tI - a over F[t] with degree-based pivoting; the
    product of the returned polynomials is the characteristic polynomial.
    """
    if not a.is_square:
        raise ValueError("invariant factors of a non-square matrix")
    F = a.field
    n = a.nrows
    t = Poly.x(F)
    m = [[Poly.constant(F, F.neg(a.at(i, j))) + (t if i == j else Poly.zero(F)) for j in range(n)] for i in range(n)]
    diag = []
    for k in range(n):
        while True:
            # move a minimal-degree nonzero entry to (k, k)
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if not m[i][j].is_zero and (best is None or m[i][j].degree < m[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                raise AssertionError("tI - a cannot be singular")
            bi, bj = best
            if bi != k:
                m[k], m[bi] = m[bi], m[k]
            if bj != k:
                for row in m:
                    row[k], row[bj] = row[bj], row[k]
            pivot = m[k][k]
            dirty = False
            for i in range(k + 1, n):
                if m[i][k].is_zero:
                    continue
                q = m[i][k] // pivot
                for j in range(k, n):
                    m[i][j] = m[i][j] - q * m[k][j]
                if not m[i][k].is_zero:
                    dirty = True
            for j in range(k + 1, n):
                if m[k][j].is_zero:
                    continue
                q = m[k][j] // pivot
                for i in range(k, n):
                    m[i][j] = m[i][j] - q * m[i][k]
                if not m[k][j].is_zero:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the rest; if not, absorb an offending row
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not (m[i][j] % pivot).is_zero:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(k, n):
                m[k][j] = m[k][j] + m[offender][j]
        diag.append(m[k][k].monic())
    out = [d for d in diag if d.degree >= 1]
    for a_, b_ in zip(out, out[1:]):
        if not a_.divides(b_):
            raise AssertionError("Smith diagonal is not a divisibility chain")
    return out


def characteristic_polynomial(a: Matrix) -> Poly:
    out = Poly.one(a.field)
    for q in invariant_factors(a):
        out = out * q
    return out


def jordan_number(a: Matrix, p: Poly, r: int) -> int:
    """Number of primary cyclic summands of a with minimal polynomial p^r.

    Computed as (rank p(a)^{r-1} - 2 rank p(a)^r + rank p(a)^{r+1}) / deg p.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if not a.is_invertible():
        raise ValueError("jordan_number needs an invertible matrix")
    if p.degree < 1 or not p.is_monic:
        raise ValueError("p must be monic of degree >= 1")
    if p.field.kind == "prime":
        from .poly import is_irreducible

        if not is_irreducible(p):
            raise ValueError(f"{p} is reducible")
    pa = poly_on_matrix(p, a)
    ranks = [a.nrows]
    power = Matrix.identity(a.field, a.nrows)
    for _ in range(r + 1):
        power = power @ pa
        ranks.append(power.rank())
    num = ranks[r - 1] - 2 * ranks[r] + ranks[r + 1]
    if num % p.degree:
        raise AssertionError("rank second difference not divisible by deg p")
    return num // p.degree


def similar_to_inverse(a: Matrix) -> bool:
    """True iff every invariant factor is a palindromial (factorization-free)."""
    if not a.is_invertible():
        raise ValueError("similar_to_inverse needs an invertible matrix")
    return all(poly_reciprocal(q) == q for q in invariant_factors(a))
