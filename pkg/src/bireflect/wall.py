"""Wall invariants of an isometry pair and their finite-field classification.

For v = u + u^{-1} and an even-degree irreducible palindromial p with trace
polynomial m (so p(t) = t^d m(t + 1/t)), the space attached to (p, r) is

    Ker m(v)^r / (Ker m(v)^{r-1} + (Im m(v) cap Ker m(v)^r)),

carrying the form induced by b(x, m(v)^{r-1} y), lifted over L = F[t]/(p)
where the class of t acts through u.  For p = t -+ 1 the quotient is taken
with u - eta*id and the induced symmetric form stays over F (odd r for
symmetric pairs, even r for symplectic ones, with the u - u^{-1} twist).

Quotient bases are echelon-canonical complements, so every Gram here is
deterministic for a fixed input.  Hyperbolicity and equivalence tests are
finite-field only; over Q they raise UnsupportedFieldError.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .extension import ExtensionField, conj_transpose, get_extension, sesquilift
from .fields import FieldError
from .isopair import Isopair, IsopairError
from .linalg import (
    Matrix,
    Subspace,
    hstack,
    image,
    invariant_factors,
    jordan_number,
    kernel_space,
    poly_on_matrix,
)
from .poly import Poly, factor, is_palindromial, poly_reciprocal, trace_decompose


class UnsupportedFieldError(FieldError):
    """The operation needs a finite-field classification not available here."""


@dataclass(frozen=True)
class HermitianForm:
    """A nondegenerate (skew-)Hermitian Gram over an extension field."""

    ext: ExtensionField
    gram: Matrix
    kind: str  # "hermitian" | "skew"

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def check(self):
        ct = conj_transpose(self.gram)
        want = self.gram if self.kind == "hermitian" else -self.gram
        if ct != want:
            raise AssertionError(f"Gram is not {self.kind}")
        if self.dim and not self.gram.is_invertible():
            raise AssertionError("Hermitian invariant is degenerate")


@dataclass
class WallInvariants:
    """Jordan numbers plus the Hermitian and quadratic form invariants."""

    field: object
    epsilon: int
    jordan: dict = dc_field(default_factory=dict)      # (Poly, r) -> count
    hermitian: dict = dc_field(default_factory=dict)   # (Poly, r) -> HermitianForm
    quadratic: dict = dc_field(default_factory=dict)   # (eta, r) -> Matrix over F

    def jordan_sorted(self):
        return sorted(self.jordan.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))

    def hermitian_sorted(self):
        return sorted(self.hermitian.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))

    def quadratic_sorted(self):
        return sorted(self.quadratic.items(), key=lambda kv: (-kv[0][0], kv[0][1]))


# ----------------------------------------------------------------------
# Quotient machinery
# ----------------------------------------------------------------------

def _chain_quotient(pair: Isopair, nmat: Matrix, r: int):
    """Representatives of Ker N^r modulo Ker N^{r-1} + (Im N cap Ker N^r).

    Returns (reps, radical) where reps columns are the echelon-canonical
    complement and radical is the subspace divided out.
    """
    F = pair.field
    n = pair.dim
    power = Matrix.identity(F, n)
    for _ in range(r - 1):
        power = power @ nmat
    k_prev = kernel_space(power)
    k_r = kernel_space(power @ nmat)
    radical = k_prev.add(image(nmat).intersect(k_r))
    reps = radical.complement_within(k_r)
    return reps, radical


def _quotient_action(reps: Matrix, radical: Subspace, op: Matrix) -> Matrix:
    """Matrix of the operator induced on the quotient, in the reps basis."""
    F = reps.field
    k = reps.ncols
    if k == 0:
        return Matrix.zeros(F, 0, 0)
    full = hstack(reps, radical.basis)
    coords = full.solve(op @ reps)
    if coords is None:
        raise AssertionError("quotient is not closed under the operator")
    return Matrix(F, [coords.rows[i] for i in range(k)], k)


def _v_of(pair: Isopair) -> Matrix:
    return pair.u + pair.u.inverse()


def wall_space_basis(pair: Isopair, p: Poly, r: int) -> Matrix:
    """F-basis representatives of the (p, r) quotient space, for an
    irreducible palindromial p distinct from t - 1 and t + 1."""
    _require_palindromial_not_linear(p)
    if r < 1:
        raise ValueError("r must be >= 1")
    m = trace_decompose(p)
    nmat = poly_on_matrix(m, _v_of(pair))
    reps, _ = _chain_quotient(pair, nmat, r)
    return reps


def _require_palindromial_not_linear(p: Poly):
    if p.degree == 1:
        raise IsopairError(
            f"{p} is handled by the quadratic invariants, not the Hermitian ones"
        )
    if not is_palindromial(p):
        raise ValueError(f"{p} is not a palindromial")


def hermitian_wall(pair: Isopair, p: Poly, r: int) -> HermitianForm:
    """The Hermitian (epsilon=+1) or skew-Hermitian (epsilon=-1) invariant
    attached to (p, r), as a Gram over L = F[t]/(p)."""
    _require_palindromial_not_linear(p)
    if r < 1:
        raise ValueError("r must be >= 1")
    F = pair.field
    ext = get_extension(p)
    m = ext.trace_poly
    v = _v_of(pair)
    nmat = poly_on_matrix(m, v)
    reps, radical = _chain_quotient(pair, nmat, r)
    kind = "hermitian" if pair.epsilon == 1 else "skew"
    if reps.ncols == 0:
        return HermitianForm(ext=ext, gram=Matrix.zeros(ext, 0, 0), kind=kind)
    power = Matrix.identity(F, pair.dim)
    for _ in range(r - 1):
        power = power @ nmat
    gram_f = reps.T @ pair.gram @ power @ reps
    if not gram_f.is_invertible():
        raise AssertionError("kernel form is degenerate on the quotient")
    action = _quotient_action(reps, radical, pair.u)
    hgram, _ = sesquilift(gram_f, action, ext)
    form = HermitianForm(ext=ext, gram=hgram, kind=kind)
    form.check()
    return form


def quadratic_wall(pair: Isopair, eta: int, r: int) -> Matrix:
    """The symmetric Gram over F attached to t - eta at level r.

    Requires r odd when epsilon=+1 (kernel form b(x, (v - 2 eta)^k y) with
    r = 2k+1) and r even when epsilon=-1 (kernel form
    b(x, (u - u^{-1})(v - 2 eta)^k y) with r = 2k+2).
    """
    if eta not in (1, -1):
        raise ValueError("eta must be +1 or -1")
    if r < 1:
        raise ValueError("r must be >= 1")
    F = pair.field
    if pair.epsilon == 1:
        if r % 2 == 0:
            raise IsopairError("epsilon=+1 quadratic invariants need odd r")
        k = (r - 1) // 2
    else:
        if r % 2 == 1:
            raise IsopairError("epsilon=-1 quadratic invariants need even r")
        k = (r - 2) // 2
    n = pair.dim
    u = pair.u
    nmat = u - Matrix.identity(F, n).scale(F.canon(eta))
    reps, _ = _chain_quotient(pair, nmat, r)
    if reps.ncols == 0:
        return Matrix.zeros(F, 0, 0)
    v = _v_of(pair)
    weight = v - Matrix.identity(F, n).scale(F.canon(2 * eta))
    wop = weight.pow(k)
    if pair.epsilon == -1:
        wop = (u - u.inverse()) @ wop
    gram = reps.T @ pair.gram @ wop @ reps
    if not gram.is_symmetric():
        raise AssertionError("quadratic invariant Gram is not symmetric")
    if not gram.is_invertible():
        raise AssertionError("quadratic invariant Gram is degenerate")
    return gram


def skew_to_hermitian(form: HermitianForm) -> HermitianForm:
    """Scale a skew-Hermitian Gram by a unit eta with conj(eta) = -eta."""
    if form.kind != "skew":
        raise ValueError("input form is not skew-Hermitian")
    ext = form.ext
    eta = ext.skew_unit()
    inv = ext.inv(eta)
    gram = Matrix(ext, [[ext.mul(inv, x) for x in row] for row in form.gram.rows], form.gram.ncols)
    out = HermitianForm(ext=ext, gram=gram, kind="hermitian")
    out.check()
    return out


def hermitian_to_skew(form: HermitianForm) -> HermitianForm:
    if form.kind != "hermitian":
        raise ValueError("input form is not Hermitian")
    ext = form.ext
    eta = ext.skew_unit()
    gram = Matrix(ext, [[ext.mul(eta, x) for x in row] for row in form.gram.rows], form.gram.ncols)
    out = HermitianForm(ext=ext, gram=gram, kind="skew")
    out.check()
    return out


# ----------------------------------------------------------------------
# Finite-field classification
# ----------------------------------------------------------------------

def is_hyperbolic_symmetric(gram: Matrix) -> bool:
    """Over F_p: even dimension and (-1)^{n/2} det(G) a square."""
    F = gram.field
    if F.kind != "prime":
        raise UnsupportedFieldError(
            "hyperbolicity of symmetric forms is only decided over prime fields"
        )
    if not gram.is_square or (gram.nrows and not gram.is_invertible()):
        raise ValueError("hyperbolicity needs a nondegenerate square Gram")
    n = gram.nrows
    if n % 2:
        return False
    sign = F.one if (n // 2) % 2 == 0 else F.neg(F.one)
    return F.is_square(F.mul(sign, gram.det()))


def is_hyperbolic_hermitian(form: HermitianForm) -> bool:
    """Over a finite L: Hermitian forms are classified by dimension, so
    hyperbolic means even L-dimension.  Skew inputs are scaled first."""
    if form.ext.base.kind != "prime":
        raise UnsupportedFieldError(
            "hyperbolicity of Hermitian forms is only decided over prime fields"
        )
    if form.kind == "skew":
        form = skew_to_hermitian(form)
    return form.dim % 2 == 0


# ----------------------------------------------------------------------
# The full invariant system
# ----------------------------------------------------------------------

def compute_all(pair: Isopair, hints=()) -> WallInvariants:
    """Jordan numbers for every irreducible factor, Hermitian invariants for
    palindromial factors other than t -+ 1, and quadratic invariants for
    t -+ 1 at each admissible parity level."""
    F = pair.field
    from .linalg import characteristic_polynomial

    chi = characteristic_polynomial(pair.u)
    factors = factor(chi, hints=hints)
    out = WallInvariants(field=F, epsilon=pair.epsilon)
    t_plus = Poly(F, [F.one, F.one])
    t_minus = Poly(F, [F.neg(F.one), F.one])
    for q, mult in factors:
        for r in range(1, mult + 1):
            n = jordan_number(pair.u, q, r)
            if n:
                out.jordan[(q, r)] = n
        if q in (t_plus, t_minus):
            eta = 1 if q == t_minus else -1
            for r in range(1, mult + 1):
                if pair.epsilon == 1 and r % 2 == 0:
                    continue
                if pair.epsilon == -1 and r % 2 == 1:
                    continue
                if out.jordan.get((q, r)):
                    out.quadratic[(eta, r)] = quadratic_wall(pair, eta, r)
        elif poly_reciprocal(q) == q:
            for r in range(1, mult + 1):
                if out.jordan.get((q, r)):
                    out.hermitian[(q, r)] = hermitian_wall(pair, q, r)
    return out


def negated(w: WallInvariants) -> WallInvariants:
    """The invariant system with every form Gram negated."""
    out = WallInvariants(field=w.field, epsilon=w.epsilon, jordan=dict(w.jordan))
    for key, form in w.hermitian.items():
        out.hermitian[key] = HermitianForm(ext=form.ext, gram=-form.gram, kind=form.kind)
    for key, gram in w.quadratic.items():
        out.quadratic[key] = -gram
    return out


def symmetric_forms_equivalent(g1: Matrix, g2: Matrix) -> bool:
    """Over F_p: equal dimension and equal square class of the determinant."""
    F = g1.field
    if F.kind != "prime":
        raise UnsupportedFieldError("form equivalence is only decided over prime fields")
    if g1.nrows != g2.nrows:
        return False
    if g1.nrows == 0:
        return True
    return F.is_square(F.mul(g1.det(), g2.det()))


def invariants_equivalent(w1: WallInvariants, w2: WallInvariants) -> bool:
    """Decide equivalence of two invariant systems over the same prime field."""
    if w1.field.key != w2.field.key:
        raise FieldError("invariant systems live over different fields")
    if w1.field.kind != "prime":
        raise UnsupportedFieldError(
            "invariant equivalence is only decided over prime fields"
        )
    if w1.epsilon != w2.epsilon:
        return False
    if w1.jordan != w2.jordan:
        return False
    if set(w1.hermitian) != set(w2.hermitian):
        return False
    for key, f1 in w1.hermitian.items():
        if f1.dim != w2.hermitian[key].dim:
            return False
    if set(w1.quadratic) != set(w2.quadratic):
        return False
    for key, g1 in w1.quadratic.items():
        if not symmetric_forms_equivalent(g1, w2.quadratic[key]):
            return False
    return True
