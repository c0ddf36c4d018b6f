"""Dense univariate polynomials over a field object from :mod:`bireflect.fields`.

Coefficients are stored lowest degree first with no trailing zeros, so two
polynomials are equal iff their coefficient tuples are.  The module also
houses reciprocal polynomials, palindromial tests, the trace decomposition
p(t) = t^d R(t + 1/t), and factorization (Cantor-Zassenhaus over prime
fields; rational-root plus quadratic splitting over Q, with caller hints
for anything deeper).
"""

from __future__ import annotations

import math


class PolynomialError(ValueError):
    """Raised for domain violations (zero constant term, bad degree, ...)."""


class FactorizationError(PolynomialError):
    """Factorization is not supported for this input without hints."""


class Poly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of t^k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.canon(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field.key == self.field.key
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly.zero(F)
            out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if F.is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
            return Poly(F, out)
        return Poly(F, [F.mul(c, F.canon(other)) for c in self.coeffs])

    __rmul__ = __mul__

    def __divmod__(self, other):
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        inv_lc = F.inv(other.lc)
        quo = [F.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if F.is_zero(c):
                continue
            q = F.mul(c, inv_lc)
            quo[k] = q
            for i, b in enumerate(other.coeffs):
                rem[k + i] = F.sub(rem[k + i], F.mul(q, b))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int):
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.inv(self.lc)
        return Poly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def eval(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.canon(k), c) for k, c in enumerate(self.coeffs)][1:])

    def divides(self, other) -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def __repr__(self):
        return f"Poly({self.field.key}, {poly_str(self)})"

    def __str__(self):
        return poly_str(self)


def poly_str(p: Poly) -> str:
    """Compact human-readable form, highest degree first: "t^2+3t+3"."""
    if p.is_zero:
        return "0"
    F = p.field
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if F.is_zero(c):
            continue
        s = F.to_str(c)
        if k == 0:
            term = s
        else:
            var = "t" if k == 1 else f"t^{k}"
            term = var if s == "1" else (f"-{var}" if s == "-1" else f"{s}{var}")
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    out = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def poly_reciprocal(p: Poly) -> Poly:
    """The reciprocal polynomial p(0)^{-1} t^deg(p) p(1/t), monic input required."""
    if p.is_zero or p.field.is_zero(p.coeff(0)):
        raise PolynomialError("reciprocal needs a nonzero constant term")
    if not p.is_monic:
        raise PolynomialError("reciprocal is defined for monic polynomials here")
    F = p.field
    inv0 = F.inv(p.coeff(0))
    return Poly(F, [F.mul(inv0, c) for c in reversed(p.coeffs)])


def is_palindromial(p: Poly) -> bool:
    """True iff p equals its reciprocal."""
    return poly_reciprocal(p) == p


def trace_decompose(p: Poly) -> Poly:
    """Return the monic R of degree d with p(t) = t^d R(t + 1/t).

    Requires an even-degree monic palindromial with constant term 1.  The
    coefficients of R are solved from the upper half of the identity
    (triangular in the leading coefficients) and the full identity is then
    re-verified, so non-palindromial input is always rejected.
    """
    F = p.field
    n = p.degree
    if n <= 0 or n % 2 != 0:
        raise PolynomialError(f"not an even-degree palindromial: {p}")
    if not p.is_monic or p.coeff(0) != F.one:
        raise PolynomialError("trace decomposition needs a monic p with p(0) = 1")
    d = n // 2
    # q_j = t^d (t + 1/t)^j as a coefficient vector of length 2d+1
    qs = []
    for j in range(d + 1):
        vec = [F.zero] * (n + 1)
        for i in range(j + 1):
            vec[d + j - 2 * i] = F.add(vec[d + j - 2 * i], F.canon(math.comb(j, i)))
        qs.append(vec)
    r = [F.zero] * (d + 1)
    for j in range(d, -1, -1):
        acc = p.coeff(d + j)
        for jj in range(j + 1, d + 1):
            acc = F.sub(acc, F.mul(r[jj], qs[jj][d + j]))
        r[j] = acc  # qs[j][d+j] == 1
    R = Poly(F, r)
    recombined = [F.zero] * (n + 1)
    for j, cj in enumerate(r):
        for k, c in enumerate(qs[j]):
            recombined[k] = F.add(recombined[k], F.mul(cj, c))
    if Poly(F, recombined) != p:
        raise PolynomialError(f"not a palindromial: {p}")
    return R


# ----------------------------------------------------------------------
# Factorization
# ----------------------------------------------------------------------

def factor(p: Poly, seed: int = 0, hints=()) -> list:
    """Factor into monic irreducibles: a sorted list of (Poly, multiplicity).

    Over F_p this is squarefree splitting, distinct-degree, then seeded
    Cantor-Zassenhaus equal-degree splitting (deterministic for a fixed
    seed).  Over Q only rational roots, quadratic splitting and degree-3
    irreducibility are built in; other inputs need ``hints`` (candidate
    monic factors that are tried by exact division) and otherwise raise
    :class:`FactorizationError`.
    """
    if p.is_zero:
        raise PolynomialError("cannot factor the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    if p.field.kind == "prime":
        fs = _factor_prime_field(p, seed)
    else:
        fs = _factor_rationals(p, hints)
    return sorted(fs.items(), key=lambda kv: kv[0].sort_key())


def is_irreducible(p: Poly, seed: int = 0) -> bool:
    if p.degree <= 0:
        return False
    fs = factor(p, seed=seed)
    return len(fs) == 1 and fs[0][1] == 1


def _multiplicity(p: Poly, q: Poly) -> int:
    m = 0
    while True:
        quo, rem = divmod(p, q)
        if not rem.is_zero:
            return m
        p = quo
        m += 1


def _factor_prime_field(p: Poly, seed: int) -> dict:
    import random

    rng = random.Random(seed ^ 0x5EED)
    F = p.field
    out = {}
    stack = [p]
    while stack:
        f = stack.pop()
        if f.degree == 0:
            continue
        d = f.derivative()
        if d.is_zero:
            # f = g(t^q) = g(t)^q over the prime field
            g = Poly(F, [f.coeff(i * F.p) for i in range(f.degree // F.p + 1)])
            for irr in _squarefree_irreducibles(g, rng):
                out[irr] = _multiplicity(p, irr)
            continue
        w = (f // poly_gcd(f, d)).monic()
        for irr in _squarefree_irreducibles(w, rng):
            out[irr] = _multiplicity(p, irr)
        rest = f
        for irr in list(out):
            while irr.divides(rest):
                rest = rest // irr
        if rest.degree > 0:
            stack.append(rest)
    return out


def _squarefree_irreducibles(w: Poly, rng) -> list:
    """Distinct-degree then equal-degree splitting of a squarefree monic w."""
    F = w.field
    q = F.p
    out = []
    x = Poly.x(F)
    h = x
    d = 0
    while w.degree > 0:
        d += 1
        if w.degree < 2 * d:
            out.append(w)
            break
        h = pow_mod(h, q, w)
        g = poly_gcd(h - x, w)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            w = (w // g).monic()
            h = h % w
    return out


def _equal_degree_split(g: Poly, d: int, rng) -> list:
    """Cantor-Zassenhaus for odd q: g squarefree, all factors of degree d."""
    F = g.field
    if g.degree == d:
        return [g.monic()]
    e = (F.p ** d - 1) // 2
    while True:
        h = Poly(F, [F.rand(rng) for _ in range(g.degree)])
        if h.degree < 1:
            continue
        r = pow_mod(h, e, g) - Poly.one(F)
        w = poly_gcd(r, g)
        if 0 < w.degree < g.degree:
            return _equal_degree_split(w, d, rng) + _equal_degree_split((g // w).monic(), d, rng)


def _factor_rationals(p: Poly, hints) -> dict:
    """Divide out hint factors first, then run the built-in core splitter."""
    work = p
    pieces = []
    for h in hints:
        h = h.monic()
        if h.degree < 1:
            continue
        while h.divides(work):
            work = work // h
            pieces.append(h)
    if work.degree > 0:
        for irr, m in _factor_rationals_core(work).items():
            pieces.extend([irr] * m)
    # hints themselves may be reducible; re-split what we can
    final = {}
    for piece in pieces:
        try:
            sub = _factor_rationals_core(piece)
        except FactorizationError:
            sub = {piece: 1}
        for irr, m in sub.items():
            final[irr] = final.get(irr, 0) + m
    produced = Poly.one(p.field)
    for irr, m in final.items():
        produced = produced * irr ** m
    if produced != p:
        raise FactorizationError(
            "incomplete factorization over Q; supply factorization hints"
        )
    return final


def _factor_rationals_core(p: Poly) -> dict:
    """Factor over Q with rational roots + quadratic/cubic analysis only."""
    out = {}
    work = p.monic()
    k = 0
    while work.degree > 0 and work.coeff(0) == 0:
        work = work // Poly.x(work.field)
        k += 1
    if k:
        out[Poly.x(work.field)] = k
    # squarefree decomposition (char 0), then split each squarefree part
    for part, mult in _squarefree_tower(work):
        for irr in _split_squarefree_q(part):
            out[irr] = out.get(irr, 0) + mult
    return out


def _squarefree_tower(p: Poly) -> list:
    """[(a_i, i)] with p = prod a_i^i, each a_i squarefree (char 0)."""
    if p.degree <= 0:
        return []
    out = []
    g = poly_gcd(p, p.derivative())
    c, i = (p // g).monic(), 0
    while c.degree > 0:
        i += 1
        d = poly_gcd(c, g)
        a = (c // d).monic()
        if a.degree > 0:
            out.append((a, i))
        c = d
        g = g // d
    return out


def _split_squarefree_q(p: Poly) -> list:
    """Split a squarefree monic polynomial over Q, error beyond cubics."""
    F = p.field
    out = []
    work = p
    for root in _rational_roots(work):
        lin = Poly(F, [-root, F.one])
        if lin.divides(work):
            out.append(lin)
            work = work // lin
    if work.degree == 0:
        return out
    if work.degree <= 3:
        # with no rational root left, quadratics and cubics are irreducible
        out.append(work)
        return out
    raise FactorizationError(
        f"cannot factor degree-{work.degree} polynomial over Q without hints"
    )


def _rational_roots(p: Poly) -> list:
    """Rational root candidates of a monic p with Fraction coefficients."""
    from fractions import Fraction

    if p.degree < 1:
        return []
    den = 1
    for c in p.coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return [Fraction(0)] + _rational_roots(p // Poly.x(p.field))
    roots = []
    for r in _divisors(abs(a0)):
        for s in _divisors(abs(an)):
            for num in (r, -r):
                cand = Fraction(num, s)
                if p.eval(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
