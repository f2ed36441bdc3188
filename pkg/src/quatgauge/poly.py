"""Sparse multivariate polynomials over an exact base field.

Terms are exponent-vector -> coefficient maps.  The monomial order used
throughout is right-to-left lexicographic on exponent vectors (the last
variable dominates), which matches the iterated Laurent construction
F((t1))...((tn)): the minimal term of a nonzero polynomial carries its
valuation and leading (residue) coefficient.
"""

from __future__ import annotations

from typing import Iterator

from .errors import DomainError


def rlex_key(exps: tuple[int, ...]) -> tuple[int, ...]:
    """Sort key realizing right-to-left lexicographic comparison."""
    return tuple(reversed(exps))


class Poly:
    """Immutable sparse polynomial.  `coeffs` maps exponent tuples to
    nonzero field elements."""

    __slots__ = ("field", "nvars", "coeffs", "_hash")

    def __init__(self, field, nvars: int, coeffs: dict):
        clean = {}
        for exps, c in coeffs.items():
            if not field.is_zero(c):
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise DomainError(f"bad exponent vector {exps}")
                clean[tuple(exps)] = c
        self.field = field
        self.nvars = nvars
        self.coeffs = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars: int) -> "Poly":
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars: int, value) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, field, nvars: int, exps, value=None) -> "Poly":
        if value is None:
            value = field.one
        return cls(field, nvars, {tuple(exps): value})

    @classmethod
    def gen(cls, field, nvars: int, i: int) -> "Poly":
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(field, nvars, exps)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_const(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {(0,) * self.nvars}

    def const_value(self):
        if self.is_zero:
            return self.field.zero
        return self.coeffs[(0,) * self.nvars]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.coeffs.items(), key=lambda kv: rlex_key(kv[0]))

    def min_term(self) -> tuple[tuple[int, ...], object]:
        if self.is_zero:
            raise DomainError("min term of 0")
        e = min(self.coeffs, key=rlex_key)
        return e, self.coeffs[e]

    def max_term(self) -> tuple[tuple[int, ...], object]:
        if self.is_zero:
            raise DomainError("max term of 0")
        e = max(self.coeffs, key=rlex_key)
        return e, self.coeffs[e]

    def degree_in(self, v: int) -> int:
        """Largest exponent of variable v; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(e[v] for e in self.coeffs)

    def min_exps(self) -> tuple[int, ...]:
        """Componentwise minimum exponent across terms (monomial content)."""
        if self.is_zero:
            raise DomainError("monomial content of 0")
        its = iter(self.coeffs)
        out = list(next(its))
        for e in its:
            for i, x in enumerate(e):
                if x < out[i]:
                    out[i] = x
        return tuple(out)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.field != other.field or self.nvars != other.nvars:
            raise DomainError("mixed polynomial rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = f.add(out.get(e, f.zero), c)
            if f.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(f, self.nvars, out)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, self.nvars, {e: f.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(f, self.nvars, out)

    def scale(self, c) -> "Poly":
        f = self.field
        if f.is_zero(c):
            return Poly.zero(f, self.nvars)
        return Poly(f, self.nvars, {e: f.mul(v, c) for e, v in self.coeffs.items()})

    def shift(self, exps) -> "Poly":
        """Multiply by the monomial with exponent vector `exps` (>= 0)."""
        return Poly(self.field, self.nvars,
                    {tuple(a + b for a, b in zip(e, exps)): c
                     for e, c in self.coeffs.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        out = Poly.const(self.field, self.nvars, self.field.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.nvars == other.nvars and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.sorted_terms())))
        return self._hash

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        parts = [f"{c}*x^{e}" for e, c in self.sorted_terms()]
        return "Poly(" + " + ".join(parts) + ")"

    # -- division ----------------------------------------------------------

    def divexact(self, other: "Poly") -> "Poly":
        """Exact division; raises DomainError when `other` does not divide."""
        self._check(other)
        if other.is_zero:
            raise DomainError("division by zero polynomial")
        f = self.field
        if len(other.coeffs) == 1:
            (le, lc), = other.coeffs.items()
            inv = f.inv(lc)
            out = {}
            for e, c in self.coeffs.items():
                de = tuple(a - b for a, b in zip(e, le))
                if any(x < 0 for x in de):
                    raise DomainError("inexact polynomial division")
                out[de] = f.mul(c, inv)
            return Poly(f, self.nvars, out)
        q: dict = {}
        r = self
        le, lc = other.max_term()
        while not r.is_zero:
            re, rc = r.max_term()
            de = tuple(a - b for a, b in zip(re, le))
            if any(x < 0 for x in de):
                raise DomainError("inexact polynomial division")
            dc = f.div(rc, lc)
            q[de] = dc
            r = r - other.shift(de).scale(dc)
        return Poly(f, self.nvars, q)

    def divides(self, other: "Poly") -> bool:
        try:
            other.divexact(self)
            return True
        except DomainError:
            return False

    # -- square root -------------------------------------------------------

    def sqrt(self) -> "Poly | None":
        """Exact square root when the polynomial is a perfect square, else
        None.  Greedy expansion from the minimal term; normalized so the
        minimal coefficient of the root is the field square root chosen by
        the base field."""
        f = self.field
        if self.is_zero:
            return self
        e0, c0 = self.min_term()
        if any(x % 2 for x in e0):
            return None
        s0 = f.sqrt(c0)
        if s0 is None:
            return None
        half0 = tuple(x // 2 for x in e0)
        emax, _ = self.max_term()
        cap = rlex_key(emax)
        root = Poly.monomial(f, self.nvars, half0, s0)
        two_s0 = f.add(s0, s0)
        while True:
            r = self - root * root
            if r.is_zero:
                return root
            e, c = r.min_term()
            te = tuple(a - b for a, b in zip(e, half0))
            if any(x < 0 for x in te):
                return None
            if rlex_key(tuple(2 * x for x in te)) > cap:
                return None
            root = root + Poly.monomial(f, self.nvars, te, f.div(c, two_s0))


# -- gcd machinery ---------------------------------------------------------


def _to_univar(p: Poly, v: int) -> dict[int, Poly]:
    """View p as univariate in variable v with Poly coefficients (which
    have exponent 0 in v)."""
    out: dict[int, dict] = {}
    for e, c in p.coeffs.items():
        d = e[v]
        inner = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[inner] = c
    return {d: Poly(p.field, p.nvars, cs) for d, cs in out.items()}


def _from_univar(field, nvars: int, v: int, u: dict[int, Poly]) -> Poly:
    out: dict = {}
    for d, c in u.items():
        for e, val in c.coeffs.items():
            out[e[:v] + (d,) + e[v + 1:]] = val
    return Poly(field, nvars, out)


def _rem_monic(A: dict[int, Poly], B: dict[int, Poly], field) -> dict[int, Poly]:
    """Euclidean remainder when all coefficients are constants: ordinary
    division by the leading coefficient, no pseudo-division swell."""
    dB = max(B)
    lb = B[dB].const_value()
    R = dict(A)
    while R and max(R) >= dB:
        dR = max(R)
        q = field.div(R.pop(dR).const_value(), lb)
        for e, c in B.items():
            if e == dB:
                continue
            k = e + dR - dB
            cur = R.get(k)
            term = c.scale(q)
            val = (cur - term) if cur is not None else -term
            if val.is_zero:
                R.pop(k, None)
            else:
                R[k] = val
    return R


def _prem(A: dict[int, Poly], B: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of univariate polynomials with Poly coefficients.
    Cancels the gcd of the two leading coefficients at every step to keep
    intermediate growth down."""
    dB = max(B)
    lb = B[dB]
    R = dict(A)
    while R and max(R) >= dB:
        dR = max(R)
        lr = R.pop(dR)
        g = poly_gcd(lb, lr)
        lb2, lr2 = lb.divexact(g), lr.divexact(g)
        new: dict[int, Poly] = {}
        for e, c in R.items():
            new[e] = c * lb2
        for e, c in B.items():
            if e == dB:
                continue
            k = e + dR - dB
            cur = new.get(k)
            term = lr2 * c
            new[k] = (cur - term) if cur is not None else -term
        R = {e: c for e, c in new.items() if not c.is_zero}
    return R


def _content(u: dict[int, Poly]) -> Poly:
    it = iter(sorted(u))
    g = u[next(it)]
    for d in it:
        g = poly_gcd(g, u[d])
    return g


def poly_normalized(p: Poly) -> Poly:
    """Unit-normalize: minimal-term coefficient becomes 1 over a prime
    field; over Q, integer coprime coefficients with positive minimal
    coefficient."""
    if p.is_zero:
        return p
    f = p.field
    if f.variant == "prime":
        _, c = p.min_term()
        return p.scale(f.inv(c))
    from fractions import Fraction
    from math import gcd
    num_g, den_l = 0, 1
    for c in p.coeffs.values():
        num_g = gcd(num_g, abs(c.numerator))
        den_l = den_l * c.denominator // gcd(den_l, c.denominator)
    factor = Fraction(den_l, num_g)
    _, c0 = p.min_term()
    if c0 < 0:
        factor = -factor
    return p.scale(factor)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor via primitive pseudo-remainder sequences,
    unit-normalized."""
    if f.is_zero:
        return poly_normalized(g)
    if g.is_zero:
        return poly_normalized(f)
    if f.is_const or g.is_const:
        return Poly.const(f.field, f.nvars, f.field.one)
    if len(f.coeffs) == 1 or len(g.coeffs) == 1:
        # a monomial only has monomial divisors
        common = tuple(min(a, b) for a, b in zip(f.min_exps(), g.min_exps()))
        return Poly.monomial(f.field, f.nvars, common)
    if f.coeffs == g.coeffs:
        return poly_normalized(f)
    pivot = -1
    multivar = False
    for v in range(f.nvars - 1, -1, -1):
        if f.degree_in(v) > 0 or g.degree_in(v) > 0:
            if pivot < 0:
                pivot = v
            else:
                multivar = True
    if pivot < 0:
        return Poly.const(f.field, f.nvars, f.field.one)
    A, B = _to_univar(f, pivot), _to_univar(g, pivot)
    if max(A) < max(B):
        A, B = B, A
    if not multivar:
        while B:
            A, B = B, _rem_monic(A, B, f.field)
        return poly_normalized(_from_univar(f.field, f.nvars, pivot, A))
    ca, cb = _content(A), _content(B)
    cont = poly_gcd(ca, cb)
    A = {d: c.divexact(ca) for d, c in A.items()}
    B = {d: c.divexact(cb) for d, c in B.items()}
    while B:
        R = _prem(A, B)
        if R:
            cr = _content(R)
            R = {d: c.divexact(cr) for d, c in R.items()}
        A, B = B, R
    prim = _from_univar(f.field, f.nvars, pivot, A)
    return poly_normalized(cont * prim)
