"""The scalar tower F(t1,...,tn) viewed inside F((t1))...((tn)).

Every scalar is an exact rational function (reduced fraction of sparse
polynomials).  The right-to-left lexicographic order on exponent vectors
makes the minimal monomial of a nonzero polynomial unique, so valuations
into (1/2 Z)^n and leading-coefficient residues are well defined, and
square decisions reduce to the base field by Hensel's lemma (char F != 2).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DomainError
from .fields import QQ, DEFAULT_FACTOR_BOUND
from .poly import Poly, poly_gcd, rlex_key


class GradeValue:
    """Element of the value group (1/2 Z)^n with right-lex order, or the
    absorbing Infinity.  The last coordinate dominates comparisons."""

    __slots__ = ("vec",)

    def __init__(self, vec):
        self.vec = None if vec is None else tuple(Fraction(v) for v in vec)
        if self.vec is not None:
            for v in self.vec:
                if v.denominator not in (1, 2):
                    raise DomainError(f"grade denominator {v.denominator} not in {{1,2}}")

    @classmethod
    def infinity(cls) -> "GradeValue":
        return cls(None)

    @classmethod
    def zero(cls, n: int) -> "GradeValue":
        return cls((0,) * n)

    @property
    def is_infinity(self) -> bool:
        return self.vec is None

    def __add__(self, other: "GradeValue") -> "GradeValue":
        if self.is_infinity or other.is_infinity:
            return GradeValue(None)
        return GradeValue(tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other: "GradeValue") -> "GradeValue":
        if self.is_infinity:
            return GradeValue(None)
        if other.is_infinity:
            raise DomainError("cannot subtract infinity")
        return GradeValue(tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> "GradeValue":
        if self.is_infinity:
            raise DomainError("cannot negate infinity")
        return GradeValue(tuple(-a for a in self.vec))

    def half(self) -> "GradeValue":
        if self.is_infinity:
            return self
        return GradeValue(tuple(a / 2 for a in self.vec))

    def double(self) -> "GradeValue":
        if self.is_infinity:
            return self
        return GradeValue(tuple(2 * a for a in self.vec))

    @property
    def is_integral(self) -> bool:
        return not self.is_infinity and all(v.denominator == 1 for v in self.vec)

    def mod_lattice(self) -> tuple[Fraction, ...]:
        """Image in (1/2 Z / Z)^n, coordinates in {0, 1/2}."""
        if self.is_infinity:
            raise DomainError("infinity has no lattice residue")
        return tuple(v - int(v) if v >= 0 else v - int(v) + (1 if v != int(v) else 0)
                     for v in self.vec)

    def int_vec(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise DomainError(f"{self} is not an integer vector")
        return tuple(int(v) for v in self.vec)

    def _key(self):
        # infinity sorts above every finite value
        if self.is_infinity:
            return (1, ())
        return (0, tuple(reversed(self.vec)))

    def __eq__(self, other):
        return isinstance(other, GradeValue) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __repr__(self):
        if self.is_infinity:
            return "GradeValue(inf)"
        return "GradeValue(" + ", ".join(str(v) for v in self.vec) + ")"


class LaurentField:
    """The field F(t1,...,tn) with base F rational or an odd prime field."""

    def __init__(self, base=QQ, nvars: int = 1, names=None,
                 factor_bound: int = DEFAULT_FACTOR_BOUND):
        if names is None:
            names = ("t",) if nvars == 1 else tuple(f"t{i+1}" for i in range(nvars))
        if len(names) != nvars:
            raise DomainError("variable name count mismatch")
        self.base = base
        self.nvars = nvars
        self.names = tuple(names)
        self.factor_bound = factor_bound

    def __eq__(self, other):
        return (isinstance(other, LaurentField) and self.base == other.base
                and self.nvars == other.nvars and self.names == other.names)

    def __hash__(self):
        return hash((self.base, self.nvars, self.names))

    def __repr__(self):
        if self.nvars == 0:
            return f"LaurentField({self.base})"
        return f"LaurentField({self.base}, {', '.join(self.names)})"

    # -- constructors --------------------------------------------------

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, Poly.zero(self.base, self.nvars),
                      Poly.const(self.base, self.nvars, self.base.one), _raw=True)

    @property
    def one(self) -> "Scalar":
        return self.from_base(self.base.one)

    def from_base(self, value) -> "Scalar":
        value = self.base.coerce(value)
        return Scalar(self, Poly.const(self.base, self.nvars, value),
                      Poly.const(self.base, self.nvars, self.base.one))

    def from_int(self, n: int) -> "Scalar":
        return self.from_base(self.base.from_int(n))

    def gen(self, i: int) -> "Scalar":
        if not 0 <= i < self.nvars:
            raise DomainError(f"no variable of index {i}")
        return Scalar(self, Poly.gen(self.base, self.nvars, i),
                      Poly.const(self.base, self.nvars, self.base.one))

    def gens(self) -> tuple["Scalar", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=None) -> "Scalar":
        """c * t1^e1 ... tn^en with integer (possibly negative) exponents."""
        exps = tuple(int(e) for e in exps)
        num_e = tuple(max(e, 0) for e in exps)
        den_e = tuple(max(-e, 0) for e in exps)
        c = self.base.one if coeff is None else self.base.coerce(coeff)
        return Scalar(self, Poly.monomial(self.base, self.nvars, num_e, c),
                      Poly.monomial(self.base, self.nvars, den_e))

    def parse(self, text: str) -> "Scalar":
        from .literals import parse_scalar
        return parse_scalar(self, text)


class Scalar:
    """Element of a LaurentField, kept in canonical reduced form."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: LaurentField, num: Poly, den: Poly,
                 _raw: bool = False, _coprime: bool = False):
        self.field = field
        self._hash = None
        if _raw:
            self.num, self.den = num, den
            return
        if den.is_zero:
            raise DomainError("zero denominator")
        if num.is_zero:
            self.num = num
            self.den = Poly.const(field.base, field.nvars, field.base.one)
            return
        # strip the common monomial factor
        mn, md = num.min_exps(), den.min_exps()
        common = tuple(min(a, b) for a, b in zip(mn, md))
        if any(common):
            num = Poly(field.base, field.nvars,
                       {tuple(a - b for a, b in zip(e, common)): c
                        for e, c in num.coeffs.items()})
            den = Poly(field.base, field.nvars,
                       {tuple(a - b for a, b in zip(e, common)): c
                        for e, c in den.coeffs.items()})
        # monomials share no further factors with anything after the strip
        if not _coprime and len(num.coeffs) > 1 and len(den.coeffs) > 1:
            g = poly_gcd(num, den)
            if not g.is_const:
                num = num.divexact(g)
                den = den.divexact(g)
        factor = _norm_factor(den)
        if factor is not None:
            num = num.scale(factor)
            den = den.scale(factor)
        self.num, self.den = num, den

    # -- ring structure --------------------------------------------------

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise DomainError("mixed scalar fields")

    def __add__(self, other: "Scalar") -> "Scalar":
        return self._addsub(other, False)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self._addsub(other, True)

    def _addsub(self, other: "Scalar", subtract: bool) -> "Scalar":
        # Fraction-style: with reduced inputs and g = gcd of denominators,
        # only the small gcd with g can survive in the result.
        self._check(other)
        na, da, nb, db = self.num, self.den, other.num, other.den
        if subtract:
            nb = -nb
        g = poly_gcd(da, db)
        if g.is_const:
            return Scalar(self.field, na * db + nb * da, da * db, _coprime=True)
        s, t = da.divexact(g), db.divexact(g)
        num = na * t + nb * s
        g2 = poly_gcd(num, g)
        if not g2.is_const:
            num = num.divexact(g2)
            g = g.divexact(g2)
        return Scalar(self.field, num, s * t * g, _coprime=True)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.num, self.den, _raw=True)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = _divc(self.num, g1) * _divc(other.num, g2)
        den = _divc(self.den, g2) * _divc(other.den, g1)
        return Scalar(self.field, num, den, _coprime=True)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if other.is_zero:
            raise DomainError("division by zero")
        g1 = poly_gcd(self.num, other.num)
        g2 = poly_gcd(self.den, other.den)
        num = _divc(self.num, g1) * _divc(other.den, g2)
        den = _divc(self.den, g2) * _divc(other.num, g1)
        return Scalar(self.field, num, den, _coprime=True)

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise DomainError("inverse of zero")
        return Scalar(self.field, self.den, self.num, _coprime=True)

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.field, self.num ** n, self.den ** n, _coprime=True)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def is_one(self) -> bool:
        return self == self.field.one

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.field == other.field
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        from .literals import format_scalar
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self})"

    # -- valuation layer ---------------------------------------------------

    def valuation(self) -> GradeValue:
        """Min-exponent of the numerator minus min-exponent of the
        denominator, right-lex; Infinity for 0."""
        if self.is_zero:
            return GradeValue.infinity()
        en, _ = self.num.min_term()
        ed, _ = self.den.min_term()
        return GradeValue(tuple(a - b for a, b in zip(en, ed)))

    def residue(self):
        """Leading-coefficient ratio, defined on valuation-0 elements.
        Returns a base-field value."""
        v = self.valuation()
        if v.is_infinity or any(x != 0 for x in v.vec):
            raise DomainError(f"residue needs valuation 0, got {v}")
        _, cn = self.num.min_term()
        _, cd = self.den.min_term()
        return self.field.base.div(cn, cd)

    def shift(self, exps) -> "Scalar":
        """Multiply by the monomial t^exps, exps an integer vector."""
        return self * self.field.monomial(exps)

    def unit_part(self) -> "Scalar":
        """self / t^valuation, a valuation-0 scalar."""
        v = self.valuation()
        if v.is_infinity:
            raise DomainError("unit part of zero")
        return self.shift(tuple(-x for x in v.int_vec()))

    def is_square(self) -> bool:
        """Membership in the square group of F((t1))...((tn))."""
        if self.is_zero:
            raise DomainError("square test on 0")
        v = self.valuation()
        if any(x.denominator != 1 or x % 2 for x in v.vec):
            return False
        return self.field.base.is_square(self.unit_part().residue())

    def square_class(self):
        """(unit class rep, parity vector):  self ~ rep * t^parity modulo
        squares of the Laurent tower, rep a canonical base representative."""
        if self.is_zero:
            raise DomainError("square class of 0")
        v = self.valuation().int_vec()
        parity = tuple(e % 2 for e in v)
        rep = self.field.base.square_class_rep(self.unit_part().residue(),
                                               self.field.factor_bound)
        return rep, parity

    def sqrt(self) -> "Scalar | None":
        """Exact square root inside F(t1,...,tn) when representable."""
        if self.is_zero:
            return self
        p = (self.num * self.den).sqrt()
        if p is None:
            return None
        return Scalar(self.field, p, self.den)


def _divc(p: Poly, g: Poly) -> Poly:
    return p if g.is_const else p.divexact(g)


def _norm_factor(den: Poly):
    """Scaling that puts the denominator in canonical form: monic minimal
    term over a prime field; integer coprime coefficients with positive
    minimal coefficient over Q.  Returns None when already canonical."""
    f = den.field
    if f.variant == "prime":
        _, c = den.min_term()
        return None if c == 1 else f.inv(c)
    num_g, den_l = 0, 1
    for c in den.coeffs.values():
        num_g = gcd(num_g, abs(c.numerator))
        den_l = den_l * c.denominator // gcd(den_l, c.denominator)
    factor = Fraction(den_l, num_g)
    _, c0 = den.min_term()
    if c0 < 0:
        factor = -factor
    return None if factor == 1 else factor


def class_monomial(field: LaurentField, rep, parity) -> Scalar:
    """The scalar rep * t^parity representing a square class."""
    return field.monomial(parity, rep)
