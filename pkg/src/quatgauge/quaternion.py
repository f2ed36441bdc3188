"""Quaternion algebras (a,b) over a scalar tower.

Basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji.  Involutions of the
first kind are stored in twisted form Int(u) o gamma with gamma the
canonical involution; u central gives the symplectic gamma itself, u pure
an orthogonal involution with discriminant -Nrd(u).

Splitness over towers with rational base is decided by square-class
normalization, level stripping (Hensel) and Hilbert symbols over Q at the
bottom; over odd prime fields the bottom is always split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UnsupportedFieldError
from .fields import DEFAULT_FACTOR_BOUND, legendre, squarefree_part
from .scalars import LaurentField, Scalar


class QuaternionAlgebra:
    """The 4-dimensional algebra (a, b) over a LaurentField."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: LaurentField, a: Scalar, b: Scalar):
        if a.is_zero or b.is_zero:
            raise DomainError("structure constants must be nonzero")
        self.field = field
        self.a = a
        self.b = b

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra) and self.field == other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"

    def elem(self, x0, x1, x2, x3) -> "Quaternion":
        return Quaternion(self, (x0, x1, x2, x3))

    def scalar(self, c: Scalar) -> "Quaternion":
        z = self.field.zero
        return Quaternion(self, (c, z, z, z))

    @property
    def one(self) -> "Quaternion":
        return self.scalar(self.field.one)

    @property
    def zero(self) -> "Quaternion":
        return self.scalar(self.field.zero)

    @property
    def i(self) -> "Quaternion":
        z = self.field.zero
        return Quaternion(self, (z, self.field.one, z, z))

    @property
    def j(self) -> "Quaternion":
        z = self.field.zero
        return Quaternion(self, (z, z, self.field.one, z))

    @property
    def ij(self) -> "Quaternion":
        z = self.field.zero
        return Quaternion(self, (z, z, z, self.field.one))

    def basis(self) -> tuple["Quaternion", ...]:
        return (self.one, self.i, self.j, self.ij)


class Quaternion:
    """Element of a QuaternionAlgebra, coordinates on 1, i, j, ij."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: QuaternionAlgebra, coords):
        self.alg = alg
        self.coords = tuple(coords)
        if len(self.coords) != 4:
            raise DomainError("quaternions have 4 coordinates")

    def _check(self, other: "Quaternion"):
        if self.alg != other.alg:
            raise DomainError("mixed quaternion algebras")

    def __add__(self, other):
        self._check(other)
        return Quaternion(self.alg, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Quaternion(self.alg, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.alg, tuple(-x for x in self.coords))

    def scale(self, c: Scalar) -> "Quaternion":
        return Quaternion(self.alg, tuple(x * c for x in self.coords))

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        self._check(other)
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        ab = a * b
        z0 = x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - ab * (x3 * y3)
        z1 = x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2)
        z2 = x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1)
        z3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1
        return Quaternion(self.alg, (z0, z1, z2, z3))

    def __pow__(self, n: int) -> "Quaternion":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.alg.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Quaternion":
        """Canonical involution: negate the pure part."""
        x0, x1, x2, x3 = self.coords
        return Quaternion(self.alg, (x0, -x1, -x2, -x3))

    def nrd(self) -> Scalar:
        """Reduced norm x * conj(x)."""
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * (x1 * x1) - b * (x2 * x2) + a * b * (x3 * x3)

    def trd(self) -> Scalar:
        return self.coords[0] + self.coords[0]

    def inverse(self) -> "Quaternion":
        n = self.nrd()
        if n.is_zero:
            raise DomainError("non-invertible quaternion")
        return self.conj().scale(n.inverse())

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for x in self.coords)

    @property
    def is_central(self) -> bool:
        return all(x.is_zero for x in self.coords[1:])

    @property
    def is_pure(self) -> bool:
        return self.coords[0].is_zero and not self.is_zero

    def scalar_value(self) -> Scalar:
        if not self.is_central:
            raise DomainError("not a central element")
        return self.coords[0]

    def __eq__(self, other):
        return (isinstance(other, Quaternion) and self.alg == other.alg
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Quaternion({', '.join(str(c) for c in self.coords)})"


class Involution:
    """Int(u) o gamma; symplectic when u is central (that is gamma itself),
    orthogonal when u is an invertible pure quaternion."""

    __slots__ = ("alg", "twist")

    def __init__(self, alg: QuaternionAlgebra, twist: Quaternion):
        if twist.alg != alg:
            raise DomainError("twist lives in the wrong algebra")
        if twist.nrd().is_zero:
            raise DomainError("twist must be invertible")
        if not (twist.is_central or twist.is_pure):
            raise DomainError("twist must be central or pure")
        self.alg = alg
        self.twist = twist

    @classmethod
    def canonical(cls, alg: QuaternionAlgebra) -> "Involution":
        return cls(alg, alg.one)

    @classmethod
    def from_signs(cls, alg: QuaternionAlgebra, si: int, sj: int) -> "Involution":
        """The unique twisted involution with the given signs on i and j:
        (-1,-1) -> gamma, (-1,+1) -> Int(i), (+1,-1) -> Int(j),
        (+1,+1) -> Int(ij)."""
        table = {(-1, -1): alg.one, (-1, 1): alg.i, (1, -1): alg.j, (1, 1): alg.ij}
        if (si, sj) not in table:
            raise DomainError(f"signs must be +-1, got {(si, sj)}")
        return cls(alg, table[(si, sj)])

    @property
    def kind(self) -> str:
        return "symplectic" if self.twist.is_central else "orthogonal"

    def apply(self, x: Quaternion) -> Quaternion:
        if x.alg != self.alg:
            raise DomainError("element in the wrong algebra")
        if self.twist.is_central:
            return x.conj()
        return self.twist * x.conj() * self.twist.inverse()

    def sign_of(self, x: Quaternion) -> int | None:
        y = self.apply(x)
        if y == x:
            return 1
        if y == -x:
            return -1
        return None

    def diag_signs(self) -> tuple[int, int] | None:
        si = self.sign_of(self.alg.i)
        sj = self.sign_of(self.alg.j)
        if si is None or sj is None:
            return None
        return si, sj

    def discriminant(self):
        """Square class of -Nrd(u) for an orthogonal involution."""
        if self.kind != "orthogonal":
            raise DomainError("discriminant needs an orthogonal involution")
        return (-self.twist.nrd()).square_class()

    def same_as(self, other: "Involution") -> bool:
        """Projective equality of twists (Int(u) = Int(cu))."""
        if self.alg != other.alg:
            return False
        q = self.twist * other.twist.inverse()
        return q.is_central

    def __repr__(self):
        return f"Involution(twist={self.twist})"


# -- Hilbert symbols over Q --------------------------------------------------


def _two_val(n: int) -> tuple[int, int]:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v, n


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a: int, b: int, place) -> int:
    """Local Hilbert symbol of nonzero integers at 'inf', 2, or an odd
    prime."""
    if a == 0 or b == 0:
        raise DomainError("symbol entries must be nonzero")
    if place == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    if p == 2:
        alpha, u = _two_val(abs(a))
        beta, w = _two_val(abs(b))
        u, w = u * (1 if a > 0 else -1), w * (1 if b > 0 else -1)
        e = (_eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)) % 2
        return -1 if e else 1
    alpha, beta = 0, 0
    u, w = a, b
    while u % p == 0:
        u //= p
        alpha += 1
    while w % p == 0:
        w //= p
        beta += 1
    s = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        s = -s
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(w, p)
    return s


def _odd_prime_factors(n: int, bound: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(3, bound + 1, 2):
        if d * d > n:
            break
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
    if n > 2 and n % 2:
        out.append(n)
    return out


def ramified_places(a: Fraction, b: Fraction,
                    bound: int = DEFAULT_FACTOR_BOUND) -> frozenset:
    """Places of Q where the symbol (a, b) is -1.  Characterizes the
    algebra up to isomorphism."""
    sa = squarefree_part(Fraction(a).numerator * Fraction(a).denominator, bound)
    sb = squarefree_part(Fraction(b).numerator * Fraction(b).denominator, bound)
    places = ["inf", 2] + sorted(set(_odd_prime_factors(sa, bound))
                                 | set(_odd_prime_factors(sb, bound)))
    return frozenset(p for p in places if hilbert_symbol(sa, sb, p) == -1)


def _class_pairs(alg: QuaternionAlgebra):
    return alg.a.square_class(), alg.b.square_class()


def is_split(alg: QuaternionAlgebra, bound: int | None = None) -> bool:
    """Decide (a, b) ~ M_2 over the tower.  Strips levels outermost first:
    unit/unit descends to the residue algebra, t-unit splits iff the unit
    slot is a square, t/t rewrites via (at, bt) ~ (at, -ab)."""
    base = alg.field.base
    if base.variant not in ("rational", "prime"):
        raise UnsupportedFieldError(f"cannot decide splitness over {base}")
    bound = bound if bound is not None else alg.field.factor_bound
    (ca, ea), (cb, eb) = _class_pairs(alg)
    ea, eb = list(ea), list(eb)
    one_rep = base.square_class_rep(base.one, bound)

    def is_trivial(c, e):
        return c == one_rep and not any(e)

    while ea:
        pa, pb = ea[-1], eb[-1]
        if pa and pb:
            # second slot becomes -a*b, a unit at this level
            cb = base.square_class_rep(base.neg(base.mul(ca, cb)), bound)
            eb = [x ^ y for x, y in zip(ea, eb)]
            eb[-1] = 0
            pb = 0
        if pa and not pb:
            return is_trivial(cb, eb)
        if pb and not pa:
            return is_trivial(ca, ea)
        ea.pop()
        eb.pop()
    if base.variant == "prime":
        return True
    sa = squarefree_part(Fraction(ca).numerator * Fraction(ca).denominator, bound)
    sb = squarefree_part(Fraction(cb).numerator * Fraction(cb).denominator, bound)
    if sa == 1 or sb == 1:
        return True
    places = ["inf", 2] + sorted(set(_odd_prime_factors(sa, bound))
                                 | set(_odd_prime_factors(sb, bound)))
    return all(hilbert_symbol(sa, sb, p) == 1 for p in places)


@dataclass(frozen=True)
class SymbolForm:
    """Normal form of a symbol over F((t)): Unramified(a, b) with unit
    square-class slots, or Ramified(a, b) standing for (a t, b).  The
    witness generators (when the needed square roots are representable)
    satisfy the target relations inside the input algebra."""
    ramified: bool
    a_rep: object
    b_rep: object
    witness: tuple[Quaternion, Quaternion] | None

    @property
    def tag(self) -> str:
        return "ramified" if self.ramified else "unramified"


def _scaled_to(x: Quaternion, target: Scalar) -> Quaternion | None:
    """x / r with r^2 = x^2 / target, when that square root exists."""
    sq = (x * x).scalar_value()
    r = (sq / target).sqrt()
    if r is None:
        return None
    return x.scale(r.inverse())


def canonical_symbol_form(alg: QuaternionAlgebra) -> SymbolForm:
    """Lemma-style normal form over a one-level tower."""
    field = alg.field
    if field.nvars != 1:
        raise DomainError("symbol normal form requires tower arity 1")
    (ca, (pa,)), (cb, (pb,)) = _class_pairs(alg)
    i, j = alg.i, alg.j
    base = field.base
    if pa == 0 and pb == 0:
        targets = (field.from_base(ca), field.from_base(cb))
        gens = (i, j)
        ramified = False
        reps = (ca, cb)
    elif pa == 1 and pb == 0:
        targets = (field.monomial((1,), ca), field.from_base(cb))
        gens = (i, j)
        ramified = True
        reps = (ca, cb)
    elif pa == 0 and pb == 1:
        targets = (field.monomial((1,), cb), field.from_base(ca))
        gens = (j, i)
        ramified = True
        reps = (cb, ca)
    else:
        c2 = base.square_class_rep(base.neg(base.mul(ca, cb)), field.factor_bound)
        targets = (field.monomial((1,), ca), field.from_base(c2))
        gens = (i, i * j)
        ramified = True
        reps = (ca, c2)
    w1 = _scaled_to(gens[0], targets[0])
    w2 = _scaled_to(gens[1], targets[1])
    witness = None
    if w1 is not None and w2 is not None:
        if (w1 * w2 + w2 * w1).is_zero and (w1 * w1).scalar_value() == targets[0] \
                and (w2 * w2).scalar_value() == targets[1]:
            witness = (w1, w2)
    return SymbolForm(ramified, reps[0], reps[1], witness)


def algebra_defined_over_base(alg: QuaternionAlgebra) -> bool:
    """Structural test over F((t)): unramified normal form, or split."""
    form = canonical_symbol_form(alg)
    return (not form.ramified) or is_split(alg)


def pair_defined_over_base(alg: QuaternionAlgebra, invol: Involution) -> bool:
    """Whether the algebra-with-involution descends to F: the algebra does
    and, for orthogonal involutions, the discriminant is a unit class."""
    if not algebra_defined_over_base(alg):
        return False
    if invol.kind == "symplectic":
        return True
    _, parity = invol.discriminant()
    return not any(parity)


def involution_aligned_generators(alg: QuaternionAlgebra, invol: Involution,
                                  allow_split: bool = False
                                  ) -> tuple[Quaternion, Quaternion]:
    """Generators i, j with i^2 = a t, j^2 = b (a, b unit classes), ij = -ji
    and the involution diagonal on them, for an algebra over F((t)) whose
    pair with the orthogonal involution is not defined over F.

    The twist itself supplies the generator matching the discriminant
    class; the complement comes from the anticommutation equation, with
    the i*j^{-1} substitution when it lands on the wrong class.  By
    default the algebra must be a division algebra; allow_split admits the
    adjoint-form split case (pair still not defined over F)."""
    if invol.kind != "orthogonal":
        raise DomainError("aligned generators need an orthogonal involution")
    if alg.field.nvars != 1:
        raise DomainError("aligned generators require tower arity 1")
    if is_split(alg):
        if not allow_split:
            raise DomainError("algebra is split")
        if pair_defined_over_base(alg, invol):
            raise DomainError("algebra with involution is defined over the residue field")
    elif not canonical_symbol_form(alg).ramified:
        raise DomainError("algebra is defined over the residue field")
    field = alg.field
    u = invol.twist
    usq = (u * u).scalar_value()
    rep, (par,) = usq.square_class()
    if par == 1:
        i_elem = _scaled_to(u, field.monomial((1,), rep))
        if i_elem is None:
            raise DomainError("twist square root not representable")
        y = _anticommuting_complement(i_elem)
        ysq = (y * y).scalar_value()
        ry, (py,) = ysq.square_class()
        if py == 0:
            j_elem = _scaled_to(y, field.from_base(ry))
        else:
            w = i_elem * y.inverse()
            wsq = (w * w).scalar_value()
            rw, (pw,) = wsq.square_class()
            if pw != 0:
                raise DomainError("substitute generator still ramified")
            j_elem = _scaled_to(w, field.from_base(rw))
        if j_elem is None:
            raise DomainError("complement square root not representable")
    else:
        j_elem = _scaled_to(u, field.from_base(rep))
        if j_elem is None:
            raise DomainError("twist square root not representable")
        y = _anticommuting_complement(j_elem)
        ysq = (y * y).scalar_value()
        ry, (py,) = ysq.square_class()
        if py != 1:
            raise DomainError("algebra is defined over the residue field")
        i_elem = _scaled_to(y, field.monomial((1,), ry))
        if i_elem is None:
            raise DomainError("complement square root not representable")
    for g in (i_elem, j_elem):
        if invol.sign_of(g) is None:
            raise DomainError("involution not diagonal on aligned generators")
    return i_elem, j_elem


def _anticommuting_complement(p: Quaternion) -> Quaternion:
    """A deterministic invertible pure quaternion anticommuting with the
    invertible pure p: solutions of the polarized norm-form equation."""
    alg = p.alg
    a, b = alg.a, alg.b
    _, p1, p2, p3 = p.coords
    z = alg.field.zero
    lines = [
        Quaternion(alg, (z, b * p2, -(a * p1), z)),
        Quaternion(alg, (z, a * b * p3, z, a * p1)),
        Quaternion(alg, (z, z, a * b * p3, b * p2)),
    ]
    # in a split algebra single lines may be isotropic; pairwise sums
    # then hit an anisotropic vector of the 2-dimensional solution plane
    candidates = list(lines)
    for k in range(3):
        for l in range(k + 1, 3):
            candidates.append(lines[k] + lines[l])
    for y in candidates:
        if not y.is_zero and not y.nrd().is_zero:
            if (y * p + p * y).is_zero:
                return y
    raise DomainError("no invertible anticommuting complement found")
