"""Armature presentations: tensor products of quaternion algebras as
twisted group algebras over F_2^(2m).

A presentation fixes 2m generators g_k with g_k^2 = lambda_k (nonzero
scalars), g_k g_l = P_kl g_l g_k (P symmetric, unit diagonal, values +-1)
and involution signs theta(g_k) = eps_k g_k.  Classes are int bitmasks;
the canonical representative x_a of a class is the ascending generator
word, which makes the cocycle beta(a, b) with x_a x_b = beta(a, b) x_(a+b)
computable by sorting words: transpositions contribute pairing entries,
collisions contribute squares.
"""

from __future__ import annotations

from .errors import DegeneratePairingError, DomainError
from .gf2 import (
    coords_in_basis,
    echelon_basis,
    is_subgroup,
    popcount_bits,
    span,
    symplectic_base_or_raise,
)
from .quaternion import Involution, QuaternionAlgebra
from .scalars import LaurentField, Scalar


class ArmaturePresentation:
    __slots__ = ("field", "squares", "pairing", "signs", "ngens")

    def __init__(self, field: LaurentField, squares, pairing, signs):
        squares = tuple(squares)
        signs = tuple(int(s) for s in signs)
        pairing = tuple(tuple(int(x) for x in row) for row in pairing)
        n = len(squares)
        if len(signs) != n or len(pairing) != n:
            raise DomainError("generator data lengths disagree")
        for s in squares:
            if not isinstance(s, Scalar) or s.field != field:
                raise DomainError("squares must be scalars of the tower field")
            if s.is_zero:
                raise DomainError("generator squares must be nonzero")
        for k in range(n):
            if len(pairing[k]) != n or pairing[k][k] != 1:
                raise DomainError("pairing needs a unit diagonal")
            for l in range(n):
                if pairing[k][l] not in (-1, 1) or pairing[k][l] != pairing[l][k]:
                    raise DomainError("pairing must be symmetric with values +-1")
        for s in signs:
            if s not in (-1, 1):
                raise DomainError("involution signs must be +-1")
        self.field = field
        self.squares = squares
        self.pairing = pairing
        self.signs = signs
        self.ngens = n

    # -- structure -----------------------------------------------------

    @property
    def group_order(self) -> int:
        return 1 << self.ngens

    @property
    def m(self) -> int:
        return self.ngens // 2

    def classes(self):
        return range(self.group_order)

    def word(self, cls: int) -> list[int]:
        return popcount_bits(cls)

    def cocycle(self, a: int, b: int) -> Scalar:
        """beta(a, b) with x_a x_b = beta(a, b) x_(a xor b): insertion-sort
        the concatenated ascending words, collapsing squares."""
        arr = self.word(a) + self.word(b)
        sign = 1
        for idx in range(1, len(arr)):
            k = arr[idx]
            pos = idx
            while pos > 0 and arr[pos - 1] > k:
                sign *= self.pairing[arr[pos - 1]][k]
                arr[pos] = arr[pos - 1]
                pos -= 1
            arr[pos] = k
        factor = self.field.from_int(sign)
        out = []
        i = 0
        while i < len(arr):
            if i + 1 < len(arr) and arr[i] == arr[i + 1]:
                factor = factor * self.squares[arr[i]]
                i += 2
            else:
                out.append(arr[i])
                i += 1
        return factor

    def class_square(self, a: int) -> Scalar:
        return self.cocycle(a, a)

    def pair_classes(self, a: int, b: int) -> int:
        """Commutator pairing <a, b> in {-1, +1}."""
        out = 1
        for k in self.word(a):
            row = self.pairing[k]
            for l in self.word(b):
                out *= row[l]
        return out

    def pair_bit(self, a: int, b: int) -> int:
        return 0 if self.pair_classes(a, b) == 1 else 1

    def sign(self, a: int) -> int:
        """theta(x_a) = sign(a) x_a: generator signs times the word
        reversal factor (each unordered pair swaps once)."""
        w = self.word(a)
        out = 1
        for k in w:
            out *= self.signs[k]
        for ki in range(len(w)):
            for li in range(ki + 1, len(w)):
                out *= self.pairing[w[ki]][w[li]]
        return out

    # -- elements --------------------------------------------------------

    def element(self, coeffs: dict) -> "ArmatureElement":
        return ArmatureElement(self, coeffs)

    @property
    def one(self) -> "ArmatureElement":
        return ArmatureElement(self, {0: self.field.one})

    def basis_elem(self, a: int, coeff: Scalar | None = None) -> "ArmatureElement":
        if coeff is None:
            coeff = self.field.one
        return ArmatureElement(self, {a: coeff})

    def gen_elem(self, k: int) -> "ArmatureElement":
        return self.basis_elem(1 << k)

    def scalar_elem(self, c: Scalar) -> "ArmatureElement":
        return ArmatureElement(self, {0: c})

    # -- constructions -----------------------------------------------------

    def tensor(self, other: "ArmaturePresentation") -> "ArmaturePresentation":
        if other.field != self.field:
            raise DomainError("tensor factors over different fields")
        n1, n2 = self.ngens, other.ngens
        squares = self.squares + other.squares
        signs = self.signs + other.signs
        pairing = []
        for k in range(n1 + n2):
            row = []
            for l in range(n1 + n2):
                if k < n1 and l < n1:
                    row.append(self.pairing[k][l])
                elif k >= n1 and l >= n1:
                    row.append(other.pairing[k - n1][l - n1])
                else:
                    row.append(1)
            pairing.append(row)
        return ArmaturePresentation(self.field, squares, pairing, signs)

    def with_signs(self, signs) -> "ArmaturePresentation":
        return ArmaturePresentation(self.field, self.squares, self.pairing, signs)

    @classmethod
    def trivial(cls, field: LaurentField) -> "ArmaturePresentation":
        return cls(field, (), (), ())

    @classmethod
    def quaternion(cls, alg: QuaternionAlgebra, invol: Involution | None = None
                   ) -> "ArmaturePresentation":
        """m = 1 presentation of (a, b) with a sign-diagonal involution
        (canonical when none is given)."""
        if invol is None:
            invol = Involution.canonical(alg)
        ds = invol.diag_signs()
        if ds is None:
            raise DomainError("involution is not diagonal on i, j")
        return cls(alg.field, (alg.a, alg.b), ((1, -1), (-1, 1)), ds)

    def __eq__(self, other):
        return (isinstance(other, ArmaturePresentation) and self.field == other.field
                and self.squares == other.squares and self.pairing == other.pairing
                and self.signs == other.signs)

    def __hash__(self):
        return hash((self.squares, self.pairing, self.signs))

    def __repr__(self):
        sq = ", ".join(str(s) for s in self.squares)
        return f"ArmaturePresentation([{sq}], signs={list(self.signs)})"


class ArmatureElement:
    __slots__ = ("pres", "coeffs")

    def __init__(self, pres: ArmaturePresentation, coeffs: dict):
        self.pres = pres
        clean = {}
        for a, c in coeffs.items():
            if not (0 <= a < pres.group_order):
                raise DomainError(f"class {a} outside the group")
            if not c.is_zero:
                clean[a] = c
        self.coeffs = clean

    def _check(self, other: "ArmatureElement"):
        if self.pres is not other.pres and self.pres != other.pres:
            raise DomainError("mixed presentations")

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            s = out.get(a)
            out[a] = c if s is None else s + c
        return ArmatureElement(self.pres, out)

    def __neg__(self):
        return ArmatureElement(self.pres, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar) -> "ArmatureElement":
        return ArmatureElement(self.pres, {a: v * c for a, v in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        pres = self.pres
        out: dict[int, Scalar] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                cls = a ^ b
                term = ca * cb * pres.cocycle(a, b)
                cur = out.get(cls)
                out[cls] = term if cur is None else cur + term
        return ArmatureElement(pres, out)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.pres.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "ArmatureElement":
        """Inverse of a single-class element x_a c: x_a / x_a^2."""
        if len(self.coeffs) != 1:
            raise DomainError("only single-class elements are inverted directly")
        (a, c), = self.coeffs.items()
        return ArmatureElement(self.pres, {a: (c * self.pres.class_square(a)).inverse()})

    def involution(self) -> "ArmatureElement":
        return ArmatureElement(self.pres,
                               {a: c * self.pres.field.from_int(self.pres.sign(a))
                                for a, c in self.coeffs.items()})

    @property
    def is_scalar(self) -> bool:
        return set(self.coeffs) <= {0}

    def scalar_value(self) -> Scalar:
        if not self.is_scalar:
            raise DomainError("element is not central scalar")
        return self.coeffs.get(0, self.pres.field.zero)

    def __eq__(self, other):
        return (isinstance(other, ArmatureElement) and self.pres == other.pres
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(tuple(sorted((a, c) for a, c in self.coeffs.items())))

    def __repr__(self):
        if self.is_zero:
            return "ArmatureElement(0)"
        parts = [f"{c}*x[{a:0{self.pres.ngens}b}]" for a, c in sorted(self.coeffs.items())]
        return "ArmatureElement(" + " + ".join(parts) + ")"


# -- change of basis ----------------------------------------------------------


def express_in_basis(pres: ArmaturePresentation, basis: list[int], cls: int
                     ) -> tuple[list[int], Scalar]:
    """Coordinates of cls over the basis and the scalar omega with
    prod_i x_(h_i)^(c_i) = omega * x_cls (ascending product order)."""
    coords = coords_in_basis(basis, cls)
    if coords is None:
        raise DomainError(f"class {cls} outside the subgroup")
    omega = pres.field.one
    cur = 0
    for i, c in enumerate(coords):
        if c:
            omega = omega * pres.cocycle(cur, basis[i])
            cur ^= basis[i]
    if cur != cls:
        raise DomainError("basis coordinates are inconsistent")
    return coords, omega


class BasisMap:
    """A subgroup of classes re-presented on an ordered basis.  push moves
    elements supported on the subgroup into the child presentation, pull
    moves them back; both account for the word-reordering scalars."""

    def __init__(self, parent: ArmaturePresentation, basis: list[int]):
        if len(echelon_basis(basis)) != len(basis):
            raise DomainError("dependent basis for subgroup presentation")
        self.parent = parent
        self.basis = list(basis)
        squares = tuple(parent.class_square(h) for h in basis)
        pairing = tuple(tuple(parent.pair_classes(h, k) for k in basis) for h in basis)
        signs = tuple(parent.sign(h) for h in basis)
        self.child = ArmaturePresentation(parent.field, squares, pairing, signs)

    def to_child_class(self, cls: int) -> tuple[int, Scalar]:
        coords, omega = express_in_basis(self.parent, self.basis, cls)
        mask = 0
        for i, c in enumerate(coords):
            if c:
                mask |= 1 << i
        return mask, omega

    def to_parent_class(self, mask: int) -> int:
        cls = 0
        for i in range(len(self.basis)):
            if mask >> i & 1:
                cls ^= self.basis[i]
        return cls

    def push(self, elem: ArmatureElement) -> ArmatureElement:
        out: dict[int, Scalar] = {}
        for a, c in elem.coeffs.items():
            mask, omega = self.to_child_class(a)
            cur = out.get(mask)
            term = c / omega
            out[mask] = term if cur is None else cur + term
        return ArmatureElement(self.child, out)

    def pull(self, elem: ArmatureElement) -> ArmatureElement:
        out: dict[int, Scalar] = {}
        for mask, c in elem.coeffs.items():
            cls = self.to_parent_class(mask)
            _, omega = express_in_basis(self.parent, self.basis, cls)
            cur = out.get(cls)
            term = c * omega
            out[cls] = term if cur is None else cur + term
        return ArmatureElement(self.parent, out)


def subgroup_presentation(pres: ArmaturePresentation, classes) -> BasisMap:
    """Presentation induced on a subgroup given by its full class set."""
    classes = sorted(set(classes))
    if not is_subgroup(classes):
        raise DomainError("class set is not closed under addition")
    return BasisMap(pres, echelon_basis(classes))


def rebase(pres: ArmaturePresentation, basis: list[int]) -> BasisMap:
    """Re-present the whole group on a new (full rank) basis."""
    if len(basis) != pres.ngens:
        raise DomainError("full rebase needs a full basis")
    return BasisMap(pres, basis)


# -- symplectic structure ------------------------------------------------------


def symplectic_base(pres: ArmaturePresentation) -> list[tuple[int, int]]:
    """Hyperbolic class pairs per the alternating pairing; raises
    DegeneratePairingError (with the radical) when the form degenerates."""
    gens = [1 << k for k in range(pres.ngens)]
    return symplectic_base_or_raise(gens, pres.pair_bit)


def factorize(pres: ArmaturePresentation
              ) -> list[tuple[QuaternionAlgebra, Involution, int, int]]:
    """Quaternion factors along a symplectic base: factor k is
    (x_a^2, x_b^2) with the involution matching the class signs."""
    out = []
    for a, b in symplectic_base(pres):
        alg = QuaternionAlgebra(pres.field, pres.class_square(a), pres.class_square(b))
        invol = Involution.from_signs(alg, pres.sign(a), pres.sign(b))
        out.append((alg, invol, a, b))
    return out
