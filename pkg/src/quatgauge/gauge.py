"""Armature gauges: value functions g(sum c_a x_a) = min(v(c_a) + grade(a))
with grade(a) = v(x_a^2)/2, gauge axiom checks, kernel subgroups and
degree-0 residue presentations.

The grade map descends to a homomorphism into (1/2 Z / Z)^n; its kernel
carries the residue presentation over the base field, obtained by
dividing each class square by its monomial part and taking leading
coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .armature import ArmatureElement, ArmaturePresentation, BasisMap
from .errors import ContractViolation, DomainError, UnsupportedFieldError
from .gf2 import echelon_basis, symplectic_gram_schmidt
from .sampling import random_element
from .scalars import GradeValue, LaurentField


class ArmatureGauge:
    """Grade table of an armature presentation.  Carries the (unchecked)
    anisotropy assumption under which such a gauge is the unique
    involution-invariant one."""

    __slots__ = ("pres", "grades", "assumes_anisotropic")

    def __init__(self, pres: ArmaturePresentation, assumes_anisotropic: bool = True):
        self.pres = pres
        self.grades = tuple(pres.class_square(a).valuation().half()
                            for a in pres.classes())
        self.assumes_anisotropic = assumes_anisotropic

    def grade(self, a: int) -> GradeValue:
        return self.grades[a]

    def grade_mod(self, a: int):
        return self.grades[a].mod_lattice()

    def eval(self, x: ArmatureElement) -> GradeValue:
        if x.pres != self.pres:
            raise DomainError("element from another presentation")
        if x.is_zero:
            return GradeValue.infinity()
        return min(c.valuation() + self.grades[a] for a, c in x.coeffs.items())


@dataclass
class CheckReport:
    """Outcome of a gauge property check; empty violations means pass."""
    name: str
    checked: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def note(self, **data):
        self.violations.append(data)

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked,
                "ok": self.ok, "violations": self.violations}


def check_surmultiplicative(gauge: ArmatureGauge, rng: random.Random | None = None,
                            samples: int = 0) -> CheckReport:
    """g(xy) >= g(x) + g(y), exhaustively on class pairs and on sampled
    element pairs."""
    pres = gauge.pres
    report = CheckReport("surmultiplicative")
    for a in pres.classes():
        xa = pres.basis_elem(a)
        for b in pres.classes():
            lhs = gauge.eval(xa * pres.basis_elem(b))
            rhs = gauge.grade(a) + gauge.grade(b)
            report.checked += 1
            if lhs < rhs:
                report.note(kind="class-pair", a=a, b=b, got=str(lhs), want=str(rhs))
    for _ in range(samples):
        x = random_element(pres, rng)
        y = random_element(pres, rng)
        report.checked += 1
        if gauge.eval(x * y) < gauge.eval(x) + gauge.eval(y):
            report.note(kind="element-pair", x=repr(x), y=repr(y))
    return report


def check_special(gauge: ArmatureGauge, rng: random.Random | None = None,
                  samples: int = 0) -> CheckReport:
    """Invariance g(theta(x)) = g(x) and the special-gauge equation
    g(theta(x) x) = 2 g(x), on classes exhaustively and on samples."""
    pres = gauge.pres
    report = CheckReport("special")
    for a in pres.classes():
        xa = pres.basis_elem(a)
        report.checked += 1
        if gauge.eval(xa.involution()) != gauge.grade(a):
            report.note(kind="invariance-class", a=a)
        if gauge.eval(xa.involution() * xa) != gauge.grade(a).double():
            report.note(kind="special-class", a=a)
    for _ in range(samples):
        x = random_element(pres, rng)
        report.checked += 1
        if gauge.eval(x.involution()) != gauge.eval(x):
            report.note(kind="invariance", x=repr(x))
        gx = gauge.eval(x)
        if gauge.eval(x.involution() * x) != gx.double():
            report.note(kind="special", x=repr(x), grade=str(gx))
    return report


class ResidueData:
    """Kernel of the grade homomorphism with its residue presentation.

    basis lists the kernel on symplectic pairs first, radical classes
    last; the residue presentation lives over the arity-0 field with
    squares the leading coefficients of the monomial-normalized class
    squares.  project() is the degree-0 component map for elements of
    nonnegative gauge."""

    def __init__(self, gauge: ArmatureGauge):
        pres = gauge.pres
        self.gauge = gauge
        self.pres = pres
        self.kernel = [a for a in pres.classes() if gauge.grade(a).is_integral]
        self.image_size = len({gauge.grade_mod(a) for a in pres.classes()})
        pairs, radical = symplectic_gram_schmidt(echelon_basis(self.kernel),
                                                 pres.pair_bit)
        self.pairs = pairs
        self.radical = radical
        self.basis = [c for p in pairs for c in p] + radical
        self.bmap = BasisMap(pres, self.basis)
        self.residue_field = LaurentField(pres.field.base, 0,
                                          factor_bound=pres.field.factor_bound)
        squares, signs = [], []
        self._basis_grades = []
        for h in self.basis:
            sq = pres.class_square(h)
            v = sq.valuation().int_vec()
            self._basis_grades.append(tuple(x // 2 for x in v))
            unit = sq.shift(tuple(-x for x in v))
            squares.append(self.residue_field.from_base(unit.residue()))
            signs.append(pres.sign(h))
        pairing = tuple(tuple(pres.pair_classes(h, k) for k in self.basis)
                        for h in self.basis)
        self.residue_pres = ArmaturePresentation(self.residue_field, squares,
                                                 pairing, signs)

    @property
    def kernel_order(self) -> int:
        return len(self.kernel)

    def project(self, x: ArmatureElement) -> ArmatureElement:
        """Degree-0 residue of an element with gauge >= 0."""
        if x.pres != self.pres:
            raise DomainError("element from another presentation")
        out = {}
        for a, c in x.coeffs.items():
            total = c.valuation() + self.gauge.grade(a)
            zero = GradeValue.zero(self.pres.field.nvars)
            if total < zero:
                raise ContractViolation(
                    f"element has negative gauge {total} on class {a}")
            if total > zero:
                continue
            mask, omega = self.bmap.to_child_class(a)
            shift = [0] * self.pres.field.nvars
            for i in range(len(self.basis)):
                if mask >> i & 1:
                    for k, g in enumerate(self._basis_grades[i]):
                        shift[k] += g
            val = (c / omega).shift(tuple(shift)).residue()
            coeff = self.residue_field.from_base(val)
            cur = out.get(mask)
            out[mask] = coeff if cur is None else cur + coeff
        return ArmatureElement(self.residue_pres, out)

    # -- radical folding -------------------------------------------------

    def radical_rank(self) -> int:
        return len(self.radical)

    def symplectic_part(self) -> ArmaturePresentation:
        """Residue presentation restricted to the hyperbolic-pair block."""
        k = 2 * len(self.pairs)
        return ArmaturePresentation(
            self.residue_field,
            self.residue_pres.squares[:k],
            tuple(row[:k] for row in self.residue_pres.pairing[:k]),
            self.residue_pres.signs[:k])

    def fold_radical(self, x: ArmatureElement) -> ArmatureElement:
        """Algebra homomorphism onto the symplectic part: each radical
        generator (central, with square a base-field square) is sent to
        the positive square root of its square."""
        if x.pres != self.residue_pres:
            raise DomainError("fold expects residue-presentation elements")
        base = self.residue_field.base
        k = 2 * len(self.pairs)
        roots = []
        for i in range(k, len(self.basis)):
            sq = self.residue_pres.squares[i]
            r = sq.sqrt()
            if r is None:
                raise DomainError("radical square is not a base-field square")
            roots.append(r)
        target = self.symplectic_part()
        out = {}
        wmask_all = (1 << k) - 1
        for mask, c in x.coeffs.items():
            w = mask & wmask_all
            factor = self.residue_field.one
            for i in range(k, len(self.basis)):
                if mask >> i & 1:
                    factor = factor * roots[i - k]
            # ascending words split cleanly: x_mask = x_w * x_radpart
            term = c * factor
            cur = out.get(w)
            out[w] = term if cur is None else cur + term
        return ArmatureElement(target, out)


def kernel_and_residue(gauge: ArmatureGauge) -> ResidueData:
    return ResidueData(gauge)


# -- degree-0 structure checks -------------------------------------------------


def semisimple_from_table(dim: int, mul, base) -> bool:
    """Trace-form nondegeneracy for an algebra given by a multiplication
    table: mul(a, b) -> dict basis-index -> coefficient.  Semisimple over
    a characteristic-0 field iff the Gram matrix of (x, y) -> Tr(L_xy) has
    full rank."""
    traces = []
    for e in range(dim):
        tr = base.zero
        for d in range(dim):
            tr = base.add(tr, mul(e, d).get(d, base.zero))
        traces.append(tr)
    gram = []
    for a in range(dim):
        row = []
        for b in range(dim):
            val = base.zero
            for e, c in mul(a, b).items():
                val = base.add(val, base.mul(c, traces[e]))
            row.append(val)
        gram.append(row)
    return _rank(gram, base) == dim


def _rank(matrix, base) -> int:
    m = [row[:] for row in matrix]
    rank = 0
    rows, cols = len(m), len(m[0]) if m else 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if not base.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = base.inv(m[rank][col])
        m[rank] = [base.mul(v, inv) for v in m[rank]]
        for r in range(rows):
            if r != rank and not base.is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [base.sub(v, base.mul(f, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


def check_semisimple_degree0(res: ResidueData) -> bool:
    """Trace-form rank test on the degree-0 component, over Q only."""
    base = res.residue_field.base
    if base.variant != "rational":
        raise UnsupportedFieldError("semisimplicity test runs over Q")
    pres0 = res.residue_pres

    def mul(a, b):
        return {a ^ b: pres0.cocycle(a, b).residue()}

    return semisimple_from_table(pres0.group_order, mul, base)


def find_central_idempotent(res: ResidueData) -> ArmatureElement | None:
    """Search z^2 = z with z central and z not in {0, 1} in the degree-0
    component: a central class with square a base square yields
    (1 + x_c / sqrt(x_c^2)) / 2, and by Kummer theory for these etale
    centers no idempotent exists otherwise."""
    pres0 = res.residue_pres
    base = res.residue_field.base
    for c in range(1, pres0.group_order):
        if any(pres0.pair_classes(c, 1 << k) != 1 for k in range(pres0.ngens)):
            continue
        sq = pres0.class_square(c)
        root = sq.sqrt()
        if root is None:
            continue
        half = res.residue_field.from_base(base.div(base.one, base.from_int(2)))
        e = pres0.element({0: half, c: half / root})
        if e * e != e:
            raise ContractViolation("constructed idempotent fails z^2 = z")
        return e
    return None
