"""Witness-producing decomposition pipelines.

A DecompositionWitness ties an armature presentation (the ambient algebra
with its sign involution) to a list of quaternion factors together with
explicit generator images; verify() checks every relation exactly, and by
simplicity of tensor products of quaternion algebras the relations plus
the dimension count force an isomorphism.

The pipelines move ramification around: factor exchange rewrites a tensor
pair over F((t)) so the first factor descends, ramification collection
iterates it until a single ramified factor remains, and the two descent
routines project witnesses through the degree-0 residue of the armature
gauge (folding the split residue through a central character when the
kernel pairing has a radical).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .armature import (
    ArmatureElement,
    ArmaturePresentation,
    BasisMap,
    factorize,
    rebase,
)
from .errors import ContractViolation, DomainError
from .gauge import ArmatureGauge, ResidueData, kernel_and_residue
from .quaternion import (
    Involution,
    QuaternionAlgebra,
    canonical_symbol_form,
    involution_aligned_generators,
    is_split,
    pair_defined_over_base,
)
from .sampling import random_symplectic_basis
from .scalars import GradeValue, LaurentField, Scalar


# -- witnesses -----------------------------------------------------------------


@dataclass
class WitnessFactor:
    alg: QuaternionAlgebra
    invol: Involution
    gen_i: ArmatureElement
    gen_j: ArmatureElement

    def images(self):
        return self.gen_i, self.gen_j


class DecompositionWitness:
    def __init__(self, pres: ArmaturePresentation, factors: list[WitnessFactor]):
        self.pres = pres
        self.factors = list(factors)

    def split_flags(self) -> list[bool]:
        return [is_split(f.alg) for f in self.factors]

    def split_count(self) -> int:
        return sum(self.split_flags())

    def copy(self) -> "DecompositionWitness":
        return DecompositionWitness(self.pres, [WitnessFactor(f.alg, f.invol, f.gen_i, f.gen_j)
                                                for f in self.factors])

    def verify(self) -> None:
        """Exact relation check: squares, anticommutation inside factors,
        commutation across factors, involution signs, dimension count."""
        pres = self.pres
        if 4 ** len(self.factors) != pres.group_order:
            raise ContractViolation(
                f"dimension mismatch: {len(self.factors)} factors in a "
                f"2^{pres.ngens} presentation")
        for k, f in enumerate(self.factors):
            gi, gj = f.gen_i, f.gen_j
            if (gi * gi) != pres.scalar_elem(f.alg.a):
                raise ContractViolation(f"factor {k}: i^2 != a")
            if (gj * gj) != pres.scalar_elem(f.alg.b):
                raise ContractViolation(f"factor {k}: j^2 != b")
            if not (gi * gj + gj * gi).is_zero:
                raise ContractViolation(f"factor {k}: generators do not anticommute")
            ds = f.invol.diag_signs()
            if ds is None:
                raise ContractViolation(f"factor {k}: involution not sign-diagonal")
            si, sj = ds
            if gi.involution() != gi.scale(pres.field.from_int(si)):
                raise ContractViolation(f"factor {k}: involution sign on i is not {si}")
            if gj.involution() != gj.scale(pres.field.from_int(sj)):
                raise ContractViolation(f"factor {k}: involution sign on j is not {sj}")
        for k in range(len(self.factors)):
            for l in range(k + 1, len(self.factors)):
                for x in self.factors[k].images():
                    for y in self.factors[l].images():
                        if x * y != y * x:
                            raise ContractViolation(
                                f"factors {k} and {l} do not commute")

    def __repr__(self):
        syms = ", ".join(f"({f.alg.a}, {f.alg.b})" for f in self.factors)
        return f"DecompositionWitness[{syms}]"


def quaternion_pair(field: LaurentField, a, b, signs=(-1, -1)
                    ) -> tuple[QuaternionAlgebra, Involution]:
    alg = QuaternionAlgebra(field, field.parse(a) if isinstance(a, str) else a,
                            field.parse(b) if isinstance(b, str) else b)
    return alg, Involution.from_signs(alg, *signs)


def adjoint_pfister_pair(field: LaurentField, unit
                         ) -> tuple[QuaternionAlgebra, Involution]:
    """The split algebra with the involution adjoint to <1, -u>: quaternion
    shape (1, u) with signs (+1, -1)."""
    u = field.parse(unit) if isinstance(unit, str) else unit
    alg = QuaternionAlgebra(field, field.one, u)
    return alg, Involution.from_signs(alg, 1, -1)


def presentation_from_pairs(pairs) -> DecompositionWitness:
    """Canonical lift: tensor the one-factor presentations and witness each
    factor by its own generator lines."""
    if not pairs:
        raise DomainError("empty factor list")
    field = pairs[0][0].field
    pres = ArmaturePresentation.trivial(field)
    for alg, invol in pairs:
        pres = pres.tensor(ArmaturePresentation.quaternion(alg, invol))
    factors = []
    for k, (alg, invol) in enumerate(pairs):
        factors.append(WitnessFactor(alg, invol,
                                     pres.gen_elem(2 * k), pres.gen_elem(2 * k + 1)))
    w = DecompositionWitness(pres, factors)
    w.verify()
    return w


def _gen_inverse(x: ArmatureElement) -> ArmatureElement:
    """Inverse of an element with central square (all generator images)."""
    sq = x * x
    return x.scale(sq.scalar_value().inverse())


def _theta_sign(x: ArmatureElement) -> int:
    y = x.involution()
    if y == x:
        return 1
    if y == -x:
        return -1
    raise ContractViolation("involution not diagonal on element")


def _factor_from_images(pres, gi, gj) -> WitnessFactor:
    """Build the factor record (algebra, sign-matched involution) from
    generator images with central squares."""
    a = (gi * gi).scalar_value()
    b = (gj * gj).scalar_value()
    alg = QuaternionAlgebra(pres.field, a, b)
    invol = Involution.from_signs(alg, _theta_sign(gi), _theta_sign(gj))
    return WitnessFactor(alg, invol, gi, gj)


# -- factor realignment --------------------------------------------------------


def _combine(coords, images) -> ArmatureElement:
    """Map quaternion coordinates through factor images 1, I, J, IJ."""
    one, gi, gj = images
    gij = gi * gj
    out = one.scale(coords[0])
    out = out + gi.scale(coords[1]) + gj.scale(coords[2]) + gij.scale(coords[3])
    return out


def realign_factor(w: DecompositionWitness, idx: int) -> None:
    """Rewrite factor idx on generators in lemma normal form: i^2 an exact
    a*t with a a unit class, j^2 an exact unit class, involution diagonal.
    Computed abstractly in the 4-dimensional algebra, then pushed through
    the images."""
    f = w.factors[idx]
    alg, invol = f.alg, f.invol
    if invol.kind == "orthogonal":
        qi, qj = involution_aligned_generators(alg, invol, allow_split=True)
    else:
        form = canonical_symbol_form(alg)
        if not form.ramified:
            raise DomainError("factor already defined over the residue field")
        if form.witness is None:
            raise DomainError("normal-form witness not representable")
        qi, qj = form.witness
    images = (w.pres.one, f.gen_i, f.gen_j)
    gi = _combine(qi.coords, images)
    gj = _combine(qj.coords, images)
    w.factors[idx] = _factor_from_images(w.pres, gi, gj)


# -- factor exchange -----------------------------------------------------------


@dataclass
class ExchangeResult:
    identity: bool
    out_pairs: list[tuple[QuaternionAlgebra, Involution]]
    witness: DecompositionWitness


def factor_exchange(h1: QuaternionAlgebra, n1: Involution,
                    h2: QuaternionAlgebra, n2: Involution) -> ExchangeResult:
    """Exchange a tensor pair over F((t)) for one whose first factor is
    defined over F: (a1 t, b1) x (a2 t, b2) becomes (a1 a2, b1) x
    (a2 t, b1 b2), with generators t^-1 i1 i2, j1 and i2, j1 j2.  When
    either input pair is already defined over F nothing moves."""
    if h1.field != h2.field:
        raise DomainError("exchange inputs over different fields")
    if h1.field.nvars != 1:
        raise DomainError("exchange works over a one-level tower")
    if pair_defined_over_base(h1, n1) or pair_defined_over_base(h2, n2):
        w = presentation_from_pairs([(h1, n1), (h2, n2)])
        return ExchangeResult(True, [(h1, n1), (h2, n2)], w)
    w = presentation_from_pairs([(h1, n1), (h2, n2)])
    new_w = exchange_witness_pair(w, 0, 1)
    pairs = [(f.alg, f.invol) for f in new_w.factors]
    return ExchangeResult(False, pairs, new_w)


def exchange_witness_pair(w: DecompositionWitness, k1: int, k2: int
                          ) -> DecompositionWitness:
    """Apply the exchange to factors k1, k2 of a witness (k1 becomes
    defined over F).  Checks the split bullets: split x split stays split
    x split, split-first x nonsplit keeps exactly the first split; any
    other change of the total split count is rejected."""
    out = w.copy()
    realign_factor(out, k1)
    realign_factor(out, k2)
    f1, f2 = out.factors[k1], out.factors[k2]
    split_before = (is_split(f1.alg), is_split(f2.alg))
    t_inv = w.pres.field.monomial((-1,))
    gi1 = (f1.gen_i * f2.gen_i).scale(t_inv)
    gj1 = f1.gen_j
    gi2 = f2.gen_i
    gj2 = f1.gen_j * f2.gen_j
    out.factors[k1] = _factor_from_images(out.pres, gi1, gj1)
    out.factors[k2] = _factor_from_images(out.pres, gi2, gj2)
    out.verify()
    split_after = (is_split(out.factors[k1].alg), is_split(out.factors[k2].alg))
    if split_before == (True, True) and split_after != (True, True):
        raise ContractViolation("split x split exchange lost a split factor")
    if split_before == (True, False) and split_after != (True, False):
        raise ContractViolation("split x nonsplit exchange broke the split pattern")
    if sum(split_before) != sum(split_after):
        raise ContractViolation(
            f"exchange changed the split count {split_before} -> {split_after}; "
            "the input witness was not split-maximal")
    return out


# -- ramification collection ---------------------------------------------------


@dataclass
class NormalizeResult:
    status: str                      # "ok" or "contradiction"
    witness: DecompositionWitness
    a_prime: object | None           # unit class of the residual discriminant / t
    ad_form: tuple[QuaternionAlgebra, Involution] | None
    exchanges: int

    @property
    def contradiction(self) -> bool:
        return self.status == "contradiction"


def _ramified_indices(w: DecompositionWitness) -> list[int]:
    return [k for k, f in enumerate(w.factors)
            if not pair_defined_over_base(f.alg, f.invol)]


def concentrate_ramification(w: DecompositionWitness) -> NormalizeResult:
    """Exchange factors pairwise until at most one is not defined over F.
    The residual factor must come out split and orthogonal; it is then
    reported in adjoint form <1, -a't> via its discriminant.  A division
    residual is the meaningful contradiction branch, not an error."""
    if w.pres.field.nvars != 1:
        raise DomainError("normalization works over a one-level tower")
    out = w.copy()
    out.verify()
    before = out.split_count()
    exchanges = 0
    while True:
        bad = _ramified_indices(out)
        if len(bad) <= 1:
            break
        k1, k2 = bad[0], bad[1]
        # the lemma's bullets assume a split factor comes first
        if not is_split(out.factors[k1].alg) and is_split(out.factors[k2].alg):
            k1, k2 = k2, k1
        out = exchange_witness_pair(out, k1, k2)
        exchanges += 1
        if out.split_count() != before:
            raise ContractViolation("normalization changed the split count")
    bad = _ramified_indices(out)
    if not bad:
        raise ContractViolation(
            "no ramified residual factor: input was defined over F entirely")
    r = out.factors[bad[0]]
    out.factors.insert(0, out.factors.pop(bad[0]))
    if not is_split(r.alg):
        return NormalizeResult("contradiction", out, None, None, exchanges)
    if r.invol.kind != "orthogonal":
        raise ContractViolation("split residual carries a symplectic involution")
    rep, parity = r.invol.discriminant()
    if parity != (1,):
        raise ContractViolation("split residual has unit discriminant")
    field = w.pres.field
    ad_alg = QuaternionAlgebra(field, field.one, field.monomial((1,), rep))
    ad_inv = Involution.from_signs(ad_alg, 1, -1)
    return NormalizeResult("ok", out, rep, (ad_alg, ad_inv), exchanges)


# -- descent across the adjoint factor (the t direction) -----------------------


def _lower_factor(f: WitnessFactor, res: ResidueData, fold: bool
                  ) -> WitnessFactor:
    """Project a factor with grade-0 images into the degree-0 residue
    (optionally folding the radical character), lowering the algebra's
    constant structure data to the residue field."""
    field0 = res.residue_field

    def lower_scalar(c: Scalar) -> Scalar:
        if c.is_zero:
            return field0.zero
        return field0.from_base(c.residue())

    gi = res.project(f.gen_i)
    gj = res.project(f.gen_j)
    if fold:
        gi = res.fold_radical(gi)
        gj = res.fold_radical(gj)
    a0 = (gi * gi).scalar_value()
    b0 = (gj * gj).scalar_value()
    alg0 = QuaternionAlgebra(field0, a0, b0)
    twist0 = [lower_scalar(c) for c in f.invol.twist.coords]
    inv0 = Involution(alg0, alg0.elem(*twist0))
    return WitnessFactor(alg0, inv0, gi, gj)


def descend_t(norm: NormalizeResult) -> DecompositionWitness:
    """Drop the adjoint residual factor by projecting the remaining
    generators through the degree-0 residue S x S and one of its two
    characters."""
    if norm.status != "ok":
        raise ContractViolation("cannot descend a contradiction branch")
    w = norm.witness
    gauge = ArmatureGauge(w.pres)
    res = kernel_and_residue(gauge)
    if res.radical_rank() != 1:
        raise ContractViolation(
            f"expected a rank-1 radical in the residue, got {res.radical_rank()}")
    zero = GradeValue.zero(w.pres.field.nvars)
    for k, f in enumerate(w.factors[1:], start=1):
        for x in f.images():
            if gauge.eval(x) != zero:
                raise ContractViolation(f"factor {k} generator has nonzero grade")
    lowered = [_lower_factor(f, res, fold=True) for f in w.factors[1:]]
    out = DecompositionWitness(res.symplectic_part(), lowered)
    out.verify()
    return out


# -- residue involution of an E (x) Q shape (the q direction) ------------------


@dataclass
class ResidueSplit:
    u_tag: str                   # one of "1", "i", "j", "ij"
    theta0_signs: tuple
    e_indices: tuple
    q_indices: tuple


_U_TABLE = {(-1, -1): "1", (-1, 1): "i", (1, -1): "j", (1, 1): "ij"}


def split_residue_involution(pres: ArmaturePresentation,
                             gauge: ArmatureGauge | None = None) -> ResidueSplit:
    """Read the quaternionic part of the involution from the generator
    signs: the two generators with half-integer grades carry the signs
    (z1, z2), and (-1,-1) -> 1, (-1,+1) -> i, (+1,-1) -> j, (+1,+1) -> ij.
    The remaining generators carry the residue involution."""
    gauge = gauge or ArmatureGauge(pres)
    if pres.field.nvars != 2:
        raise DomainError("residue splitting expects a two-level tower")
    half = GradeValue((0, 0))
    q1 = q2 = None
    e_idx = []
    for k in range(pres.ngens):
        gm = gauge.grade_mod(1 << k)
        if gm == (0, 0):
            e_idx.append(k)
        elif gm[0] != 0 and gm[1] == 0:
            if q1 is not None:
                raise DomainError("two generators grade to (1/2, 0)")
            q1 = k
        elif gm[0] == 0 and gm[1] != 0:
            if q2 is not None:
                raise DomainError("two generators grade to (0, 1/2)")
            q2 = k
        else:
            raise DomainError(f"generator {k} has mixed half-integer grade {gm}")
    if q1 is None or q2 is None:
        raise DomainError("no quaternionic generator pair found")
    z1, z2 = pres.sign(1 << q1), pres.sign(1 << q2)
    theta0 = tuple(pres.sign(1 << k) for k in e_idx)
    return ResidueSplit(_U_TABLE[(z1, z2)], theta0, tuple(e_idx), (q1, q2))


# -- Hermitian scalar normalization --------------------------------------------


@dataclass
class HermitianNormalization:
    u_tag: str
    u_sign: int                  # theta_2(u) = u_sign * u
    u_square: Scalar             # the central scalar u^2
    shift: tuple                 # w with c = t^w
    lam_unit: Scalar             # s * lam / (u^2 c^2), a valuation-0 unit
    lam0: object                 # residue, the base-field representative


def hermitian_unit_normalize(lam: Scalar, q_alg: QuaternionAlgebra,
                             q_invol: Involution) -> HermitianNormalization:
    """Normalize the Hermitian scale: conjugating the second basis vector
    by u in {1, i, j, ij} with matching norm-valuation parity makes the
    valuation even, the monomial shift makes it zero, and the residue is
    the base representative (the remaining unit is a square by Hensel)."""
    if lam.is_zero:
        raise DomainError("hermitian scale must be nonzero")
    v = lam.valuation().int_vec()
    parity = tuple(x % 2 for x in v)
    candidates = {"1": q_alg.one, "i": q_alg.i, "j": q_alg.j, "ij": q_alg.ij}
    chosen = None
    for tag, u in candidates.items():
        usq = (u * u).scalar_value()
        up = tuple(x % 2 for x in usq.valuation().int_vec())
        if up == parity:
            chosen = (tag, u, usq)
            break
    if chosen is None:
        raise DomainError(f"no quaternion line matches valuation parity {parity}")
    tag, u, usq = chosen
    s = q_invol.sign_of(u)
    if s is None:
        raise DomainError("involution not diagonal on the chosen line")
    lam1 = lam * q_alg.field.from_int(s) / usq
    v1 = lam1.valuation().int_vec()
    if any(x % 2 for x in v1):
        raise ContractViolation("conjugated scale has odd valuation")
    w = tuple(x // 2 for x in v1)
    lam_unit = lam1.shift(tuple(-2 * x for x in w))
    lam0 = lam_unit.residue()
    return HermitianNormalization(tag, s, usq, w, lam_unit, lam0)


# -- descent across the quaternion factor --------------------------------------


def _split_factor_shape(w: DecompositionWitness, k: int) -> None:
    """Bring a split factor to adjoint shape: signs (+1, -1) with i^2 = 1
    exactly.  Relabels generators per the sign pattern and rescales."""
    f = w.factors[k]
    ds = f.invol.diag_signs()
    if ds is None:
        raise ContractViolation(f"split factor {k} involution not diagonal")
    gi, gj = f.gen_i, f.gen_j
    if ds == (1, -1):
        pass
    elif ds == (-1, 1):
        gi, gj = gj, gi
    elif ds == (1, 1):
        gi, gj = gi, gi * gj
    else:
        raise ContractViolation(
            f"split factor {k} carries the hyperbolic canonical involution")
    sq = (gi * gi).scalar_value()
    root = sq.sqrt()
    if root is None:
        raise ContractViolation(
            f"split factor {k} is not in adjoint form: i^2 = {sq} is not a "
            "representable square")
    gi = gi.scale(root.inverse())
    w.factors[k] = _factor_from_images(w.pres, gi, gj)


def _q_factor_index(w: DecompositionWitness, gauge: ArmatureGauge) -> int:
    """The unique factor whose generators carry half-integer grades."""
    out = []
    zero_mod = (0, 0) if w.pres.field.nvars == 2 else (0,) * w.pres.field.nvars
    for k, f in enumerate(w.factors):
        grades = [gauge.eval(x).mod_lattice() for x in f.images()]
        if any(g != zero_mod for g in grades):
            out.append(k)
    if len(out) != 1:
        raise ContractViolation(
            f"expected exactly one ramified quaternion factor, found {out}")
    return out[0]


def rebase_split_factor(w: DecompositionWitness, k_split: int, k_q: int,
                        u_tag: str, extra_scale: Scalar | None = None,
                        canonical: bool = True) -> DecompositionWitness:
    """Module re-basing of a split adjoint factor against the quaternion
    factor: J is replaced by lam_hat E12 u c + E21 u^-1 c^-1 (matrix units
    from I, J), which squares to lam_hat = s lam / (u^2 c^2) and still
    anticommutes with I; the quaternion generators are conjugated on the
    E22 side.  canonical=True picks c = t^w so lam_hat is a unit;
    extra_scale dresses c for scrambling."""
    out = w.copy()
    _split_factor_shape(out, k_split)
    f = out.factors[k_split]
    q = out.factors[k_q]
    field = out.pres.field
    lam = f.alg.b
    qi, qj = q.gen_i, q.gen_j
    u_map = {"1": out.pres.one, "i": qi, "j": qj, "ij": qi * qj}
    U = u_map[u_tag]
    mu = (U * U).scalar_value()
    s = _theta_sign(U)
    if canonical:
        v1 = (lam * field.from_int(s) / mu).valuation().int_vec()
        if any(x % 2 for x in v1):
            raise ContractViolation("chosen line does not even out the valuation")
        c = field.monomial(tuple(x // 2 for x in v1))
    else:
        c = field.one
    if extra_scale is not None:
        if extra_scale.is_zero:
            raise DomainError("scale must be invertible")
        c = c * extra_scale
    lam_hat = lam * field.from_int(s) / (mu * c * c)
    I, J = f.gen_i, f.gen_j
    one = out.pres.one
    half = field.from_base(field.base.div(field.base.one, field.base.from_int(2)))
    e11 = (one + I).scale(half)
    e22 = (one - I).scale(half)
    e21 = J * e11
    e12 = (J * e22).scale(lam.inverse())
    u_inv = _gen_inverse(U)
    e12h = (e12 * U).scale(c)
    e21h = (e21 * u_inv).scale(c.inverse())
    j_new = e12h.scale(lam_hat) + e21h
    if (j_new * j_new) != out.pres.scalar_elem(lam_hat):
        raise ContractViolation("re-based generator square is off")
    if j_new.involution() != -j_new:
        raise ContractViolation("re-based generator lost its sign")
    out.factors[k_split] = _factor_from_images(out.pres, I, j_new)
    new_qi = e11 * qi + e22 * (u_inv * qi * U)
    new_qj = e11 * qj + e22 * (u_inv * qj * U)
    out.factors[k_q] = _factor_from_images(out.pres, new_qi, new_qj)
    out.verify()
    return out


@dataclass
class DescendQResult:
    witness: DecompositionWitness
    residue_split: ResidueSplit
    normalizations: list[HermitianNormalization]


def descend_q(w: DecompositionWitness) -> DescendQResult:
    """Descend a witness for S (x) (t1, t2): normalize each split factor's
    Hermitian scale against the quaternion factor, read the residue
    involution split, then project everything except the quaternion factor
    through the degree-0 residue and factor the orthogonal complement."""
    if w.pres.field.nvars != 2:
        raise DomainError("this descent expects a two-level tower")
    w.verify()
    out = w.copy()
    gauge = ArmatureGauge(out.pres)
    k_q = _q_factor_index(out, gauge)
    normalizations = []
    split_idx = [k for k in range(len(out.factors))
                 if k != k_q and is_split(out.factors[k].alg)]
    n_before = out.split_count()
    for k in split_idx:
        _split_factor_shape(out, k)
        f = out.factors[k]
        qf = out.factors[k_q]
        q_alg = QuaternionAlgebra(out.pres.field,
                                  (qf.gen_i * qf.gen_i).scalar_value(),
                                  (qf.gen_j * qf.gen_j).scalar_value())
        q_inv = Involution.from_signs(q_alg, _theta_sign(qf.gen_i),
                                      _theta_sign(qf.gen_j))
        norm = hermitian_unit_normalize(f.alg.b, q_alg, q_inv)
        normalizations.append(norm)
        out = rebase_split_factor(out, k, k_q, norm.u_tag)
        lam_hat = out.factors[k].alg.b
        if lam_hat.valuation() != GradeValue.zero(2):
            raise ContractViolation("normalized Hermitian scale is not a unit")
        if lam_hat.residue() != norm.lam0:
            raise ContractViolation("witness scale disagrees with normalization")
    rs = split_residue_involution_from_factors(out, k_q)
    res = kernel_and_residue(ArmatureGauge(out.pres))
    if res.radical_rank() != 0:
        raise ContractViolation("kernel pairing has a radical in the q descent")
    lowered_splits = [(_lower_factor(out.factors[k], res, fold=False), k)
                      for k in split_idx]
    e_lowered = [
        _lower_factor(out.factors[k], res, fold=False)
        for k in range(len(out.factors)) if k != k_q and k not in split_idx
    ]
    pres0 = res.residue_pres
    out_factors = [f for f, _ in lowered_splits] + e_lowered
    final = DecompositionWitness(pres0, out_factors)
    final.verify()
    if final.split_count() != n_before:
        raise ContractViolation("q descent changed the split count")
    return DescendQResult(final, rs, normalizations)


def split_residue_involution_from_factors(w: DecompositionWitness, k_q: int
                                          ) -> ResidueSplit:
    """The lemma's sign reading on a witness whose quaternion factor may
    have mixed-class generators: z1, z2 are the involution signs of the
    actual generator images."""
    qf = w.factors[k_q]
    z1, z2 = _theta_sign(qf.gen_i), _theta_sign(qf.gen_j)
    gauge = ArmatureGauge(w.pres)
    zero_mod = (0,) * w.pres.field.nvars
    theta0 = tuple(w.pres.sign(1 << k) for k in range(w.pres.ngens)
                   if gauge.grade_mod(1 << k) == zero_mod)
    return ResidueSplit(_U_TABLE[(z1, z2)], theta0, (), ())


def residue_descend(pres: ArmaturePresentation,
                    gauge: ArmatureGauge | None = None) -> DecompositionWitness:
    """Kernel, residue presentation, symplectic base, factorization: a
    quaternion decomposition of the degree-0 part with single-class
    generator witnesses."""
    gauge = gauge or ArmatureGauge(pres)
    res = kernel_and_residue(gauge)
    if res.radical:
        raise ContractViolation(
            f"restricted pairing is degenerate, radical {res.radical}")
    pres0 = res.residue_pres
    factors = [WitnessFactor(alg, invol, pres0.basis_elem(a), pres0.basis_elem(b))
               for alg, invol, a, b in factorize(pres0)]
    out = DecompositionWitness(pres0, factors)
    out.verify()
    return out


# -- scrambling ----------------------------------------------------------------


def _apply_basis_change(w: DecompositionWitness, basis: list[int]
                        ) -> DecompositionWitness:
    bm = rebase(w.pres, basis)
    factors = [WitnessFactor(f.alg, _clone_involution(f.invol),
                             bm.push(f.gen_i), bm.push(f.gen_j))
               for f in w.factors]
    return DecompositionWitness(bm.child, factors)


def _clone_involution(invol: Involution) -> Involution:
    return Involution(invol.alg, invol.twist)


def scramble_t(w: DecompositionWitness, rng: random.Random, moves: int = 10
               ) -> DecompositionWitness:
    """Seeded split-count-preserving moves over F((t)): random symplectic
    basis changes, bullet-ordered exchanges, and ramification injections
    (inverse exchanges) into factors with a trivial slot."""
    out = w.copy()
    for _ in range(moves):
        kind = rng.choice(("basis", "exchange", "ramify"))
        if kind == "exchange":
            bad = _ramified_indices(out)
            if len(bad) >= 2:
                k1, k2 = rng.sample(bad, 2)
                if not is_split(out.factors[k1].alg) and is_split(out.factors[k2].alg):
                    k1, k2 = k2, k1
                out = exchange_witness_pair(out, k1, k2)
                continue
            kind = "basis"
        if kind == "ramify":
            done = _try_ramify(out, rng)
            if done is not None:
                out = done
                continue
            kind = "basis"
        out = _apply_basis_change(out, random_symplectic_basis(out.pres, rng))
        out.verify()
    return out


def _try_ramify(w: DecompositionWitness, rng: random.Random
                ) -> DecompositionWitness | None:
    """Inverse exchange: (c1, 1) x (c2 t, d2) becomes ((c1/c2) t, 1) x
    (c2 t, d2) on new generators, spreading ramification while keeping
    every split verdict."""
    over = [k for k, f in enumerate(w.factors)
            if pair_defined_over_base(f.alg, f.invol)]
    ram = [k for k in _ramified_indices(w)]
    cands = []
    for k in over:
        f = w.factors[k]
        if f.invol.kind != "orthogonal":
            continue
        if f.alg.a.is_square() or f.alg.b.is_square():
            cands.append(k)
    if not cands or not ram:
        return None
    k1 = rng.choice(cands)
    k2 = rng.choice(ram)
    out = w.copy()
    f1 = out.factors[k1]
    # relabel so the square slot sits on j, then scale j^2 to exactly 1
    gi, gj = f1.gen_i, f1.gen_j
    if f1.alg.a.is_square():
        gi, gj = gj, gi
    root = (gj * gj).scalar_value().sqrt()
    if root is None:
        return None
    gj = gj.scale(root.inverse())
    out.factors[k1] = _factor_from_images(out.pres, gi, gj)
    realign_factor(out, k2)
    f1, f2 = out.factors[k1], out.factors[k2]
    t_elem = out.pres.field.monomial((1,))
    gi1 = (f1.gen_i * _gen_inverse(f2.gen_i)).scale(t_elem)
    gj1 = f1.gen_j
    gi2 = f2.gen_i
    gj2 = _gen_inverse(f1.gen_j) * f2.gen_j
    before = out.split_count()
    out.factors[k1] = _factor_from_images(out.pres, gi1, gj1)
    out.factors[k2] = _factor_from_images(out.pres, gi2, gj2)
    out.verify()
    if out.split_count() != before:
        raise ContractViolation("ramify move changed the split count")
    return out


def scramble_q(w: DecompositionWitness, rng: random.Random, moves: int = 10
               ) -> DecompositionWitness:
    """Seeded moves over F((t1))((t2)): basis changes and Hermitian
    dressings of split factors against the quaternion factor."""
    out = w.copy()
    gauge = ArmatureGauge(out.pres)
    for _ in range(moves):
        kind = rng.choice(("basis", "dress", "basis"))
        if kind == "dress":
            gauge = ArmatureGauge(out.pres)
            try:
                k_q = _q_factor_index(out, gauge)
            except ContractViolation:
                k_q = None
            splits = [k for k in range(len(out.factors))
                      if k != k_q and is_split(out.factors[k].alg)]
            if k_q is not None and splits:
                k = rng.choice(splits)
                tag = rng.choice(("1", "i", "j", "ij"))
                field = out.pres.field
                exps = (rng.randint(-1, 1), rng.randint(-1, 1))
                unit = field.one + field.gen(0) if rng.random() < 0.5 else field.one
                scale = field.monomial(exps) * unit
                out = rebase_split_factor(out, k, k_q, tag,
                                          extra_scale=scale, canonical=False)
                continue
        out = _apply_basis_change(out, random_symplectic_basis(out.pres, rng))
        out.verify()
    return out
