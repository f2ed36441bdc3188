"""Armature gauges: grade tables, axioms, kernels, residues, degree-0
structure."""

import random
from fractions import Fraction

import pytest

from quatgauge.armature import ArmaturePresentation, rebase
from quatgauge.errors import ContractViolation, DomainError
from quatgauge.fields import QQ
from quatgauge.gauge import (
    ArmatureGauge,
    check_semisimple_degree0,
    check_special,
    check_surmultiplicative,
    find_central_idempotent,
    kernel_and_residue,
    semisimple_from_table,
)
from quatgauge.quaternion import Involution, QuaternionAlgebra
from quatgauge.sampling import random_element, random_symplectic_basis
from quatgauge.scalars import GradeValue, LaurentField

K = LaurentField(QQ, 1)
L = LaurentField(QQ, 2)


def std_quat(field, a, b, si=-1, sj=-1):
    alg = QuaternionAlgebra(field, field.parse(a), field.parse(b))
    return ArmaturePresentation.quaternion(alg, Involution.from_signs(alg, si, sj))


def q_presentation():
    return std_quat(L, "t1", "t2")


def s2_presentation():
    """(-1,-1) x (t1,t2) with gamma x gamma."""
    return std_quat(L, "-1", "-1").tensor(std_quat(L, "t1", "t2"))


def s1_presentation():
    """(-1,-1) x Ad<<t>> over Q((t)): squares (-1,-1,1,t)."""
    return std_quat(K, "-1", "-1").tensor(std_quat(K, "1", "t", 1, -1))


class TestGradeTable:
    def test_quaternion_lines(self):
        G = ArmatureGauge(q_presentation())
        assert G.grade(0) == GradeValue.zero(2)
        assert G.grade(0b01) == GradeValue((Fraction(1, 2), 0))
        assert G.grade(0b10) == GradeValue((0, Fraction(1, 2)))
        assert G.grade(0b11) == GradeValue((Fraction(1, 2), Fraction(1, 2)))

    def test_eval_rules(self):
        P = q_presentation()
        G = ArmatureGauge(P)
        assert G.eval(P.element({})).is_infinity
        assert G.eval(P.one) == GradeValue.zero(2)
        x = P.basis_elem(0b01)
        c = L.parse("3*t2^2")
        assert G.eval(x.scale(c)) == c.valuation() + G.grade(0b01)
        rng = random.Random(1)
        for _ in range(50):
            y, z = random_element(P, rng), random_element(P, rng)
            s = y + z
            if not s.is_zero:
                assert G.eval(s) >= min(G.eval(y), G.eval(z))

    def test_gauge_vs_reduced_norm_on_lines(self):
        # gauge of a single-class element equals v(Nrd)/2 in the algebra
        alg = QuaternionAlgebra(L, L.gen(0), L.gen(1))
        P = ArmaturePresentation.quaternion(alg)
        G = ArmatureGauge(P)
        quats = {0b00: alg.one, 0b01: alg.i, 0b10: alg.j, 0b11: alg.ij}
        rng = random.Random(2)
        for cls, q in quats.items():
            assert G.grade(cls) == q.nrd().valuation().half()
            for _ in range(20):
                exps = (rng.randint(-2, 2), rng.randint(-2, 2))
                c = L.monomial(exps, Fraction(rng.choice([1, -1]) * rng.randint(1, 9)))
                assert (G.eval(P.basis_elem(cls, c))
                        == q.scale(c).nrd().valuation().half())

    def test_grade_homomorphism_mod_lattice(self):
        for P in (q_presentation(), s2_presentation(),
                  s2_presentation().tensor(std_quat(L, "-3", "5", 1, -1))):
            G = ArmatureGauge(P)
            for a in P.classes():
                for b in P.classes():
                    lhs = (G.grade(a) + G.grade(b)).mod_lattice()
                    assert lhs == G.grade(a ^ b).mod_lattice()


class TestAxiomChecks:
    def test_surmultiplicative_exhaustive_and_sampled(self):
        for P in (q_presentation(), s2_presentation(), s1_presentation()):
            G = ArmatureGauge(P)
            rep = check_surmultiplicative(G, random.Random(3), samples=100)
            assert rep.ok, rep.violations

    def test_class_equality_case(self):
        P = q_presentation()
        G = ArmatureGauge(P)
        x = P.gen_elem(0)
        assert G.eval(x * x) == G.grade(0b01).double()

    def test_special_and_invariant(self):
        for P in (s2_presentation(), s1_presentation()):
            G = ArmatureGauge(P)
            rep = check_special(G, random.Random(4), samples=100)
            assert rep.ok, rep.violations

    def test_reports_serialize(self):
        G = ArmatureGauge(q_presentation())
        d = check_surmultiplicative(G).to_dict()
        assert d["ok"] and d["checked"] == 16


class TestKernelResidue:
    def test_s2_kernel_is_constant_part(self):
        P = s2_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        assert res.kernel_order == 4
        assert res.kernel_order * res.image_size == P.group_order
        assert sorted(res.kernel) == [0, 0b0001, 0b0010, 0b0011]
        assert res.radical_rank() == 0
        # residue presentation is (-1,-1) with the canonical involution
        E = std_quat(LaurentField(QQ, 0), "-1", "-1")
        assert res.residue_pres == E

    def test_s1_kernel_has_radical(self):
        P = s1_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        assert res.kernel_order == 8
        assert res.radical_rank() == 1
        # the class of the adjoint factor's grade-0 generator is radical
        assert res.radical == [0b0100]
        sq = res.residue_pres.squares[-1]
        assert sq == res.residue_field.one

    def test_cardinality_law_random_scrambles(self):
        rng = random.Random(5)
        base = s2_presentation()
        for _ in range(6):
            P = rebase(base, random_symplectic_basis(base, rng)).child
            res = kernel_and_residue(ArmatureGauge(P))
            assert res.kernel_order * res.image_size == P.group_order

    def test_projection_is_multiplicative_on_degree0(self):
        P = s2_presentation()
        G = ArmatureGauge(P)
        res = kernel_and_residue(G)
        rng = random.Random(6)
        zero = GradeValue.zero(2)
        for _ in range(30):
            # build degree-0 elements supported on the kernel
            x = P.element({a: L.from_int(rng.randint(-4, 4)) for a in res.kernel})
            y = P.element({a: L.from_int(rng.randint(-4, 4)) for a in res.kernel})
            if x.is_zero or y.is_zero:
                continue
            assert G.eval(x) == zero
            assert res.project(x * y) == res.project(x) * res.project(y)

    def test_projection_rejects_negative_gauge(self):
        P = s2_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        bad = P.basis_elem(0, L.parse("1/t1"))
        with pytest.raises(ContractViolation):
            res.project(bad)

    def test_projection_drops_positive_grades(self):
        P = s2_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        x = P.element({0: L.one, 0b0100: L.one})   # 1 + (grade 1/2 line)
        assert res.project(x) == res.residue_pres.one


class TestDegreeZeroStructure:
    def test_s2_semisimple(self):
        res = kernel_and_residue(ArmatureGauge(s2_presentation()))
        assert check_semisimple_degree0(res)

    def test_nilpotent_table_detected(self):
        # F[x]/(x^2) handed in directly as a multiplication table
        def mul(a, b):
            if a == 0 or b == 0:
                return {a + b: Fraction(1)}
            return {}
        assert not semisimple_from_table(2, mul, QQ)

    def test_split_etale_table(self):
        # F[x]/(x^2 - 1) ~ F x F is semisimple
        def mul(a, b):
            return {(a + b) % 2: Fraction(1)}
        assert semisimple_from_table(2, mul, QQ)

    def test_s1_residue_nonsimple_with_idempotent(self):
        res = kernel_and_residue(ArmatureGauge(s1_presentation()))
        assert check_semisimple_degree0(res)
        e = find_central_idempotent(res)
        assert e is not None
        assert e * e == e
        assert e != res.residue_pres.one
        assert not e.is_zero

    def test_s2_residue_has_no_idempotent(self):
        res = kernel_and_residue(ArmatureGauge(s2_presentation()))
        assert find_central_idempotent(res) is None


class TestRadicalFold:
    def test_fold_is_algebra_map(self):
        P = s1_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        rng = random.Random(9)
        pres0 = res.residue_pres
        for _ in range(25):
            x = pres0.element({a: res.residue_field.from_int(rng.randint(-4, 4))
                               for a in range(pres0.group_order)})
            y = pres0.element({a: res.residue_field.from_int(rng.randint(-4, 4))
                               for a in range(pres0.group_order)})
            assert res.fold_radical(x * y) == res.fold_radical(x) * res.fold_radical(y)
        assert res.fold_radical(pres0.one) == res.symplectic_part().one

    def test_fold_recovers_first_factor(self):
        P = s1_presentation()
        res = kernel_and_residue(ArmatureGauge(P))
        W = res.symplectic_part()
        assert W.squares == (res.residue_field.from_int(-1),) * 2
        assert W.signs == (-1, -1)
