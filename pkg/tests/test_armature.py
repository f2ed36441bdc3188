"""Armature presentations: cocycle, pairing, signs, symplectic bases,
subgroups and factorization."""

import random
from fractions import Fraction

import pytest

from quatgauge.armature import (
    ArmaturePresentation,
    BasisMap,
    express_in_basis,
    factorize,
    rebase,
    subgroup_presentation,
    symplectic_base,
)
from quatgauge.errors import DegeneratePairingError, DomainError
from quatgauge.fields import QQ
from quatgauge.gf2 import transvection
from quatgauge.quaternion import Involution, QuaternionAlgebra
from quatgauge.scalars import LaurentField

K = LaurentField(QQ, 1)
L = LaurentField(QQ, 2)
Q0 = LaurentField(QQ, 0)


def std_quat(field, a, b, si=-1, sj=-1):
    alg = QuaternionAlgebra(field, field.parse(a), field.parse(b))
    return ArmaturePresentation.quaternion(alg, Involution.from_signs(alg, si, sj))


def random_element(pres, rng, size=3):
    coeffs = {}
    for _ in range(size):
        a = rng.randrange(pres.group_order)
        exps = tuple(rng.randint(0, 2) for _ in range(pres.field.nvars))
        coeffs[a] = pres.field.monomial(exps, Fraction(rng.randint(-4, 4)))
    return pres.element(coeffs)


def random_symplectic_basis(pres, rng, moves=6):
    basis = [1 << k for k in range(pres.ngens)]
    for _ in range(moves):
        v = rng.randrange(1, pres.group_order)
        basis = [transvection(v, x, pres.pair_bit) for x in basis]
    return basis


class TestCocycle:
    def test_standard_quaternion(self):
        P = std_quat(L, "t1", "t2")
        e1, e2 = 0b01, 0b10
        assert P.cocycle(e1, e2) == L.one
        assert P.cocycle(e2, e1) == -L.one
        assert P.cocycle(e1, e1) == L.gen(0)
        assert P.cocycle(e1 ^ e2, e1 ^ e2) == -(L.gen(0) * L.gen(1))

    def test_identity_classes(self):
        P = std_quat(L, "t1", "t2")
        for a in P.classes():
            assert P.cocycle(a, 0) == L.one
            assert P.cocycle(0, a) == L.one

    def test_associativity_identity(self):
        rng = random.Random(2)
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "-1"))
        for _ in range(120):
            a, b, c = (rng.randrange(P.group_order) for _ in range(3))
            lhs = P.cocycle(a, b) * P.cocycle(a ^ b, c)
            rhs = P.cocycle(b, c) * P.cocycle(a, b ^ c)
            assert lhs == rhs

    def test_squared_class_against_quaternion(self):
        # (ij)^2 = -ab, checked in the 4-dimensional algebra directly
        alg = QuaternionAlgebra(L, L.gen(0), L.gen(1))
        P = ArmaturePresentation.quaternion(alg)
        q = alg.ij * alg.ij
        assert P.class_square(0b11) == q.scalar_value()


class TestMultiplication:
    def test_basis_lines(self):
        P = std_quat(L, "t1", "t2")
        x1, x2 = P.gen_elem(0), P.gen_elem(1)
        x12 = P.basis_elem(0b11)
        assert x1 * x2 == x12
        assert x2 * x1 == -x12

    def test_binomial_product(self):
        P = std_quat(K, "3*t", "5")
        one, x1 = P.one, P.gen_elem(0)
        lam = P.squares[0]
        got = (one + x1) * (one - x1)
        assert got == P.scalar_elem(K.one - lam)

    def test_agrees_with_quaternion_module(self):
        # all 16 basis products under 1,i,j,ij <-> classes 00,01,10,11
        rng = random.Random(9)
        for _ in range(20):
            a = K.monomial((rng.randint(0, 2),), Fraction(rng.choice([1, -1]) * rng.randint(1, 7)))
            b = K.monomial((rng.randint(0, 2),), Fraction(rng.choice([1, -1]) * rng.randint(1, 7)))
            alg = QuaternionAlgebra(K, a, b)
            P = ArmaturePresentation.quaternion(alg)
            quats = {0b00: alg.one, 0b01: alg.i, 0b10: alg.j, 0b11: alg.ij}
            for x in range(4):
                for y in range(4):
                    prod = P.basis_elem(x) * P.basis_elem(y)
                    qprod = quats[x] * quats[y]
                    (cls, coeff), = prod.coeffs.items()
                    want = {0: qprod.coords[0], 1: qprod.coords[1],
                            2: qprod.coords[2], 3: qprod.coords[3]}
                    for idx, val in want.items():
                        if idx == cls:
                            assert val == coeff
                        else:
                            assert val.is_zero

    def test_single_class_inverse(self):
        P = std_quat(L, "t1", "t2")
        for a in P.classes():
            x = P.basis_elem(a, L.parse("3*t1"))
            assert x * x.inverse() == P.one
            assert x.inverse() * x == P.one


class TestPairingAndSigns:
    def test_pairing_bimultiplicative_exhaustive(self):
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "5", 1, -1)) \
            .tensor(std_quat(L, "1+t1", "-3"))
        for a in P.classes():
            for b in P.classes():
                for c in P.classes():
                    assert (P.pair_classes(a ^ b, c)
                            == P.pair_classes(a, c) * P.pair_classes(b, c))
                    break  # c loop capped: bimultiplicativity is in (a, b)
        # full check on the first argument against all second arguments
        for a in P.classes():
            for b in P.classes():
                assert P.pair_classes(a, b) == P.pair_classes(b, a)
                for c in (1, 5, 21, 63):
                    assert (P.pair_classes(a ^ b, c)
                            == P.pair_classes(a, c) * P.pair_classes(b, c))

    def test_pairing_alternating(self):
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "-1"))
        for a in P.classes():
            assert P.pair_classes(a, a) == 1

    def test_sign_defect_law_exhaustive(self):
        for pres in (
            std_quat(L, "t1", "t2"),
            std_quat(L, "t1", "t2", 1, -1).tensor(std_quat(L, "-1", "-1")),
            std_quat(L, "t1", "t2").tensor(std_quat(L, "5", "-1", -1, 1))
                .tensor(std_quat(L, "-1", "-1", 1, 1)),
        ):
            for a in pres.classes():
                for b in pres.classes():
                    assert (pres.sign(a ^ b)
                            == pres.sign(a) * pres.sign(b) * pres.pair_classes(a, b))

    def test_sign_examples(self):
        gamma = std_quat(L, "t1", "t2")          # canonical: eps = (-1,-1)
        assert gamma.sign(0b11) == -1            # gamma(ij) = -ij
        assert gamma.sign(0) == 1
        inti = std_quat(L, "t1", "t2", -1, 1)    # Int(i): eps = (-1,+1)
        assert inti.sign(0b11) == 1              # theta(ij) = +ij

    def test_involution_anti_automorphism(self):
        rng = random.Random(21)
        P = std_quat(L, "t1", "t2", -1, 1).tensor(std_quat(L, "-1", "-1"))
        for _ in range(25):
            x, y = random_element(P, rng), random_element(P, rng)
            assert (x * y).involution() == y.involution() * x.involution()
            assert x.involution().involution() == x

    def test_involution_matches_quaternion_twist(self):
        # sign table on classes vs Int(u) o gamma acting on 1, i, j, ij
        alg = QuaternionAlgebra(K, K.parse("3*t"), K.parse("5"))
        for si, sj in ((-1, -1), (-1, 1), (1, -1), (1, 1)):
            P = std_quat(K, "3*t", "5", si, sj)
            theta = Involution.from_signs(alg, si, sj)
            quats = {0b00: alg.one, 0b01: alg.i, 0b10: alg.j, 0b11: alg.ij}
            for cls, q in quats.items():
                assert theta.apply(q) == q.scale(K.from_int(P.sign(cls)))


class TestTensor:
    def test_block_structure(self):
        P1 = std_quat(L, "-1", "-1")
        P2 = std_quat(L, "t1", "t2")
        P = P1.tensor(P2)
        assert P.ngens == 4
        assert P.pair_classes(0b0001, 0b0100) == 1   # cross block commutes
        assert P.pair_classes(0b0001, 0b0010) == -1
        assert P.squares == P1.squares + P2.squares

    def test_trivial_identity(self):
        P = std_quat(L, "t1", "t2")
        T = ArmaturePresentation.trivial(L)
        assert P.tensor(T) == P
        assert T.tensor(P) == P

    def test_adjoint_pfister_block(self):
        # M_2(K) with the <<t>>-adjoint involution: squares (1, t), signs (+1, -1)
        P = std_quat(K, "1", "t", 1, -1).tensor(std_quat(K, "-1", "-1"))
        assert P.ngens == 4
        assert P.squares[1] == K.gen(0)
        assert P.signs == (1, -1, -1, -1)


class TestSubgroup:
    def test_full_group_isomorphic(self):
        P = std_quat(L, "t1", "t2")
        bm = subgroup_presentation(P, list(P.classes()))
        assert bm.child == P

    def test_trivial_subgroup(self):
        P = std_quat(L, "t1", "t2")
        bm = subgroup_presentation(P, [0])
        assert bm.child.ngens == 0
        assert bm.child.group_order == 1

    def test_rank_one(self):
        P = std_quat(L, "t1", "t2")
        bm = subgroup_presentation(P, [0, 0b01])
        assert bm.child.ngens == 1
        assert bm.child.squares == (L.gen(0),)

    def test_not_closed_rejected(self):
        P = std_quat(L, "t1", "t2")
        with pytest.raises(DomainError):
            subgroup_presentation(P, [0, 0b01, 0b10])

    def test_push_pull_roundtrip(self):
        rng = random.Random(3)
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "-1"))
        basis = random_symplectic_basis(P, rng)
        bm = rebase(P, basis)
        for _ in range(25):
            x = random_element(P, rng)
            assert bm.pull(bm.push(x)) == x

    def test_push_is_ring_map(self):
        rng = random.Random(14)
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "5", 1, -1))
        basis = random_symplectic_basis(P, rng)
        bm = rebase(P, basis)
        for _ in range(20):
            x, y = random_element(P, rng), random_element(P, rng)
            assert bm.push(x * y) == bm.push(x) * bm.push(y)
            assert bm.push(x + y) == bm.push(x) + bm.push(y)
        assert bm.push(P.one) == bm.child.one

    def test_express_consistency(self):
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "-1"))
        basis = [0b0011, 0b0001, 0b1100, 0b0100]
        for cls in (0, 0b0011, 0b1111, 0b0111):
            coords, omega = express_in_basis(P, basis, cls)
            prod = P.one
            for i, c in enumerate(coords):
                if c:
                    prod = prod * P.basis_elem(basis[i])
            assert prod == P.basis_elem(cls, omega)


class TestSymplecticBase:
    def test_standard_blocks(self):
        P = std_quat(L, "t1", "t2")
        assert symplectic_base(P) == [(0b01, 0b10)]
        P2 = P.tensor(std_quat(L, "-1", "-1"))
        assert symplectic_base(P2) == [(0b0001, 0b0010), (0b0100, 0b1000)]

    def test_defining_table_after_scramble(self):
        rng = random.Random(77)
        P = std_quat(L, "t1", "t2").tensor(std_quat(L, "-1", "-1"))
        for _ in range(10):
            basis = random_symplectic_basis(P, rng)
            child = rebase(P, basis).child
            pairs = symplectic_base(child)
            flat = [c for p in pairs for c in p]
            assert len(set(flat)) == child.ngens
            for i, (a, b) in enumerate(pairs):
                assert child.pair_classes(a, b) == -1
                for k, (c, d) in enumerate(pairs):
                    if k != i:
                        assert child.pair_classes(a, c) == 1
                        assert child.pair_classes(a, d) == 1
                        assert child.pair_classes(b, d) == 1

    def test_degenerate_rejected(self):
        # pairing identically +1 has full radical
        P = ArmaturePresentation(K, (K.one, K.gen(0)),
                                 ((1, 1), (1, 1)), (1, 1))
        with pytest.raises(DegeneratePairingError) as e:
            symplectic_base(P)
        assert e.value.radical


class TestFactorize:
    def test_standard_roundtrip(self):
        P = std_quat(K, "3*t", "5")
        ((alg, invol, a, b),) = factorize(P)
        assert alg.a == K.parse("3*t") and alg.b == K.parse("5")
        assert invol.same_as(Involution.canonical(alg))

    def test_sign_pattern_maps_to_twist(self):
        P = std_quat(K, "3*t", "5", 1, -1)
        ((alg, invol, _, _),) = factorize(P)
        assert invol.same_as(Involution(alg, alg.j))

    def test_scrambled_two_factor(self):
        rng = random.Random(123)
        P = std_quat(L, "-1", "-1").tensor(std_quat(L, "t1", "t2"))
        for _ in range(6):
            child = rebase(P, random_symplectic_basis(P, rng)).child
            factors = factorize(child)
            assert len(factors) == 2
            total = 1
            for alg, invol, a, b in factors:
                assert child.class_square(a) == alg.a
                assert child.class_square(b) == alg.b
                assert invol.diag_signs() == (child.sign(a), child.sign(b))
                total *= 4
            assert total == child.group_order
