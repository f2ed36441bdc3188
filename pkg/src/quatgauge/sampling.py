"""Seeded random generators for property checks.

Every function takes an explicit random.Random, so a run's seed fully
determines all sampled data.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .armature import ArmatureElement, ArmaturePresentation
from .gf2 import transvection
from .scalars import LaurentField, Scalar


def random_monomial(field: LaurentField, rng: random.Random,
                    maxdeg: int = 2, allow_negative_exps: bool = False) -> Scalar:
    lo = -maxdeg if allow_negative_exps else 0
    exps = tuple(rng.randint(lo, maxdeg) for _ in range(field.nvars))
    coeff = rng.choice((1, -1)) * rng.randint(1, 9)
    return field.monomial(exps, field.base.from_int(coeff))


def random_scalar(field: LaurentField, rng: random.Random,
                  maxdeg: int = 3, terms: int = 3) -> Scalar:
    """Random nonzero ratio of small sparse polynomials."""
    def poly():
        p = field.zero
        for _ in range(rng.randint(1, terms)):
            exps = tuple(rng.randint(0, maxdeg) for _ in range(field.nvars))
            p = p + field.monomial(exps, field.base.from_int(rng.randint(-9, 9)))
        return p
    num = poly()
    while num.is_zero:
        num = poly()
    den = poly()
    while den.is_zero:
        den = poly()
    return num / den


def random_element(pres: ArmaturePresentation, rng: random.Random,
                   size: int = 3, maxdeg: int = 2) -> ArmatureElement:
    coeffs = {}
    for _ in range(max(1, size)):
        a = rng.randrange(pres.group_order)
        coeffs[a] = random_monomial(pres.field, rng, maxdeg)
    return pres.element(coeffs)


def random_symplectic_basis(pres: ArmaturePresentation, rng: random.Random,
                            moves: int = 8) -> list[int]:
    """Image of the standard basis under random symplectic transvections
    of the presentation's own pairing."""
    basis = [1 << k for k in range(pres.ngens)]
    for _ in range(moves):
        v = rng.randrange(1, pres.group_order)
        basis = [transvection(v, x, pres.pair_bit) for x in basis]
    return basis
