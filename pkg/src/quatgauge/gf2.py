"""Linear algebra over GF(2) on int bitmasks, plus symplectic Gram-Schmidt.

A vector in F_2^w is an int whose bit k is coordinate k.  Alternating
pairings are callables returning 0 or 1 (1 encodes the multiplicative
pairing value -1).
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .errors import DegeneratePairingError, DomainError


def echelon_basis(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis, pivots on the lowest set bit, sorted."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = _reduce(basis, v)
        if v:
            basis[v & -v] = v
    # back-substitute for the reduced form
    done: dict[int, int] = {}
    for piv in sorted(basis):
        v = basis[piv]
        for piv2, w in done.items():
            if v & piv2:
                v ^= w
        done[piv] = v
    for piv in list(done):
        v = done[piv]
        for piv2, w in done.items():
            if piv2 != piv and v & piv2:
                v ^= w
        done[piv] = v
    return sorted(done.values())


def _reduce(basis: dict[int, int], v: int) -> int:
    while v:
        low = v & -v
        if low in basis:
            v ^= basis[low]
        else:
            return v
    return 0


def in_span(basis: list[int], v: int) -> bool:
    table = {b & -b: b for b in basis}
    return _reduce(table, v) == 0


def coords_in_basis(basis: list[int], v: int) -> list[int] | None:
    """Coefficients of v over an independent basis, or None.  Runs tagged
    elimination so arbitrary independent sets work, not only ones with
    distinct low bits."""
    rows: dict[int, tuple[int, int]] = {}   # pivot -> (vector, tag)
    for i, b in enumerate(basis):
        vec, tag = b, 1 << i
        while vec:
            low = vec & -vec
            if low in rows:
                rv, rt = rows[low]
                vec ^= rv
                tag ^= rt
            else:
                rows[low] = (vec, tag)
                break
        else:
            raise DomainError("dependent basis")
    tag = 0
    while v:
        low = v & -v
        if low not in rows:
            return None
        rv, rt = rows[low]
        v ^= rv
        tag ^= rt
    return [tag >> i & 1 for i in range(len(basis))]


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(set(out))


def is_subgroup(classes: Iterable[int]) -> bool:
    s = set(classes)
    if 0 not in s:
        return False
    return all(a ^ b in s for a in s for b in s)


def symplectic_gram_schmidt(
    vectors: list[int],
    pair: Callable[[int, int], int],
) -> tuple[list[tuple[int, int]], list[int]]:
    """Split span(vectors) into hyperbolic pairs plus a radical.

    Tie-breaking is deterministic: the smallest remaining vector is taken
    first, its partner is the smallest pairing nontrivially with it.
    Returns (pairs, radical_basis).
    """
    work = echelon_basis(vectors)
    pairs: list[tuple[int, int]] = []
    radical: list[int] = []
    while work:
        a = work.pop(0)
        partner = None
        for idx, b in enumerate(work):
            if pair(a, b):
                partner = idx
                break
        if partner is None:
            radical.append(a)
            continue
        b = work.pop(partner)
        work = [u ^ (pair(u, b) and a) ^ (pair(u, a) and b) for u in work]
        # adjustments can create dependencies; re-echelon before recursing
        work = echelon_basis(work)
        pairs.append((a, b))
    return pairs, sorted(radical)


def symplectic_base_or_raise(
    vectors: list[int],
    pair: Callable[[int, int], int],
) -> list[tuple[int, int]]:
    pairs, radical = symplectic_gram_schmidt(vectors, pair)
    if radical:
        raise DegeneratePairingError(radical)
    return pairs


def transvection(v: int, x: int, pair: Callable[[int, int], int]) -> int:
    """Symplectic transvection x -> x + <x,v>v."""
    return x ^ (pair(x, v) and v)


def popcount_bits(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out
