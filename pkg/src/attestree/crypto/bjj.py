"""Twisted Edwards curve embedded in the proof system's scalar field.

This is the standard "Baby Jubjub" curve a*x^2 + y^2 = 1 + d*x^2*y^2 over
the BN254 group order, so that native point arithmetic and in-circuit
point arithmetic happen in the same field.  All signature material lives
in the prime-order subgroup generated by ``BASE``.

Points are affine ``(x, y)`` int tuples; the identity is ``(0, 1)``.
"""

from __future__ import annotations

import gmpy2

from ..snark.field import R

A = 168700
D = 168696

# Subgroup order: curve order is 8 * L.
L = 2736030358979909402780800718157159386076813972158567259200215660948447373041
COFACTOR = 8

# Generator of the order-L subgroup.
BASE = (
    5299619240641551281634865583518297030282874472190772894086521144482721001553,
    16950150798460657717958625567821834550301663161624707787222815936182638968203,
)

IDENTITY = (0, 1)

Point = tuple[int, int]

_R = gmpy2.mpz(R)


def is_on_curve(p: Point) -> bool:
    x, y = p
    x2 = x * x % R
    y2 = y * y % R
    return (A * x2 + y2) % R == (1 + D * x2 % R * y2) % R


def add(p: Point, q: Point) -> Point:
    # Complete formulas: A is a square and D a non-square mod R, so the
    # denominators never vanish on curve points.
    x1, y1 = p
    x2, y2 = q
    x1x2 = x1 * x2 % R
    y1y2 = y1 * y2 % R
    dxy = D * x1x2 % R * y1y2 % R
    x3 = (x1 * y2 + y1 * x2) % R * int(gmpy2.invert(1 + dxy, _R)) % R
    y3 = (y1y2 - A * x1x2) % R * int(gmpy2.invert(1 - dxy, _R)) % R
    return (x3, y3)


def neg(p: Point) -> Point:
    return (-p[0] % R, p[1])


def mul(p: Point, k: int) -> Point:
    result = IDENTITY
    base = p
    while k:
        if k & 1:
            result = add(result, base)
        base = add(base, base)
        k >>= 1
    return result


def in_subgroup(p: Point) -> bool:
    return is_on_curve(p) and mul(p, L) == IDENTITY


def compress(p: Point) -> bytes:
    """32 bytes: big-endian y with the parity of x in the top bit."""
    x, y = p
    flag = (x & 1) << 255
    return (y | flag).to_bytes(32, "big")


def _sqrt(n: int) -> int | None:
    """Tonelli-Shanks square root mod R; None if n is a non-residue."""
    n %= R
    if n == 0:
        return 0
    if gmpy2.powmod(n, (R - 1) // 2, _R) != 1:
        return None
    # R - 1 = 2^28 * q
    q = (R - 1) >> 28
    s = 28
    z = 5  # fixed non-residue for R (checked at import)
    m = s
    c = gmpy2.powmod(z, q, _R)
    t = gmpy2.powmod(n, q, _R)
    root = gmpy2.powmod(n, (q + 1) // 2, _R)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % _R
            i += 1
        b = gmpy2.powmod(c, 1 << (m - i - 1), _R)
        m = i
        c = b * b % _R
        t = t * c % _R
        root = root * b % _R
    return int(root)


def decompress(data: bytes) -> Point | None:
    """Inverse of :func:`compress`; None for anything that is not a valid
    on-curve encoding."""
    if len(data) != 32:
        return None
    raw = int.from_bytes(data, "big")
    parity = raw >> 255
    y = raw & ((1 << 255) - 1)
    if y >= R:
        return None
    y2 = y * y % R
    denom = (A - D * y2) % R
    if denom == 0:
        return None
    x2 = (1 - y2) % R * int(gmpy2.invert(denom, _R)) % R
    x = _sqrt(x2)
    if x is None:
        return None
    if x & 1 != parity:
        x = (-x) % R
    if x & 1 != parity:  # x == 0 with parity 1 requested
        return None
    return (x, y)


def _selfcheck() -> None:
    assert gmpy2.powmod(5, (R - 1) // 2, _R) == R - 1, "5 must be a non-residue"
    assert gmpy2.powmod(A, (R - 1) // 2, _R) == 1, "A must be a square (complete addition)"
    assert gmpy2.powmod(D, (R - 1) // 2, _R) == R - 1, "D must be a non-square (complete addition)"
    assert is_on_curve(BASE)
    assert mul(BASE, L) == IDENTITY
    # Hasse bound for the full curve order
    import math
    assert abs(8 * L - (R + 1)) <= 2 * math.isqrt(R) + 1


_selfcheck()
