"""Scalar-field arithmetic and radix-2 NTT for the proof system.

The proving field is the BN254 scalar field (group order of the pairing
curve).  Elements are plain Python ints reduced mod ``R``; hot paths go
through gmpy2 for the ~2.5x speedup over CPython big-int arithmetic.
"""

from __future__ import annotations

import gmpy2

# BN254 / alt_bn128 group order (the circuit field).
R = 21888242871839275222246405745257275088548364400416034343698204186575808495617
_R = gmpy2.mpz(R)

# r - 1 = 2^TWO_ADICITY * odd
TWO_ADICITY = 28

_root_cache: dict[int, int] = {}
_twiddle_cache: dict[tuple[int, bool], list[int]] = {}


def inv(a: int) -> int:
    """Multiplicative inverse mod R. Raises ZeroDivisionError on 0."""
    return int(gmpy2.invert(a, _R))


def batch_inv(values: list[int]) -> list[int]:
    """Montgomery batch inversion; every input must be nonzero."""
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = gmpy2.mpz(1)
    for i, v in enumerate(values):
        prefix[i] = acc
        acc = acc * v % _R
    acc = gmpy2.invert(acc, _R)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = int(prefix[i] * acc % _R)
        acc = acc * values[i] % _R
    return out


def _find_2adic_root() -> int:
    """Smallest-candidate element of exact order 2^TWO_ADICITY in F_R*."""
    odd = (R - 1) >> TWO_ADICITY
    for g in range(2, 100):
        c = gmpy2.powmod(g, odd, _R)
        if gmpy2.powmod(c, 1 << (TWO_ADICITY - 1), _R) != 1:
            return int(c)
    raise RuntimeError("no 2-adic root found")  # pragma: no cover


def root_of_unity(order: int) -> int:
    """Primitive root of unity of the given power-of-two order."""
    if order & (order - 1):
        raise ValueError(f"order {order} is not a power of two")
    log = order.bit_length() - 1
    if log > TWO_ADICITY:
        raise ValueError(f"domain 2^{log} exceeds field 2-adicity {TWO_ADICITY}")
    if log not in _root_cache:
        base = _find_2adic_root()
        _root_cache[log] = int(gmpy2.powmod(base, 1 << (TWO_ADICITY - log), _R))
    return _root_cache[log]


def _twiddles(n: int, inverse: bool) -> list[int]:
    key = (n, inverse)
    tw = _twiddle_cache.get(key)
    if tw is None:
        w = gmpy2.mpz(root_of_unity(n))
        if inverse:
            w = gmpy2.invert(w, _R)
        tw = [gmpy2.mpz(1)] * (n // 2)
        for i in range(1, n // 2):
            tw[i] = tw[i - 1] * w % _R
        _twiddle_cache[key] = tw
    return tw


def ntt(values: list[int], inverse: bool = False) -> list[int]:
    """In-place-style radix-2 NTT over F_R; len(values) must be a power of 2.

    Forward maps coefficients to evaluations over the 2^k domain; inverse
    undoes it (including the 1/n scaling).
    """
    n = len(values)
    if n & (n - 1):
        raise ValueError("NTT size must be a power of two")
    if n == 1:
        return list(values)
    a = [gmpy2.mpz(v) for v in values]
    # bit-reversal permutation
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    tw = _twiddles(n, inverse)
    length = 2
    while length <= n:
        half = length >> 1
        step = n // length
        for start in range(0, n, length):
            idx = 0
            for k in range(start, start + half):
                u = a[k]
                v = a[k + half] * tw[idx] % _R
                a[k] = (u + v) % _R
                a[k + half] = (u - v) % _R
                idx += step
        length <<= 1
    if inverse:
        n_inv = gmpy2.invert(n, _R)
        return [int(x * n_inv % _R) for x in a]
    return [int(x) for x in a]


def powers(base: int, count: int) -> list[int]:
    """[1, base, base^2, ...] of the requested length, mod R."""
    out = [1] * count
    b = gmpy2.mpz(base)
    acc = gmpy2.mpz(1)
    for i in range(1, count):
        acc = acc * b % _R
        out[i] = int(acc)
    return out
