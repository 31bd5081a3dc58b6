"""Poseidon permutation and sponge over the proof-system scalar field.

Used as the signature challenge hash (cheap to verify inside the circuit)
and optionally as the algebraic reference-hash mode.  One fixed instance:
width 5 (rate 4, capacity 1), x^5 s-box, 8 full + 60 partial rounds.

Round constants are nothing-up-my-sleeve values expanded from SHA-256;
the MDS matrix is the Cauchy matrix 1/(x_i + y_j) with x_i = i,
y_j = WIDTH + j, which is invertible over a prime field.  The circuit
gadget mirrors this exact instance, so the two sides agree by sharing
these tables.
"""

from __future__ import annotations

import hashlib

import gmpy2

from ..snark.field import R

WIDTH = 5
RATE = 4
FULL_ROUNDS = 8
PARTIAL_ROUNDS = 60

_R = gmpy2.mpz(R)


def _constant_stream(label: str, count: int) -> list[int]:
    out = []
    ctr = 0
    bound = (1 << 256) - (1 << 256) % R
    while len(out) < count:
        h = hashlib.sha256(f"attestree/poseidon-v1/{label}/{ctr}".encode()).digest()
        v = int.from_bytes(h, "big")
        if v < bound:  # rejection sampling: uniform mod R
            out.append(v % R)
        ctr += 1
    return out


ROUND_CONSTANTS = _constant_stream("rc", (FULL_ROUNDS + PARTIAL_ROUNDS) * WIDTH)

MDS = [
    [int(gmpy2.invert(i + WIDTH + j, _R)) for j in range(WIDTH)]
    for i in range(WIDTH)
]


def _sbox(x: int) -> int:
    x2 = x * x % R
    return x2 * x2 % R * x % R


def permutation(state: list[int]) -> list[int]:
    if len(state) != WIDTH:
        raise ValueError(f"state width must be {WIDTH}")
    s = [x % R for x in state]
    half = FULL_ROUNDS // 2
    rc = iter(ROUND_CONSTANTS)
    for rnd in range(FULL_ROUNDS + PARTIAL_ROUNDS):
        s = [(x + next(rc)) % R for x in s]
        if rnd < half or rnd >= half + PARTIAL_ROUNDS:
            s = [_sbox(x) for x in s]
        else:
            s[0] = _sbox(s[0])
        s = [sum(MDS[i][j] * s[j] for j in range(WIDTH)) % R for i in range(WIDTH)]
    return s


# Capacity IV separates sponge uses and binds the input length.
_IV_BASE = int.from_bytes(hashlib.sha256(b"attestree/poseidon-v1/iv").digest(), "big") % R


def sponge_iv(domain: int, length: int) -> int:
    return (_IV_BASE + domain + (length << 64)) % R


def digest(inputs: list[int], domain: int = 0) -> int:
    """Fixed-length sponge hash of field elements; one field element out."""
    state = [0] * RATE + [sponge_iv(domain, len(inputs))]
    chunks = [inputs[i: i + RATE] for i in range(0, len(inputs), RATE)] or [[]]
    for chunk in chunks:
        for i, v in enumerate(chunk):
            state[i] = (state[i] + v) % R
        state = permutation(state)
    return state[0]
