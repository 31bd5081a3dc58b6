"""Constraint gadgets: booleans, range checks, embedded-curve and hash ops.

Gadget functions take the constraint system plus linear combinations and
return linear combinations.  When the system carries witness values the
gadgets compute assignments as they go; the computations are total, so a
corrupted witness still produces a full (unsatisfying) assignment rather
than an exception.
"""

from __future__ import annotations

import gmpy2

from ..crypto import bjj, poseidon
from ..crypto.encoding import SPONGE_CHALLENGE
from .field import R
from .r1cs import LC, ConstraintSystem, lc, lc_add, lc_const, lc_scale, lc_sub

_R = gmpy2.mpz(R)


def inv0(x: int) -> int:
    """Field inverse with inv0(0) = 0 (witness hint; constraints catch 0)."""
    return int(gmpy2.invert(x, _R)) if x % R else 0


def mul(cs: ConstraintSystem, a: LC, b: LC) -> LC:
    w = cs.alloc(cs.value(a) * cs.value(b) % R if cs.with_values else None)
    cs.enforce(a, b, lc(w))
    return lc(w)


def enforce_eq(cs: ConstraintSystem, a: LC, b: LC) -> None:
    cs.enforce(lc_sub(a, b), lc_const(1), {})


def enforce_bool(cs: ConstraintSystem, b: LC) -> None:
    cs.enforce(b, lc_sub(b, lc_const(1)), {})


def select(cs: ConstraintSystem, bit: LC, a: LC, b: LC) -> LC:
    """bit ? a : b (bit must be boolean-constrained elsewhere)."""
    return lc_add(b, mul(cs, bit, lc_sub(a, b)))


def bits_of(cs: ConstraintSystem, x: LC, nbits: int) -> list[LC]:
    """Little-endian boolean decomposition; enforces x == sum b_i 2^i."""
    xv = cs.value(x) if cs.with_values else 0
    bits = []
    for i in range(nbits):
        b = cs.alloc((xv >> i) & 1 if cs.with_values else None)
        enforce_bool(cs, lc(b))
        bits.append(lc(b))
    enforce_eq(cs, x, pack_bits(bits))
    return bits


def pack_bits(bits: list[LC]) -> LC:
    return lc_add(*(lc_scale(b, 1 << i) for i, b in enumerate(bits)))


def enforce_bits_lt_const(cs: ConstraintSystem, bits: list[LC], bound: int) -> None:
    """Integer comparison (sum b_i 2^i) < bound for a constant bound.

    Bitwise against bound-1 from the most significant end, so it is exact
    even though field arithmetic wraps.
    """
    limit = bound - 1
    eq: LC = lc_const(1)  # "all inspected bits equal the limit's bits so far"
    for i in range(len(bits) - 1, -1, -1):
        if (limit >> i) & 1:
            eq = mul(cs, eq, bits[i])
        else:
            cs.enforce(eq, bits[i], {})


def bits_of_strict(cs: ConstraintSystem, x: LC, nbits: int, bound: int) -> list[LC]:
    """Decompose and enforce the canonical representative: x < bound."""
    bits = bits_of(cs, x, nbits)
    enforce_bits_lt_const(cs, bits, bound)
    return bits


# ---------------------------------------------------------------------------
# Embedded twisted Edwards curve
# ---------------------------------------------------------------------------

PointLC = tuple[LC, LC]


def edwards_assert_on_curve(cs: ConstraintSystem, p: PointLC) -> None:
    x, y = p
    x2 = mul(cs, x, x)
    y2 = mul(cs, y, y)
    x2y2 = mul(cs, x2, y2)
    # A x^2 + y^2 = 1 + D x^2 y^2
    enforce_eq(cs, lc_add(lc_scale(x2, bjj.A), y2), lc_add(lc_const(1), lc_scale(x2y2, bjj.D)))


def edwards_add(cs: ConstraintSystem, p: PointLC, q: PointLC) -> PointLC:
    x1, y1 = p
    x2, y2 = q
    a = mul(cs, x1, x2)
    b = mul(cs, y1, y2)
    ab = mul(cs, a, b)
    u = mul(cs, x1, y2)
    v = mul(cs, y1, x2)
    den_x = lc_add(lc_const(1), lc_scale(ab, bjj.D))
    den_y = lc_sub(lc_const(1), lc_scale(ab, bjj.D))
    num_x = lc_add(u, v)
    num_y = lc_sub(b, lc_scale(a, bjj.A))
    if cs.with_values:
        x3v = cs.value(num_x) * inv0(cs.value(den_x)) % R
        y3v = cs.value(num_y) * inv0(cs.value(den_y)) % R
    else:
        x3v = y3v = None
    x3 = cs.alloc(x3v)
    y3 = cs.alloc(y3v)
    cs.enforce(den_x, lc(x3), num_x)
    cs.enforce(den_y, lc(y3), num_y)
    return (lc(x3), lc(y3))


def edwards_double(cs: ConstraintSystem, p: PointLC) -> PointLC:
    x1, y1 = p
    a = mul(cs, x1, x1)
    b = mul(cs, y1, y1)
    xy = mul(cs, x1, y1)
    den_x = lc_add(lc_scale(a, bjj.A), b)
    den_y = lc_sub(lc_const(2), lc_add(lc_scale(a, bjj.A), b))
    num_x = lc_scale(xy, 2)
    num_y = lc_sub(b, lc_scale(a, bjj.A))
    if cs.with_values:
        x3v = cs.value(num_x) * inv0(cs.value(den_x)) % R
        y3v = cs.value(num_y) * inv0(cs.value(den_y)) % R
    else:
        x3v = y3v = None
    x3 = cs.alloc(x3v)
    y3 = cs.alloc(y3v)
    cs.enforce(den_x, lc(x3), num_x)
    cs.enforce(den_y, lc(y3), num_y)
    return (lc(x3), lc(y3))


IDENTITY_LC: PointLC = (lc_const(0), lc_const(1))


def edwards_select(cs: ConstraintSystem, bit: LC, a: PointLC, b: PointLC) -> PointLC:
    return (select(cs, bit, a[0], b[0]), select(cs, bit, a[1], b[1]))


def scalar_mul_var(cs: ConstraintSystem, bits: list[LC], p: PointLC) -> PointLC:
    """Variable-base multiplication by a bit-decomposed scalar."""
    acc = IDENTITY_LC
    addend = p
    for i, bit in enumerate(bits):
        cand = edwards_add(cs, acc, addend)
        acc = edwards_select(cs, bit, cand, acc)
        if i + 1 < len(bits):
            addend = edwards_double(cs, addend)
    return acc


def scalar_mul_fixed(cs: ConstraintSystem, bits: list[LC], base: bjj.Point) -> PointLC:
    """Fixed-base multiplication via 4-bit windowed lookups of constants."""
    padded = list(bits)
    while len(padded) % 4:
        padded.append(lc_const(0))
    acc: PointLC | None = None
    step = base
    for w in range(len(padded) // 4):
        table = [bjj.IDENTITY]
        for _ in range(15):
            table.append(bjj.add(table[-1], step))
        b0, b1, b2, b3 = padded[4 * w: 4 * w + 4]
        m1 = mul(cs, b0, b1)
        m2 = mul(cs, b2, b3)
        # minterm selectors over each bit pair, linear in (b0, b1, m1)
        p_sel = [
            lc_add(lc_const(1), lc_scale(b0, -1), lc_scale(b1, -1), m1),
            lc_sub(b0, m1),
            lc_sub(b1, m1),
            m1,
        ]
        q_sel = [
            lc_add(lc_const(1), lc_scale(b2, -1), lc_scale(b3, -1), m2),
            lc_sub(b2, m2),
            lc_sub(b3, m2),
            m2,
        ]
        x_parts = []
        y_parts = []
        for k in range(4):
            gx = lc_add(*(lc_scale(q_sel[j], table[k + 4 * j][0]) for j in range(4)))
            gy = lc_add(*(lc_scale(q_sel[j], table[k + 4 * j][1]) for j in range(4)))
            x_parts.append(mul(cs, p_sel[k], gx))
            y_parts.append(mul(cs, p_sel[k], gy))
        window_pt: PointLC = (lc_add(*x_parts), lc_add(*y_parts))
        acc = window_pt if acc is None else edwards_add(cs, acc, window_pt)
        for _ in range(4):
            step = bjj.add(step, step)
    assert acc is not None
    return acc


# ---------------------------------------------------------------------------
# Poseidon
# ---------------------------------------------------------------------------

def _poseidon_sbox(cs: ConstraintSystem, x: LC) -> LC:
    x2 = mul(cs, x, x)
    x4 = mul(cs, x2, x2)
    return mul(cs, x4, x)


def poseidon_permutation(cs: ConstraintSystem, state: list[LC]) -> list[LC]:
    width = poseidon.WIDTH
    half = poseidon.FULL_ROUNDS // 2
    rc = iter(poseidon.ROUND_CONSTANTS)
    s = list(state)
    for rnd in range(poseidon.FULL_ROUNDS + poseidon.PARTIAL_ROUNDS):
        s = [lc_add(x, lc_const(next(rc))) for x in s]
        if rnd < half or rnd >= half + poseidon.PARTIAL_ROUNDS:
            s = [_poseidon_sbox(cs, x) for x in s]
        else:
            s[0] = _poseidon_sbox(cs, s[0])
        s = [
            lc_add(*(lc_scale(s[j], poseidon.MDS[i][j]) for j in range(width)))
            for i in range(width)
        ]
    return s


def poseidon_digest(cs: ConstraintSystem, inputs: list[LC], domain: int) -> LC:
    """Circuit mirror of :func:`attestree.crypto.poseidon.digest`."""
    rate = poseidon.RATE
    state: list[LC] = [lc_const(0)] * rate + [lc_const(poseidon.sponge_iv(domain, len(inputs)))]
    chunks = [inputs[i: i + rate] for i in range(0, len(inputs), rate)] or [[]]
    for chunk in chunks:
        for i, v in enumerate(chunk):
            state[i] = lc_add(state[i], v)
        state = poseidon_permutation(cs, state)
    return state[0]


# ---------------------------------------------------------------------------
# Signature verification
# ---------------------------------------------------------------------------

SCALAR_BITS = bjj.L.bit_length()  # 251


def verify_signature(
    cs: ConstraintSystem,
    pk: PointLC,
    msg: list[LC],
    r_point: PointLC,
    s_scalar: LC,
    challenge_class: str = "challenge-hash",
) -> None:
    """Constraints for S*BASE == R + H(R, A, msg)*A with canonical scalars.

    The challenge hash constraints are tagged with ``challenge_class`` so
    accounting can separate them from the curve arithmetic.
    """
    edwards_assert_on_curve(cs, pk)
    edwards_assert_on_curve(cs, r_point)
    s_bits = bits_of_strict(cs, s_scalar, SCALAR_BITS, bjj.L)
    with cs.scope(klass=challenge_class):
        h = poseidon_digest(
            cs, [r_point[0], r_point[1], pk[0], pk[1], *msg],
            domain=SPONGE_CHALLENGE,
        )
    h_bits = bits_of_strict(cs, h, 254, R)
    lhs = scalar_mul_fixed(cs, s_bits, bjj.BASE)
    h_pk = scalar_mul_var(cs, h_bits, pk)
    rhs = edwards_add(cs, r_point, h_pk)
    enforce_eq(cs, lhs[0], rhs[0])
    enforce_eq(cs, lhs[1], rhs[1])
