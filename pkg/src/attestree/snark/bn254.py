"""BN254 (alt_bn128) pairing curve: G1, G2, tower fields, optimal ate pairing.

Group layout:
  * G1: y^2 = x^3 + 3 over F_Q, generator (1, 2), prime order R.
  * G2: order-R subgroup of the sextic D-twist y^2 = x^3 + 3/xi over F_Q2,
    xi = 9 + u, u^2 = -1.
  * Tower: F_Q2 = F_Q[u]/(u^2+1), F_Q6 = F_Q2[v]/(v^3 - xi),
    F_Q12 = F_Q6[w]/(w^2 - v).

Points are affine tuples (None is the identity): G1 as (int, int), G2 as
((int, int), (int, int)).  F_Q2 elements are pairs, F_Q6 triples of pairs,
F_Q12 pairs of triples.  Everything derivable (Frobenius coefficients,
twist constants, final-exponent) is computed at import from Q, R and the
BN parameter rather than hard-coded.
"""

from __future__ import annotations

import gmpy2

# Base field modulus and group order; R is re-exported via snark.field.
Q = 21888242871839275222246405745257275088696311157297823662689037894645226208583
R = 21888242871839275222246405745257275088548364400416034343698204186575808495617
_Q = gmpy2.mpz(Q)

# BN parameter: Q = 36z^4 + 36z^3 + 24z^2 + 6z + 1, R = 36z^4 + 36z^3 + 18z^2 + 6z + 1
BN_Z = 4965661367192848881
ATE_LOOP = 6 * BN_Z + 2

assert 36 * BN_Z**4 + 36 * BN_Z**3 + 24 * BN_Z**2 + 6 * BN_Z + 1 == Q
assert 36 * BN_Z**4 + 36 * BN_Z**3 + 18 * BN_Z**2 + 6 * BN_Z + 1 == R

B1 = 3  # G1 curve constant

G1_GEN = (1, 2)

G2_GEN = (
    (
        10857046999023057135944570762232829481370756359578518086990519993285655852781,
        11559732032986387107991004021392285783925812861821192530917403151452391805634,
    ),
    (
        8495653923123431417604973247489272438418190587263600148770280649306958101930,
        4082367875863433681332203403145435568316851327593401208105741076214120093531,
    ),
)

Fq2 = tuple[int, int]
Fq6 = tuple[Fq2, Fq2, Fq2]
Fq12 = tuple[Fq6, Fq6]

FQ2_ZERO: Fq2 = (0, 0)
FQ2_ONE: Fq2 = (1, 0)
XI: Fq2 = (9, 1)


# ---------------------------------------------------------------------------
# F_Q2
# ---------------------------------------------------------------------------

def fq2_add(a: Fq2, b: Fq2) -> Fq2:
    return ((a[0] + b[0]) % Q, (a[1] + b[1]) % Q)


def fq2_sub(a: Fq2, b: Fq2) -> Fq2:
    return ((a[0] - b[0]) % Q, (a[1] - b[1]) % Q)


def fq2_neg(a: Fq2) -> Fq2:
    return (-a[0] % Q, -a[1] % Q)


def fq2_mul(a: Fq2, b: Fq2) -> Fq2:
    # (a0 + a1 u)(b0 + b1 u) with u^2 = -1, Karatsuba.
    t0 = a[0] * b[0]
    t1 = a[1] * b[1]
    t2 = (a[0] + a[1]) * (b[0] + b[1])
    return ((t0 - t1) % Q, (t2 - t0 - t1) % Q)


def fq2_sqr(a: Fq2) -> Fq2:
    t0 = (a[0] + a[1]) * (a[0] - a[1])
    t1 = 2 * a[0] * a[1]
    return (t0 % Q, t1 % Q)


def fq2_scalar(a: Fq2, k: int) -> Fq2:
    return (a[0] * k % Q, a[1] * k % Q)


def fq2_conj(a: Fq2) -> Fq2:
    return (a[0], -a[1] % Q)


def fq2_inv(a: Fq2) -> Fq2:
    norm = (a[0] * a[0] + a[1] * a[1]) % Q
    n_inv = int(gmpy2.invert(norm, _Q))
    return (a[0] * n_inv % Q, -a[1] * n_inv % Q)


def fq2_pow(a: Fq2, e: int) -> Fq2:
    result = FQ2_ONE
    base = a
    while e:
        if e & 1:
            result = fq2_mul(result, base)
        base = fq2_sqr(base)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# F_Q6 = F_Q2[v]/(v^3 - XI)
# ---------------------------------------------------------------------------

FQ6_ZERO: Fq6 = (FQ2_ZERO, FQ2_ZERO, FQ2_ZERO)
FQ6_ONE: Fq6 = (FQ2_ONE, FQ2_ZERO, FQ2_ZERO)


def _mul_xi(a: Fq2) -> Fq2:
    # a * (9 + u)
    return ((9 * a[0] - a[1]) % Q, (9 * a[1] + a[0]) % Q)


def fq6_add(a: Fq6, b: Fq6) -> Fq6:
    return (fq2_add(a[0], b[0]), fq2_add(a[1], b[1]), fq2_add(a[2], b[2]))


def fq6_sub(a: Fq6, b: Fq6) -> Fq6:
    return (fq2_sub(a[0], b[0]), fq2_sub(a[1], b[1]), fq2_sub(a[2], b[2]))


def fq6_neg(a: Fq6) -> Fq6:
    return (fq2_neg(a[0]), fq2_neg(a[1]), fq2_neg(a[2]))


def fq6_mul(a: Fq6, b: Fq6) -> Fq6:
    a0, a1, a2 = a
    b0, b1, b2 = b
    t0 = fq2_mul(a0, b0)
    t1 = fq2_mul(a1, b1)
    t2 = fq2_mul(a2, b2)
    c0 = fq2_add(t0, _mul_xi(fq2_sub(fq2_mul(fq2_add(a1, a2), fq2_add(b1, b2)), fq2_add(t1, t2))))
    c1 = fq2_add(fq2_sub(fq2_mul(fq2_add(a0, a1), fq2_add(b0, b1)), fq2_add(t0, t1)), _mul_xi(t2))
    c2 = fq2_add(fq2_sub(fq2_mul(fq2_add(a0, a2), fq2_add(b0, b2)), fq2_add(t0, t2)), t1)
    return (c0, c1, c2)


def fq6_sqr(a: Fq6) -> Fq6:
    return fq6_mul(a, a)


def fq6_mul_v(a: Fq6) -> Fq6:
    # a * v; v^3 = XI
    return (_mul_xi(a[2]), a[0], a[1])


def fq6_inv(a: Fq6) -> Fq6:
    a0, a1, a2 = a
    c0 = fq2_sub(fq2_sqr(a0), _mul_xi(fq2_mul(a1, a2)))
    c1 = fq2_sub(_mul_xi(fq2_sqr(a2)), fq2_mul(a0, a1))
    c2 = fq2_sub(fq2_sqr(a1), fq2_mul(a0, a2))
    t = fq2_add(_mul_xi(fq2_add(fq2_mul(a2, c1), fq2_mul(a1, c2))), fq2_mul(a0, c0))
    t_inv = fq2_inv(t)
    return (fq2_mul(c0, t_inv), fq2_mul(c1, t_inv), fq2_mul(c2, t_inv))


# ---------------------------------------------------------------------------
# F_Q12 = F_Q6[w]/(w^2 - v)
# ---------------------------------------------------------------------------

FQ12_ONE: Fq12 = (FQ6_ONE, FQ6_ZERO)


def fq12_mul(a: Fq12, b: Fq12) -> Fq12:
    a0, a1 = a
    b0, b1 = b
    t0 = fq6_mul(a0, b0)
    t1 = fq6_mul(a1, b1)
    c0 = fq6_add(t0, fq6_mul_v(t1))
    c1 = fq6_sub(fq6_sub(fq6_mul(fq6_add(a0, a1), fq6_add(b0, b1)), t0), t1)
    return (c0, c1)


def fq12_sqr(a: Fq12) -> Fq12:
    return fq12_mul(a, a)


def fq12_conj(a: Fq12) -> Fq12:
    return (a[0], fq6_neg(a[1]))


def fq12_inv(a: Fq12) -> Fq12:
    a0, a1 = a
    t = fq6_inv(fq6_sub(fq6_sqr(a0), fq6_mul_v(fq6_sqr(a1))))
    return (fq6_mul(a0, t), fq6_neg(fq6_mul(a1, t)))


def fq12_pow(a: Fq12, e: int) -> Fq12:
    result = FQ12_ONE
    base = a
    while e:
        if e & 1:
            result = fq12_mul(result, base)
        base = fq12_sqr(base)
        e >>= 1
    return result


# Frobenius: (v^j w^k) ^ Q = gamma_{2j+k} * v^j w^k, gamma_m = XI^(m(Q-1)/6).
_GAMMA: list[Fq2] = [FQ2_ONE] + [fq2_pow(XI, m * (Q - 1) // 6) for m in range(1, 6)]


def fq12_frobenius(a: Fq12) -> Fq12:
    c0 = tuple(fq2_mul(fq2_conj(a[0][j]), _GAMMA[2 * j]) for j in range(3))
    c1 = tuple(fq2_mul(fq2_conj(a[1][j]), _GAMMA[2 * j + 1]) for j in range(3))
    return (c0, c1)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# G1
# ---------------------------------------------------------------------------

G1Point = tuple[int, int] | None


def g1_is_on_curve(p: G1Point) -> bool:
    if p is None:
        return True
    x, y = p
    return (y * y - x * x * x - B1) % Q == 0


def g1_neg(p: G1Point) -> G1Point:
    if p is None:
        return None
    return (p[0], -p[1] % Q)


def g1_add(p: G1Point, q: G1Point) -> G1Point:
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if (y1 + y2) % Q == 0:
            return None
        lam = 3 * x1 * x1 % Q * int(gmpy2.invert(2 * y1 % Q, _Q)) % Q
    else:
        lam = (y2 - y1) * int(gmpy2.invert((x2 - x1) % Q, _Q)) % Q
    x3 = (lam * lam - x1 - x2) % Q
    y3 = (lam * (x1 - x3) - y1) % Q
    return (x3, y3)


def g1_mul(p: G1Point, k: int) -> G1Point:
    k %= R
    result: G1Point = None
    add = p
    while k:
        if k & 1:
            result = g1_add(result, add)
        add = g1_add(add, add)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# G2 (on the twist)
# ---------------------------------------------------------------------------

G2Point = tuple[Fq2, Fq2] | None

B2: Fq2 = fq2_mul((B1, 0), fq2_inv(XI))


def g2_is_on_curve(p: G2Point) -> bool:
    if p is None:
        return True
    x, y = p
    lhs = fq2_sqr(y)
    rhs = fq2_add(fq2_mul(fq2_sqr(x), x), B2)
    return lhs == rhs


def g2_neg(p: G2Point) -> G2Point:
    if p is None:
        return None
    return (p[0], fq2_neg(p[1]))


def g2_add(p: G2Point, q: G2Point) -> G2Point:
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if fq2_add(y1, y2) == FQ2_ZERO:
            return None
        lam = fq2_mul(fq2_scalar(fq2_sqr(x1), 3), fq2_inv(fq2_scalar(y1, 2)))
    else:
        lam = fq2_mul(fq2_sub(y2, y1), fq2_inv(fq2_sub(x2, x1)))
    x3 = fq2_sub(fq2_sub(fq2_sqr(lam), x1), x2)
    y3 = fq2_sub(fq2_mul(lam, fq2_sub(x1, x3)), y1)
    return (x3, y3)


def g2_mul(p: G2Point, k: int) -> G2Point:
    k %= R
    result: G2Point = None
    add = p
    while k:
        if k & 1:
            result = g2_add(result, add)
        add = g2_add(add, add)
        k >>= 1
    return result


def _g2_frobenius(p: G2Point) -> G2Point:
    # Untwist-Frobenius-twist endomorphism on the twist.
    if p is None:
        return None
    x, y = p
    return (fq2_mul(fq2_conj(x), _GAMMA[2]), fq2_mul(fq2_conj(y), _GAMMA[3]))


# ---------------------------------------------------------------------------
# Optimal ate pairing
# ---------------------------------------------------------------------------

def _line(t: tuple[Fq2, Fq2], lam: Fq2, px: int, py: int) -> Fq12:
    # Line through T (slope lam) on the untwisted curve, evaluated at P:
    #   l = py - (lam*px) w + (lam*x_T - y_T) v w
    xt, yt = t
    w0 = fq2_neg(fq2_scalar(lam, px))
    w1 = fq2_sub(fq2_mul(lam, xt), yt)
    return (((py, 0), FQ2_ZERO, FQ2_ZERO), (w0, w1, FQ2_ZERO))


def _dbl_step(t: tuple[Fq2, Fq2], px: int, py: int) -> tuple[tuple[Fq2, Fq2], Fq12]:
    xt, yt = t
    lam = fq2_mul(fq2_scalar(fq2_sqr(xt), 3), fq2_inv(fq2_scalar(yt, 2)))
    line = _line(t, lam, px, py)
    x3 = fq2_sub(fq2_sqr(lam), fq2_scalar(xt, 2))
    y3 = fq2_sub(fq2_mul(lam, fq2_sub(xt, x3)), yt)
    return (x3, y3), line


def _add_step(
    t: tuple[Fq2, Fq2], q: tuple[Fq2, Fq2], px: int, py: int
) -> tuple[tuple[Fq2, Fq2], Fq12]:
    xt, yt = t
    xq, yq = q
    lam = fq2_mul(fq2_sub(yq, yt), fq2_inv(fq2_sub(xq, xt)))
    line = _line(t, lam, px, py)
    x3 = fq2_sub(fq2_sub(fq2_sqr(lam), xt), xq)
    y3 = fq2_sub(fq2_mul(lam, fq2_sub(xt, x3)), yt)
    return (x3, y3), line


def miller_loop(p: G1Point, q: G2Point) -> Fq12:
    """f_{6z+2,Q}(P) times the two Frobenius correction lines."""
    if p is None or q is None:
        return FQ12_ONE
    px, py = p
    f = FQ12_ONE
    t = q
    for bit in bin(ATE_LOOP)[3:]:
        t, line = _dbl_step(t, px, py)
        f = fq12_mul(fq12_sqr(f), line)
        if bit == "1":
            t, line = _add_step(t, q, px, py)
            f = fq12_mul(f, line)
    q1 = _g2_frobenius(q)
    q2 = g2_neg(_g2_frobenius(q1))
    t, line = _add_step(t, q1, px, py)  # type: ignore[arg-type]
    f = fq12_mul(f, line)
    _, line = _add_step(t, q2, px, py)  # type: ignore[arg-type]
    f = fq12_mul(f, line)
    return f


_HARD_EXP = (Q**4 - Q**2 + 1) // R
assert (Q**12 - 1) % R == 0


def final_exponentiation(f: Fq12) -> Fq12:
    # easy part: f^((Q^6-1)(Q^2+1))
    f = fq12_mul(fq12_conj(f), fq12_inv(f))
    f = fq12_mul(fq12_frobenius(fq12_frobenius(f)), f)
    # hard part: f^((Q^4-Q^2+1)/R)
    return fq12_pow(f, _HARD_EXP)


def pairing(p: G1Point, q: G2Point) -> Fq12:
    """Reduced optimal ate pairing e(P, Q)."""
    return final_exponentiation(miller_loop(p, q))


def pairing_product_is_one(pairs: list[tuple[G1Point, G2Point]]) -> bool:
    """True iff the product of e(P_i, Q_i) over all pairs equals 1."""
    f = FQ12_ONE
    for p, q in pairs:
        f = fq12_mul(f, miller_loop(p, q))
    return final_exponentiation(f) == FQ12_ONE
