"""Groth16 proving system over BN254 for the R1CS in :mod:`.r1cs`.

Keys are bound to a 32-byte context digest (the process-description
content hash); proofs carry it and verifiers reject a mismatch before
touching the pairing.

Performance notes: scalar multiplication is windowed fixed-base during
setup (one shared generator) and Pippenger buckets during proving.
Jacobian coordinates with gmpy2 limbs throughout; points at infinity are
Z == 0.  Setup and proving are single-threaded and deterministic given
the supplied RNG.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import gmpy2

from . import bn254 as ec
from .field import R, batch_inv, ntt, powers, root_of_unity
from .r1cs import ConstraintSystem, UnsatisfiedConstraint

mpz = gmpy2.mpz
_Q = gmpy2.mpz(ec.Q)


class ProofError(Exception):
    """Raised when proving fails (unsatisfied relation or key mismatch)."""


class ContextMismatch(Exception):
    """Artifact was produced for a different process description."""


# ---------------------------------------------------------------------------
# G1 jacobian kernels (hot path; raw mpz, no classes)
# ---------------------------------------------------------------------------

def _g1_dbl(p):
    X, Y, Z = p
    if not Z:
        return p
    A = X * X % _Q
    B = Y * Y % _Q
    C = B * B % _Q
    D = 2 * ((X + B) * (X + B) - A - C) % _Q
    E = 3 * A % _Q
    X3 = (E * E - 2 * D) % _Q
    return (X3, (E * (D - X3) - 8 * C) % _Q, 2 * Y * Z % _Q)


def _g1_add(p, q):
    X1, Y1, Z1 = p
    X2, Y2, Z2 = q
    if not Z1:
        return q
    if not Z2:
        return p
    Z1Z1 = Z1 * Z1 % _Q
    Z2Z2 = Z2 * Z2 % _Q
    U1 = X1 * Z2Z2 % _Q
    U2 = X2 * Z1Z1 % _Q
    S1 = Y1 * Z2 * Z2Z2 % _Q
    S2 = Y2 * Z1 * Z1Z1 % _Q
    H = (U2 - U1) % _Q
    rr = (S2 - S1) % _Q
    if not H:
        if not rr:
            return _g1_dbl(p)
        return (mpz(1), mpz(1), mpz(0))
    I = 4 * H * H % _Q
    J = H * I % _Q
    rr = 2 * rr % _Q
    V = U1 * I % _Q
    X3 = (rr * rr - J - 2 * V) % _Q
    Y3 = (rr * (V - X3) - 2 * S1 * J) % _Q
    Z3 = ((Z1 + Z2) * (Z1 + Z2) - Z1Z1 - Z2Z2) % _Q * H % _Q
    return (X3, Y3, Z3)


def _g1_add_affine(p, q):
    # q is an affine (x, y) mpz pair
    X1, Y1, Z1 = p
    if not Z1:
        return (q[0], q[1], mpz(1))
    x2, y2 = q
    Z1Z1 = Z1 * Z1 % _Q
    U2 = x2 * Z1Z1 % _Q
    S2 = y2 * Z1 * Z1Z1 % _Q
    H = (U2 - X1) % _Q
    rr = (S2 - Y1) % _Q
    if not H:
        if not rr:
            return _g1_dbl(p)
        return (mpz(1), mpz(1), mpz(0))
    HH = H * H % _Q
    I = 4 * HH % _Q
    J = H * I % _Q
    rr = 2 * rr % _Q
    V = X1 * I % _Q
    X3 = (rr * rr - J - 2 * V) % _Q
    Y3 = (rr * (V - X3) - 2 * Y1 * J) % _Q
    Z3 = ((Z1 + H) * (Z1 + H) - Z1Z1 - HH) % _Q
    return (X3, Y3, Z3)


_G1_INF = (mpz(1), mpz(1), mpz(0))


def _g1_to_affine_many(points) -> list[ec.G1Point]:
    zs = [p[2] for p in points]
    nonzero = [int(z) for z in zs if z]
    invs = iter(batch_inv_q(nonzero))
    out: list[ec.G1Point] = []
    for X, Y, Z in points:
        if not Z:
            out.append(None)
            continue
        zi = next(invs)
        zi2 = zi * zi % _Q
        out.append((int(X * zi2 % _Q), int(Y * zi2 % _Q * zi % _Q)))
    return out


def batch_inv_q(values: list[int]) -> list[mpz]:
    n = len(values)
    if not n:
        return []
    prefix = [mpz(0)] * n
    acc = mpz(1)
    for i, v in enumerate(values):
        prefix[i] = acc
        acc = acc * v % _Q
    acc = gmpy2.invert(acc, _Q)
    out = [mpz(0)] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * acc % _Q
        acc = acc * values[i] % _Q
    return out


# ---------------------------------------------------------------------------
# G2 jacobian kernels (fq2 coordinates)
# ---------------------------------------------------------------------------

_F2_ZERO = (0, 0)

# The G2 kernels below inline the F_Q2 arithmetic (Karatsuba mul, squaring
# via (a+b)(a-b)) to avoid per-op function call overhead in MSM loops.


def _f2mul(a, b):
    a0, a1 = a
    b0, b1 = b
    t0 = a0 * b0
    t1 = a1 * b1
    t2 = (a0 + a1) * (b0 + b1)
    return ((t0 - t1) % _Q, (t2 - t0 - t1) % _Q)


def _f2sqr(a):
    a0, a1 = a
    return ((a0 + a1) * (a0 - a1) % _Q, 2 * a0 * a1 % _Q)


def _g2_dbl(p):
    X, Y, Z = p
    if Z == _F2_ZERO:
        return p
    A = _f2sqr(X)
    B = _f2sqr(Y)
    C = _f2sqr(B)
    t = (X[0] + B[0], X[1] + B[1])
    t = _f2sqr(t)
    D = (2 * (t[0] - A[0] - C[0]) % _Q, 2 * (t[1] - A[1] - C[1]) % _Q)
    E = (3 * A[0] % _Q, 3 * A[1] % _Q)
    F = _f2sqr(E)
    X3 = ((F[0] - 2 * D[0]) % _Q, (F[1] - 2 * D[1]) % _Q)
    t = _f2mul(E, ((D[0] - X3[0]) % _Q, (D[1] - X3[1]) % _Q))
    Y3 = ((t[0] - 8 * C[0]) % _Q, (t[1] - 8 * C[1]) % _Q)
    t = _f2mul(Y, Z)
    Z3 = (2 * t[0] % _Q, 2 * t[1] % _Q)
    return (X3, Y3, Z3)


def _g2_add_affine(p, q):
    X1, Y1, Z1 = p
    if Z1 == _F2_ZERO:
        return (q[0], q[1], (1, 0))
    x2, y2 = q
    Z1Z1 = _f2sqr(Z1)
    U2 = _f2mul(x2, Z1Z1)
    S2 = _f2mul(_f2mul(y2, Z1), Z1Z1)
    H = ((U2[0] - X1[0]) % _Q, (U2[1] - X1[1]) % _Q)
    rr = ((S2[0] - Y1[0]) % _Q, (S2[1] - Y1[1]) % _Q)
    if H == _F2_ZERO:
        if rr == _F2_ZERO:
            return _g2_dbl(p)
        return ((1, 0), (1, 0), _F2_ZERO)
    HH = _f2sqr(H)
    I = (4 * HH[0] % _Q, 4 * HH[1] % _Q)
    J = _f2mul(H, I)
    rr = (2 * rr[0] % _Q, 2 * rr[1] % _Q)
    V = _f2mul(X1, I)
    t = _f2sqr(rr)
    X3 = ((t[0] - J[0] - 2 * V[0]) % _Q, (t[1] - J[1] - 2 * V[1]) % _Q)
    t = _f2mul(rr, ((V[0] - X3[0]) % _Q, (V[1] - X3[1]) % _Q))
    u = _f2mul(Y1, J)
    Y3 = ((t[0] - 2 * u[0]) % _Q, (t[1] - 2 * u[1]) % _Q)
    t = _f2sqr(((Z1[0] + H[0]) % _Q, (Z1[1] + H[1]) % _Q))
    Z3 = ((t[0] - Z1Z1[0] - HH[0]) % _Q, (t[1] - Z1Z1[1] - HH[1]) % _Q)
    return (X3, Y3, Z3)


def _g2_add(p, q):
    if q[2] == _F2_ZERO:
        return p
    if p[2] == _F2_ZERO:
        return q
    X1, Y1, Z1 = p
    X2, Y2, Z2 = q
    Z1Z1 = _f2sqr(Z1)
    Z2Z2 = _f2sqr(Z2)
    U1 = _f2mul(X1, Z2Z2)
    U2 = _f2mul(X2, Z1Z1)
    S1 = _f2mul(_f2mul(Y1, Z2), Z2Z2)
    S2 = _f2mul(_f2mul(Y2, Z1), Z1Z1)
    H = ((U2[0] - U1[0]) % _Q, (U2[1] - U1[1]) % _Q)
    rr = ((S2[0] - S1[0]) % _Q, (S2[1] - S1[1]) % _Q)
    if H == _F2_ZERO:
        if rr == _F2_ZERO:
            return _g2_dbl(p)
        return ((1, 0), (1, 0), _F2_ZERO)
    I = _f2sqr(H)
    I = (4 * I[0] % _Q, 4 * I[1] % _Q)
    J = _f2mul(H, I)
    rr = (2 * rr[0] % _Q, 2 * rr[1] % _Q)
    V = _f2mul(U1, I)
    t = _f2sqr(rr)
    X3 = ((t[0] - J[0] - 2 * V[0]) % _Q, (t[1] - J[1] - 2 * V[1]) % _Q)
    t = _f2mul(rr, ((V[0] - X3[0]) % _Q, (V[1] - X3[1]) % _Q))
    u = _f2mul(S1, J)
    Y3 = ((t[0] - 2 * u[0]) % _Q, (t[1] - 2 * u[1]) % _Q)
    t = _f2sqr(((Z1[0] + Z2[0]) % _Q, (Z1[1] + Z2[1]) % _Q))
    Z3 = _f2mul(((t[0] - Z1Z1[0] - Z2Z2[0]) % _Q, (t[1] - Z1Z1[1] - Z2Z2[1]) % _Q), H)
    return (X3, Y3, Z3)


_G2_INF = ((1, 0), (1, 0), _F2_ZERO)


def _g2_to_affine(p) -> ec.G2Point:
    X, Y, Z = p
    if Z == _F2_ZERO:
        return None
    zi = ec.fq2_inv(Z)
    zi2 = ec.fq2_sqr(zi)
    return (ec.fq2_mul(X, zi2), ec.fq2_mul(ec.fq2_mul(Y, zi2), zi))


# ---------------------------------------------------------------------------
# Multi-scalar multiplication (Pippenger) and fixed-base tables
# ---------------------------------------------------------------------------

def _choose_window(bitlens: list[int]) -> int:
    """Window width minimizing estimated bucket inserts + aggregation.

    Many wire values are bits or small integers, so the digit count per
    scalar is estimated from its bit length rather than assumed dense.
    """
    maxbl = max(bitlens)
    best_c, best_cost = 4, None
    for c in range(4, 17):
        inserts = sum((bl + c - 1) // c for bl in bitlens)
        agg = ((maxbl + c - 1) // c) * (2 << c)
        cost = inserts + agg
        if best_cost is None or cost < best_cost:
            best_c, best_cost = c, cost
    return best_c


def _msm_schedule(pairs: list[tuple]) -> tuple[list[tuple], list[int], int]:
    """Sort by descending bit length so high windows scan short prefixes."""
    pairs.sort(key=lambda t: -t[1].bit_length())
    bitlens = [s.bit_length() for _, s in pairs]
    return pairs, bitlens, _choose_window(bitlens)


def g1_msm(points: list[ec.G1Point], scalars: list[int]) -> ec.G1Point:
    """Sum of scalar_i * P_i; points affine, scalars mod R."""
    pairs = [
        ((mpz(p[0]), mpz(p[1])), s % R)
        for p, s in zip(points, scalars, strict=True)
        if p is not None and s % R
    ]
    if not pairs:
        return None
    pairs, bitlens, c = _msm_schedule(pairs)
    mask = (1 << c) - 1
    windows = (bitlens[0] + c - 1) // c
    total = _G1_INF
    for w in range(windows - 1, -1, -1):
        if total[2]:
            for _ in range(c):
                total = _g1_dbl(total)
        shift = w * c
        buckets: dict[int, tuple] = {}
        for pt, s in pairs:
            if s.bit_length() <= shift:
                break  # sorted: no further scalar reaches this window
            d = (s >> shift) & mask
            if d:
                cur = buckets.get(d)
                buckets[d] = (pt[0], pt[1], mpz(1)) if cur is None else _g1_add_affine(cur, pt)
        if buckets:
            running = _G1_INF
            window_sum = _G1_INF
            for d in range(max(buckets), 0, -1):
                b = buckets.get(d)
                if b is not None:
                    running = _g1_add(running, b)
                window_sum = _g1_add(window_sum, running)
            total = _g1_add(total, window_sum)
    if not total[2]:
        return None
    return _g1_to_affine_many([total])[0]


def g2_msm(points: list[ec.G2Point], scalars: list[int]) -> ec.G2Point:
    pairs = [(p, s % R) for p, s in zip(points, scalars, strict=True) if p is not None and s % R]
    if not pairs:
        return None
    pairs, bitlens, c = _msm_schedule(pairs)
    mask = (1 << c) - 1
    windows = (bitlens[0] + c - 1) // c
    total = _G2_INF
    for w in range(windows - 1, -1, -1):
        if total[2] != _F2_ZERO:
            for _ in range(c):
                total = _g2_dbl(total)
        shift = w * c
        buckets: dict[int, tuple] = {}
        for pt, s in pairs:
            if s.bit_length() <= shift:
                break
            d = (s >> shift) & mask
            if d:
                cur = buckets.get(d)
                buckets[d] = (pt[0], pt[1], (1, 0)) if cur is None else _g2_add_affine(cur, pt)
        if buckets:
            running = _G2_INF
            window_sum = _G2_INF
            for d in range(max(buckets), 0, -1):
                b = buckets.get(d)
                if b is not None:
                    running = _g2_add(running, b)
                window_sum = _g2_add(window_sum, running)
            total = _g2_add(total, window_sum)
    return _g2_to_affine(total)


class FixedBaseG1:
    """Windowed table for many multiplications of one G1 base."""

    def __init__(self, base: ec.G1Point, width: int = 12):
        self.width = width
        self.windows = (254 + width - 1) // width
        self.tables: list[list] = []
        step = (mpz(base[0]), mpz(base[1]), mpz(1))
        for _ in range(self.windows):
            row = [None] * (1 << width)
            acc = _G1_INF
            jac_row = []
            for _k in range(1, 1 << width):
                acc = _g1_add(acc, step)
                jac_row.append(acc)
            aff = _g1_to_affine_many(jac_row)
            for k in range(1, 1 << width):
                a = aff[k - 1]
                row[k] = (mpz(a[0]), mpz(a[1])) if a is not None else None
            self.tables.append(row)
            step = _g1_add(acc, step)  # acc = (2^width - 1) * step, so acc + step = 2^width * step
        self.mask = (1 << width) - 1

    def mul_jac(self, k: int):
        k %= R
        acc = _G1_INF
        w = 0
        while k:
            d = k & self.mask
            if d:
                pt = self.tables[w][d]
                if pt is not None:
                    acc = _g1_add_affine(acc, pt)
            k >>= self.width
            w += 1
        return acc

    def mul_many(self, scalars: list[int]) -> list[ec.G1Point]:
        return _g1_to_affine_many([self.mul_jac(s) for s in scalars])


class FixedBaseG2:
    def __init__(self, base: ec.G2Point, width: int = 10):
        self.width = width
        self.windows = (254 + width - 1) // width
        self.tables = []
        step = (base[0], base[1], (1, 0))
        for _ in range(self.windows):
            row = [None] * (1 << width)
            acc = _G2_INF
            for k in range(1, 1 << width):
                acc = _g2_add(acc, step)
                aff = _g2_to_affine(acc)
                row[k] = aff
            self.tables.append(row)
            step = _g2_add(acc, step)
        self.mask = (1 << width) - 1

    def mul(self, k: int) -> ec.G2Point:
        k %= R
        acc = _G2_INF
        w = 0
        while k:
            d = k & self.mask
            if d:
                pt = self.tables[w][d]
                if pt is not None:
                    acc = _g2_add_affine(acc, pt)
            k >>= self.width
            w += 1
        return _g2_to_affine(acc)


# ---------------------------------------------------------------------------
# Keys and proofs
# ---------------------------------------------------------------------------

@dataclass
class VerificationKey:
    alpha1: ec.G1Point
    beta2: ec.G2Point
    gamma2: ec.G2Point
    delta2: ec.G2Point
    ic: list[ec.G1Point]  # one per public wire, including ONE
    context: bytes

    @property
    def num_public(self) -> int:
        return len(self.ic) - 1


@dataclass
class ProvingKey:
    alpha1: ec.G1Point
    beta1: ec.G1Point
    delta1: ec.G1Point
    beta2: ec.G2Point
    delta2: ec.G2Point
    a_query: list[ec.G1Point]   # [u_i(tau)]_1 per wire
    b1_query: list[ec.G1Point]  # [v_i(tau)]_1 per wire
    b2_query: list[ec.G2Point]  # [v_i(tau)]_2 per wire
    l_query: list[ec.G1Point]   # [(beta u + alpha v + w)/delta]_1, private wires only
    h_query: list[ec.G1Point]   # [tau^j t(tau)/delta]_1, j < domain-1
    num_public: int
    domain: int
    context: bytes


@dataclass
class Proof:
    a: ec.G1Point
    b: ec.G2Point
    c: ec.G1Point
    context: bytes


_FB1: FixedBaseG1 | None = None
_FB2: FixedBaseG2 | None = None


def _generator_tables() -> tuple[FixedBaseG1, FixedBaseG2]:
    global _FB1, _FB2
    if _FB1 is None:
        _FB1 = FixedBaseG1(ec.G1_GEN)
        _FB2 = FixedBaseG2(ec.G2_GEN)
    return _FB1, _FB2


def _domain_size(n_constraints: int) -> int:
    size = 1
    while size < max(n_constraints, 2):
        size <<= 1
    return size


def _wire_evaluations(cs: ConstraintSystem, tau: int, domain: int):
    """u_i(tau), v_i(tau), w_i(tau) for every wire, via the DFT identity
    sum_c L_c(tau) * M[c][i] with L(tau) = iNTT of the tau power vector."""
    lag = ntt(powers(tau, domain), inverse=True)
    m = cs.num_wires
    u = [0] * m
    v = [0] * m
    w = [0] * m
    for c in range(cs.num_constraints):
        x = lag[c]
        if not x:
            continue
        for wire, coeff in cs.rows_a[c]:
            u[wire] = (u[wire] + x * coeff) % R
        for wire, coeff in cs.rows_b[c]:
            v[wire] = (v[wire] + x * coeff) % R
        for wire, coeff in cs.rows_c[c]:
            w[wire] = (w[wire] + x * coeff) % R
    return u, v, w


def setup(cs: ConstraintSystem, context: bytes, rng: random.Random) -> tuple[ProvingKey, VerificationKey]:
    """Trusted setup for the given constraint system.

    The RNG supplies the toxic waste; callers that need reproducible keys
    pass a seeded ``random.Random``.
    """
    alpha = rng.randrange(1, R)
    beta = rng.randrange(1, R)
    gamma = rng.randrange(1, R)
    delta = rng.randrange(1, R)
    tau = rng.randrange(1, R)

    domain = _domain_size(cs.num_constraints)
    u, v, w = _wire_evaluations(cs, tau, domain)
    m = cs.num_wires
    npub = cs.num_public

    gamma_inv = int(gmpy2.invert(gamma, R))
    delta_inv = int(gmpy2.invert(delta, R))
    z_tau = (pow(tau, domain, R) - 1) % R

    fb1, fb2 = _generator_tables()

    a_query = fb1.mul_many([u[i] for i in range(m)])
    b1_query = fb1.mul_many([v[i] for i in range(m)])
    b2_query = [fb2.mul(v[i]) if v[i] else None for i in range(m)]
    ic_scalars = [(beta * u[i] + alpha * v[i] + w[i]) % R * gamma_inv % R for i in range(npub + 1)]
    l_scalars = [(beta * u[i] + alpha * v[i] + w[i]) % R * delta_inv % R for i in range(npub + 1, m)]
    ic = fb1.mul_many(ic_scalars)
    l_query = fb1.mul_many(l_scalars)
    h_scalars = [z_tau * delta_inv % R]
    for _ in range(domain - 2):
        h_scalars.append(h_scalars[-1] * tau % R)
    h_query = fb1.mul_many(h_scalars)

    alpha1 = fb1.mul_many([alpha])[0]
    beta1 = fb1.mul_many([beta])[0]
    delta1 = fb1.mul_many([delta])[0]
    beta2 = fb2.mul(beta)
    gamma2 = fb2.mul(gamma)
    delta2 = fb2.mul(delta)

    pk = ProvingKey(
        alpha1=alpha1, beta1=beta1, delta1=delta1, beta2=beta2, delta2=delta2,
        a_query=a_query, b1_query=b1_query, b2_query=b2_query,
        l_query=l_query, h_query=h_query,
        num_public=npub, domain=domain, context=context,
    )
    vk = VerificationKey(
        alpha1=alpha1, beta2=beta2, gamma2=gamma2, delta2=delta2, ic=ic, context=context,
    )
    return pk, vk


def _quotient_coeffs(cs: ConstraintSystem, domain: int) -> list[int]:
    """Coefficients of H(X) = (A(X)B(X) - C(X)) / Z(X) via one coset."""
    values = cs.values
    aw = [0] * domain
    bw = [0] * domain
    cw = [0] * domain
    for i in range(cs.num_constraints):
        aw[i] = sum(c * values[wid] for wid, c in cs.rows_a[i]) % R
        bw[i] = sum(c * values[wid] for wid, c in cs.rows_b[i]) % R
        cw[i] = sum(c * values[wid] for wid, c in cs.rows_c[i]) % R
    a_coeff = ntt(aw, inverse=True)
    b_coeff = ntt(bw, inverse=True)
    c_coeff = ntt(cw, inverse=True)
    # evaluate on the coset g*<omega> where g generates the 2*domain group:
    # Z(g*omega^i) = g^domain - 1 = -2 since g^domain = -1.
    g = root_of_unity(2 * domain)
    gp = powers(g, domain)
    a_cos = ntt([a * k % R for a, k in zip(a_coeff, gp)])
    b_cos = ntt([b * k % R for b, k in zip(b_coeff, gp)])
    c_cos = ntt([c * k % R for c, k in zip(c_coeff, gp)])
    z_inv = int(gmpy2.invert(R - 2, R))
    h_cos = [(a * b - c) % R * z_inv % R for a, b, c in zip(a_cos, b_cos, c_cos)]
    h_coeff = ntt(h_cos, inverse=True)
    g_inv = int(gmpy2.invert(g, R))
    gip = powers(g_inv, domain)
    return [h * k % R for h, k in zip(h_coeff, gip)]


def prove(pk: ProvingKey, cs: ConstraintSystem, context: bytes, rng: random.Random) -> Proof:
    """Produce a proof from a value-bearing constraint system.

    Raises UnsatisfiedConstraint naming the first failing constraint group
    if the witness does not satisfy the relation, and ContextMismatch if
    the key was generated for a different process description.
    """
    if context != pk.context:
        raise ContextMismatch("proving key does not match this process description")
    if not cs.with_values:
        raise ProofError("constraint system carries no witness values")
    if cs.num_wires != len(pk.a_query):
        raise ProofError("constraint system shape does not match proving key")
    cs.check()

    values = cs.values
    r = rng.randrange(R)
    s = rng.randrange(R)

    h_coeffs = _quotient_coeffs(cs, pk.domain)

    a_pt = g1_msm(pk.a_query + [pk.alpha1, pk.delta1], values + [1, r])
    b1_pt = g1_msm(pk.b1_query + [pk.beta1, pk.delta1], values + [1, s])
    b2_pt = g2_msm(pk.b2_query + [pk.beta2, pk.delta2], values + [1, s])

    priv = values[pk.num_public + 1:]
    c_points = pk.l_query + pk.h_query + [a_pt, b1_pt, pk.delta1]
    c_scalars = priv + h_coeffs[: len(pk.h_query)] + [s, r, (-r * s) % R]
    c_pt = g1_msm(c_points, c_scalars)
    return Proof(a=a_pt, b=b2_pt, c=c_pt, context=context)


def verify(vk: VerificationKey, public_inputs: list[int], proof: Proof) -> bool:
    """Check a proof against the public statement; False on any mismatch."""
    if proof.context != vk.context:
        return False
    if len(public_inputs) != vk.num_public:
        return False
    if proof.a is None or proof.b is None or proof.c is None:
        return False
    if not (ec.g1_is_on_curve(proof.a) and ec.g1_is_on_curve(proof.c)):
        return False
    if not ec.g2_is_on_curve(proof.b):
        return False
    ic = vk.ic[0]
    for x, pt in zip(public_inputs, vk.ic[1:], strict=True):
        ic = ec.g1_add(ic, ec.g1_mul(pt, x))
    return ec.pairing_product_is_one([
        (ec.g1_neg(proof.a), proof.b),
        (vk.alpha1, vk.beta2),
        (ic, vk.gamma2),
        (proof.c, vk.delta2),
    ])
