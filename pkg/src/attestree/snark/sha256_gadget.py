"""SHA-256 as constraints, for in-circuit reference digests.

Bit-level port of FIPS 180-4: the message is a fixed-length list of bit
LCs in byte-stream order (most significant bit of the first byte first);
padding is synthesized as constants.  Words are little-endian bit lists
internally so rotations are free re-indexing.  Costs about 27k
constraints per 512-bit block.
"""

from __future__ import annotations

from .field import R
from .r1cs import LC, ConstraintSystem, lc_add, lc_const, lc_scale, lc_sub
from .gadgets import bits_of, mul

_K = [
    0x428A2F98, 0x71374491, 0xB5C0FBCF, 0xE9B5DBA5, 0x3956C25B, 0x59F111F1, 0x923F82A4, 0xAB1C5ED5,
    0xD807AA98, 0x12835B01, 0x243185BE, 0x550C7DC3, 0x72BE5D74, 0x80DEB1FE, 0x9BDC06A7, 0xC19BF174,
    0xE49B69C1, 0xEFBE4786, 0x0FC19DC6, 0x240CA1CC, 0x2DE92C6F, 0x4A7484AA, 0x5CB0A9DC, 0x76F988DA,
    0x983E5152, 0xA831C66D, 0xB00327C8, 0xBF597FC7, 0xC6E00BF3, 0xD5A79147, 0x06CA6351, 0x14292967,
    0x27B70A85, 0x2E1B2138, 0x4D2C6DFC, 0x53380D13, 0x650A7354, 0x766A0ABB, 0x81C2C92E, 0x92722C85,
    0xA2BFE8A1, 0xA81A664B, 0xC24B8B70, 0xC76C51A3, 0xD192E819, 0xD6990624, 0xF40E3585, 0x106AA070,
    0x19A4C116, 0x1E376C08, 0x2748774C, 0x34B0BCB5, 0x391C0CB3, 0x4ED8AA4A, 0x5B9CCA4F, 0x682E6FF3,
    0x748F82EE, 0x78A5636F, 0x84C87814, 0x8CC70208, 0x90BEFFFA, 0xA4506CEB, 0xBEF9A3F7, 0xC67178F2,
]

_H0 = [0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A, 0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19]

Word = list[LC]  # 32 bit LCs, index i has significance 2^i


def _const_word(value: int) -> Word:
    return [lc_const((value >> i) & 1) for i in range(32)]


def _rotr(w: Word, n: int) -> Word:
    return [w[(i + n) % 32] for i in range(32)]


def _shr(w: Word, n: int) -> Word:
    return [w[i + n] if i + n < 32 else {} for i in range(32)]


def _is_const(b: LC) -> bool:
    return not b or (len(b) == 1 and 0 in b)


def _xor2(cs: ConstraintSystem, a: LC, b: LC) -> LC:
    if _is_const(a) or _is_const(b):
        if _is_const(a) and _is_const(b):
            return lc_const((a.get(0, 0) ^ b.get(0, 0)) & 1)
        var, const = (b, a) if _is_const(a) else (a, b)
        if const.get(0, 0) % R == 1:
            return lc_sub(lc_const(1), var)
        return var
    ab = mul(cs, a, b)
    return lc_sub(lc_add(a, b), lc_scale(ab, 2))


def _word_xor(cs: ConstraintSystem, *words: Word) -> Word:
    out = []
    for i in range(32):
        acc = words[0][i]
        for w in words[1:]:
            acc = _xor2(cs, acc, w[i])
        out.append(acc)
    return out


def _pack(w: Word) -> LC:
    return lc_add(*(lc_scale(b, 1 << i) for i, b in enumerate(w)))


def _mod32(cs: ConstraintSystem, total: LC, max_value: int) -> Word:
    """Reduce an affine sum of words to 32 bits, dropping the carry."""
    bits = bits_of(cs, total, max_value.bit_length())
    return bits[:32]


def _small_sigma0(cs: ConstraintSystem, w: Word) -> Word:
    return _word_xor(cs, _rotr(w, 7), _rotr(w, 18), _shr(w, 3))


def _small_sigma1(cs: ConstraintSystem, w: Word) -> Word:
    return _word_xor(cs, _rotr(w, 17), _rotr(w, 19), _shr(w, 10))


def _big_sigma0(cs: ConstraintSystem, w: Word) -> Word:
    return _word_xor(cs, _rotr(w, 2), _rotr(w, 13), _rotr(w, 22))


def _big_sigma1(cs: ConstraintSystem, w: Word) -> Word:
    return _word_xor(cs, _rotr(w, 6), _rotr(w, 11), _rotr(w, 25))


def _ch(cs: ConstraintSystem, e: Word, f: Word, g: Word) -> Word:
    # per bit: g + e*(f - g)
    return [lc_add(g[i], mul(cs, e[i], lc_sub(f[i], g[i]))) for i in range(32)]


def _maj(cs: ConstraintSystem, a: Word, b: Word, c: Word) -> Word:
    out = []
    for i in range(32):
        t1 = mul(cs, a[i], b[i])
        t2 = mul(cs, c[i], lc_sub(lc_add(a[i], b[i]), lc_scale(t1, 2)))
        out.append(lc_add(t1, t2))
    return out


def _compress(cs: ConstraintSystem, state: list[Word], block: list[Word]) -> list[Word]:
    w = list(block)
    for t in range(16, 64):
        total = lc_add(
            _pack(_small_sigma1(cs, w[t - 2])), _pack(w[t - 7]),
            _pack(_small_sigma0(cs, w[t - 15])), _pack(w[t - 16]),
        )
        w.append(_mod32(cs, total, 4 * (2**32 - 1)))
    a, b, c, d, e, f, g, h = state
    for t in range(64):
        t1 = lc_add(
            _pack(h), _pack(_big_sigma1(cs, e)), _pack(_ch(cs, e, f, g)),
            lc_const(_K[t]), _pack(w[t]),
        )
        t2 = lc_add(_pack(_big_sigma0(cs, a)), _pack(_maj(cs, a, b, c)))
        new_e = _mod32(cs, lc_add(_pack(d), t1), 6 * (2**32 - 1) + _K[t])
        new_a = _mod32(cs, lc_add(t1, t2), 7 * (2**32 - 1) + _K[t])
        a, b, c, d, e, f, g, h = new_a, a, b, c, new_e, e, f, g
    out = []
    for s, v in zip(state, [a, b, c, d, e, f, g, h]):
        out.append(_mod32(cs, lc_add(_pack(s), _pack(v)), 2 * (2**32 - 1)))
    return out


def sha256_bits(cs: ConstraintSystem, message_bits: list[LC]) -> list[LC]:
    """Digest of a fixed-length bit message; bits are in byte-stream order
    (MSB of byte 0 first), as is the 256-bit result."""
    length = len(message_bits)
    padded = list(message_bits)
    padded.append(lc_const(1))
    while (len(padded) + 64) % 512:
        padded.append(lc_const(0))
    padded.extend(lc_const((length >> i) & 1) for i in range(63, -1, -1))

    state = [_const_word(h) for h in _H0]
    for off in range(0, len(padded), 512):
        block = []
        for t in range(16):
            msb_first = padded[off + 32 * t: off + 32 * (t + 1)]
            block.append(list(reversed(msb_first)))  # to LSB-first
        state = _compress(cs, state, block)
    out = []
    for word in state:
        out.extend(reversed(word))  # back to MSB-first
    return out
