"""Deterministic Schnorr-style signatures over the embedded curve.

Scheme id "eddsa-poseidon-bjj/v1": EdDSA-shaped with the challenge hash
replaced by the Poseidon sponge so the verification equation

    S * BASE == R + H(R, A, msg) * A

is a handful of field operations both natively and as circuit
constraints.  Messages are vectors of field elements (see
:mod:`.encoding`); signatures are 64 bytes (compressed nonce point,
then S big-endian).
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass

from . import bjj, poseidon
from .encoding import Message, SPONGE_CHALLENGE, SPONGE_KEYSEED, SPONGE_NONCE

SCHEME_ID = "eddsa-poseidon-bjj/v1"
SIGNATURE_LEN = 64


class SignatureError(ValueError):
    """Malformed key or signature material."""


@dataclass(frozen=True)
class Signature:
    r_point: bjj.Point
    s: int

    def to_bytes(self) -> bytes:
        return bjj.compress(self.r_point) + self.s.to_bytes(32, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Signature":
        if len(data) != SIGNATURE_LEN:
            raise SignatureError(f"signature must be {SIGNATURE_LEN} bytes")
        r_point = bjj.decompress(data[:32])
        if r_point is None:
            raise SignatureError("nonce point does not decode")
        return cls(r_point=r_point, s=int.from_bytes(data[32:], "big"))


@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: bjj.Point

    def pk_bytes(self) -> bytes:
        return bjj.compress(self.pk)


def _scalar_from_seed(seed: bytes) -> int:
    # Domain-separated extendable expansion, then reduce into the subgroup.
    raw = hashlib.shake_256(b"attestree/" + SCHEME_ID.encode() + b"/keygen|" + seed).digest(64)
    sk = int.from_bytes(raw, "big") % bjj.L
    return sk if sk else 1


def kgen(seed: bytes | None = None) -> KeyPair:
    """Key generation; deterministic when a 32-byte seed is supplied."""
    if seed is not None:
        if len(seed) != 32:
            raise SignatureError("seed must be exactly 32 bytes")
        sk = _scalar_from_seed(seed)
    else:
        sk = secrets.randbelow(bjj.L - 1) + 1
    return KeyPair(sk=sk, pk=bjj.mul(bjj.BASE, sk))


def public_key(sk: int) -> bjj.Point:
    if not 0 < sk < bjj.L:
        raise SignatureError("secret scalar out of range")
    return bjj.mul(bjj.BASE, sk)


def challenge(r_point: bjj.Point, pk: bjj.Point, msg: Message) -> int:
    return poseidon.digest(
        [r_point[0], r_point[1], pk[0], pk[1], *msg], domain=SPONGE_CHALLENGE
    )


def sign(sk: int, msg: Message) -> Signature:
    """Deterministic signature; rejects empty messages."""
    if not msg:
        raise SignatureError("refusing to sign an empty message")
    if not 0 < sk < bjj.L:
        raise SignatureError("secret scalar out of range")
    nonce = poseidon.digest([sk, *msg], domain=SPONGE_NONCE) % bjj.L
    if nonce == 0:
        nonce = 1
    r_point = bjj.mul(bjj.BASE, nonce)
    h = challenge(r_point, public_key(sk), msg)
    s = (nonce + h * sk) % bjj.L
    return Signature(r_point=r_point, s=s)


def verify(pk: bjj.Point, msg: Message, sig: Signature | bytes) -> bool:
    """True iff the signature is valid; malformed inputs give False."""
    try:
        if isinstance(sig, (bytes, bytearray)):
            sig = Signature.from_bytes(bytes(sig))
        if not msg:
            return False
        if not (bjj.is_on_curve(pk) and bjj.is_on_curve(sig.r_point)):
            return False
        if not 0 <= sig.s < bjj.L:
            return False
        h = challenge(sig.r_point, pk, msg)
        lhs = bjj.mul(bjj.BASE, sig.s)
        rhs = bjj.add(sig.r_point, bjj.mul(pk, h))
        return lhs == rhs
    except (SignatureError, ValueError, TypeError):
        return False


def derive_seed(*parts: bytes) -> bytes:
    """Utility for fixture generation: 32-byte seed from labeled parts."""
    h = hashlib.sha256()
    for p in parts:
        h.update(len(p).to_bytes(4, "big"))
        h.update(p)
    return h.digest()
