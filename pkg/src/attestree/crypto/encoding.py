"""Message encoding and reference hashing shared by signing and the circuit.

Signed payloads are fixed-width vectors of field elements with a leading
domain-separator constant, so the same layout feeds the native signature
scheme and the circuit's witness.  256-bit digests do not fit one field
element and are carried as (high, low) 128-bit halves.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import poseidon
from ..snark.field import R

# Leading elements of every signed message; distinct per payload kind.
DOC_DOMAIN = 1
ROLE_DOMAIN = 2

# Poseidon sponge domains (kept distinct from each other).
SPONGE_REF = 11
SPONGE_CHALLENGE = 12
SPONGE_NONCE = 13
SPONGE_KEYSEED = 14

Message = tuple[int, ...]

SHA256_EMPTY = hashlib.sha256(b"").digest()


class EncodingError(ValueError):
    """Payload cannot be encoded as a signable message."""


@dataclass(frozen=True)
class HashConfig:
    """Hash roles: document identifiers are always SHA-256; the reference
    digest is SHA-256 by default with an algebraic (Poseidon) option that
    is cheap inside the circuit.  Proofs are only valid against the
    matching configuration."""

    ref_hash: str = "sha256"
    identifier_hash: str = "sha256"

    def __post_init__(self):
        if self.identifier_hash != "sha256":
            raise EncodingError("identifier hash is fixed to sha256")
        if self.ref_hash not in ("sha256", "poseidon"):
            raise EncodingError(f"unsupported ref hash {self.ref_hash!r}")


def split_digest(digest: bytes) -> tuple[int, int]:
    """(high, low) 128-bit halves of a 32-byte digest."""
    if len(digest) != 32:
        raise EncodingError("digest must be exactly 32 bytes")
    v = int.from_bytes(digest, "big")
    return v >> 128, v & ((1 << 128) - 1)


def join_digest(hi: int, lo: int) -> bytes:
    return ((hi << 128) | lo).to_bytes(32, "big")


def encode_doc_message(dinfo) -> Message:
    """[doc-domain, doctype, id_hi, id_lo, ref_hi, ref_lo]."""
    if dinfo.doctype <= 0 or dinfo.doctype & (dinfo.doctype - 1):
        raise EncodingError("doctype must have exactly one bit set")
    id_hi, id_lo = split_digest(dinfo.identifier)
    ref_hi, ref_lo = split_digest(dinfo.ref)
    return (DOC_DOMAIN, dinfo.doctype, id_hi, id_lo, ref_hi, ref_lo)


def encode_role_message(pk, rinfo) -> Message:
    """[role-domain, pk.x, pk.y, permissions].

    The public key is embedded by coordinates (they are already field
    elements); note other implementations may hash it instead.
    """
    permissions = rinfo.permissions if hasattr(rinfo, "permissions") else int(rinfo)
    if permissions < 0 or permissions >= R:
        raise EncodingError("permission mask out of range")
    x, y = pk
    return (ROLE_DOMAIN, x, y, permissions)


def hash_concat_identifiers(ids: Sequence[bytes] | Iterable[bytes], cfg: HashConfig | None = None) -> bytes:
    """Digest of the ordered identifier concatenation per the configured
    reference hash; 32 bytes either way."""
    cfg = cfg or HashConfig()
    id_list = list(ids)
    for ident in id_list:
        if len(ident) != 32:
            raise EncodingError("identifiers must be 32-byte digests")
    if cfg.ref_hash == "sha256":
        return hashlib.sha256(b"".join(id_list)).digest()
    elements: list[int] = []
    for ident in id_list:
        hi, lo = split_digest(ident)
        elements.extend((hi, lo))
    return poseidon.digest(elements, domain=SPONGE_REF).to_bytes(32, "big")
