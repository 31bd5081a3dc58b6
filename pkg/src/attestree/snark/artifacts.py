"""Binary files for circuit artifacts and the verifier-export bundle.

Every artifact starts with a 16-byte magic, a format version, and the
32-byte content hash of the process description it was built for; loads
verify the magic and version, and the proving/verification layer rejects
context mismatches.  Points are fixed-width big-endian coordinates
(all-zero blocks are the identity), so proof files are constant size.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

from . import bn254 as ec
from .groth16 import Proof, ProvingKey, VerificationKey

FORMAT_VERSION = 1

MAGIC_PK = b"attestree/pk\x00\x00\x00\x00"
MAGIC_VK = b"attestree/vk\x00\x00\x00\x00"
MAGIC_PROOF = b"attestree/prf\x00\x00\x00"

VERIFIER_EXPORT_SCHEMA = "tot-verifier/v1"


class ArtifactError(ValueError):
    """Unreadable or mismatched artifact file."""


def _g1_bytes(p: ec.G1Point) -> bytes:
    if p is None:
        return bytes(64)
    return p[0].to_bytes(32, "big") + p[1].to_bytes(32, "big")


def _g1_parse(data: bytes, off: int) -> tuple[ec.G1Point, int]:
    x = int.from_bytes(data[off: off + 32], "big")
    y = int.from_bytes(data[off + 32: off + 64], "big")
    return (None if x == 0 and y == 0 else (x, y)), off + 64


def _g2_bytes(p: ec.G2Point) -> bytes:
    if p is None:
        return bytes(128)
    (x0, x1), (y0, y1) = p
    return b"".join(v.to_bytes(32, "big") for v in (x0, x1, y0, y1))


def _g2_parse(data: bytes, off: int) -> tuple[ec.G2Point, int]:
    vals = [int.from_bytes(data[off + 32 * i: off + 32 * (i + 1)], "big") for i in range(4)]
    off += 128
    if all(v == 0 for v in vals):
        return None, off
    return ((vals[0], vals[1]), (vals[2], vals[3])), off


def _header(magic: bytes, context: bytes) -> bytes:
    if len(context) != 32:
        raise ArtifactError("context hash must be 32 bytes")
    return magic + struct.pack(">I", FORMAT_VERSION) + context


def _check_header(data: bytes, magic: bytes, what: str) -> bytes:
    if len(data) < 52 or data[:16] != magic:
        raise ArtifactError(f"not a {what} file")
    version = struct.unpack(">I", data[16:20])[0]
    if version != FORMAT_VERSION:
        raise ArtifactError(f"unsupported {what} format version {version}")
    return data[20:52]


# ---------------------------------------------------------------------------
# Proof
# ---------------------------------------------------------------------------

def proof_to_bytes(proof: Proof) -> bytes:
    return (
        _header(MAGIC_PROOF, proof.context)
        + _g1_bytes(proof.a) + _g2_bytes(proof.b) + _g1_bytes(proof.c)
    )


def proof_from_bytes(data: bytes) -> Proof:
    context = _check_header(data, MAGIC_PROOF, "proof")
    if len(data) != 52 + 64 + 128 + 64:
        raise ArtifactError("proof file has the wrong size")
    a, off = _g1_parse(data, 52)
    b, off = _g2_parse(data, off)
    c, off = _g1_parse(data, off)
    return Proof(a=a, b=b, c=c, context=context)


# ---------------------------------------------------------------------------
# Verification key
# ---------------------------------------------------------------------------

def vk_to_bytes(vk: VerificationKey) -> bytes:
    parts = [
        _header(MAGIC_VK, vk.context),
        _g1_bytes(vk.alpha1), _g2_bytes(vk.beta2), _g2_bytes(vk.gamma2), _g2_bytes(vk.delta2),
        struct.pack(">I", len(vk.ic)),
    ]
    parts.extend(_g1_bytes(p) for p in vk.ic)
    return b"".join(parts)


def vk_from_bytes(data: bytes) -> VerificationKey:
    context = _check_header(data, MAGIC_VK, "verification key")
    off = 52
    alpha1, off = _g1_parse(data, off)
    beta2, off = _g2_parse(data, off)
    gamma2, off = _g2_parse(data, off)
    delta2, off = _g2_parse(data, off)
    (count,) = struct.unpack(">I", data[off: off + 4])
    off += 4
    ic = []
    for _ in range(count):
        p, off = _g1_parse(data, off)
        ic.append(p)
    return VerificationKey(
        alpha1=alpha1, beta2=beta2, gamma2=gamma2, delta2=delta2, ic=ic, context=context
    )


# ---------------------------------------------------------------------------
# Proving key
# ---------------------------------------------------------------------------

def write_proving_key(path: str | Path, pk: ProvingKey) -> None:
    with open(path, "wb") as fh:
        fh.write(_header(MAGIC_PK, pk.context))
        fh.write(struct.pack(">II", pk.num_public, pk.domain))
        for vec, writer in (
            (pk.a_query, _g1_bytes), (pk.b1_query, _g1_bytes), (pk.b2_query, _g2_bytes),
            (pk.l_query, _g1_bytes), (pk.h_query, _g1_bytes),
        ):
            fh.write(struct.pack(">I", len(vec)))
            for p in vec:
                fh.write(writer(p))
        fh.write(_g1_bytes(pk.alpha1))
        fh.write(_g1_bytes(pk.beta1))
        fh.write(_g1_bytes(pk.delta1))
        fh.write(_g2_bytes(pk.beta2))
        fh.write(_g2_bytes(pk.delta2))


def read_proving_key(path: str | Path) -> ProvingKey:
    data = Path(path).read_bytes()
    context = _check_header(data, MAGIC_PK, "proving key")
    num_public, domain = struct.unpack(">II", data[52:60])
    off = 60
    vectors = []
    for parser in (_g1_parse, _g1_parse, _g2_parse, _g1_parse, _g1_parse):
        (count,) = struct.unpack(">I", data[off: off + 4])
        off += 4
        vec = []
        for _ in range(count):
            p, off = parser(data, off)
            vec.append(p)
        vectors.append(vec)
    a_query, b1_query, b2_query, l_query, h_query = vectors
    alpha1, off = _g1_parse(data, off)
    beta1, off = _g1_parse(data, off)
    delta1, off = _g1_parse(data, off)
    beta2, off = _g2_parse(data, off)
    delta2, off = _g2_parse(data, off)
    return ProvingKey(
        alpha1=alpha1, beta1=beta1, delta1=delta1, beta2=beta2, delta2=delta2,
        a_query=a_query, b1_query=b1_query, b2_query=b2_query,
        l_query=l_query, h_query=h_query,
        num_public=num_public, domain=domain, context=context,
    )


# ---------------------------------------------------------------------------
# Verifier export
# ---------------------------------------------------------------------------

def verifier_export(vk: VerificationKey) -> dict:
    """JSON-ready bundle for external verifiers: the verification key plus
    the public-input layout (contract generation is out of scope)."""
    return {
        "schema": VERIFIER_EXPORT_SCHEMA,
        "proof_system": "groth16",
        "curve": "bn254",
        "process_spec_hash": vk.context.hex(),
        "public_input_layout": ["root_pk_x", "root_pk_y"],
        "verification_key": {
            "alpha1": _g1_bytes(vk.alpha1).hex(),
            "beta2": _g2_bytes(vk.beta2).hex(),
            "gamma2": _g2_bytes(vk.gamma2).hex(),
            "delta2": _g2_bytes(vk.delta2).hex(),
            "ic": [_g1_bytes(p).hex() for p in vk.ic],
        },
    }


def write_verifier_export(path: str | Path, vk: VerificationKey) -> None:
    Path(path).write_text(json.dumps(verifier_export(vk), indent=2) + "\n")
