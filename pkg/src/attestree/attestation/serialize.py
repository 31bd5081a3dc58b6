"""JSON file formats for chains and standalone attestations.

All digests, keys and signatures are lowercase hex without 0x prefixes;
public keys are 32-byte compressed points; signatures 64 bytes.  Chain
files are versioned "tot-chain/v1" and carry the process-description
content hash they were built against.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..crypto import bjj
from ..crypto.eddsa import Signature
from .model import AttestationChain, ChainStep, DocAttestation, DocInfo, ModelError, RoleAttestation, RoleInfo

CHAIN_SCHEMA = "tot-chain/v1"
DOC_ATT_SCHEMA = "tot-docatt/v1"
ROLE_ATT_SCHEMA = "tot-roleatt/v1"


class SerializeError(ValueError):
    """Malformed attestation or chain file."""


def _pk_hex(pk: bjj.Point) -> str:
    return bjj.compress(pk).hex()


def _pk_parse(hexstr: str) -> bjj.Point:
    try:
        pk = bjj.decompress(bytes.fromhex(hexstr))
    except ValueError as e:
        raise SerializeError(f"bad public key hex: {e}") from e
    if pk is None:
        raise SerializeError("public key does not decode to a curve point")
    return pk


def _sig_parse(hexstr: str) -> Signature:
    try:
        return Signature.from_bytes(bytes.fromhex(hexstr))
    except ValueError as e:
        raise SerializeError(f"bad signature: {e}") from e


def chain_to_dict(chain: AttestationChain, spec_hash: bytes, slot: int) -> dict:
    return {
        "schema": CHAIN_SCHEMA,
        "spec_hash": spec_hash.hex(),
        "slot": slot,
        "dinfo": {
            "doctype": chain.dinfo.doctype,
            "identifier": chain.dinfo.identifier.hex(),
            "ref": chain.dinfo.ref.hex(),
        },
        "pk0": _pk_hex(chain.pk0),
        "rinfo0": chain.rinfo0.permissions,
        "docsig": chain.docsig.to_bytes().hex(),
        "steps": [
            {"pk": _pk_hex(s.pk), "rinfo": s.rinfo.permissions, "rolesig": s.rolesig.to_bytes().hex()}
            for s in chain.steps
        ],
    }


def chain_from_dict(doc: dict, expected_spec_hash: bytes | None = None) -> tuple[AttestationChain, int]:
    """Parse a chain file dict; returns (chain, slot index)."""
    try:
        if doc.get("schema") != CHAIN_SCHEMA:
            raise SerializeError(f"unsupported chain schema {doc.get('schema')!r}")
        if expected_spec_hash is not None and doc["spec_hash"] != expected_spec_hash.hex():
            raise SerializeError("chain was built against a different process description")
        d = doc["dinfo"]
        dinfo = DocInfo(
            doctype=int(d["doctype"]),
            identifier=bytes.fromhex(d["identifier"]),
            ref=bytes.fromhex(d["ref"]),
        )
        steps = tuple(
            ChainStep(pk=_pk_parse(s["pk"]), rinfo=RoleInfo(int(s["rinfo"])), rolesig=_sig_parse(s["rolesig"]))
            for s in doc.get("steps", [])
        )
        chain = AttestationChain(
            dinfo=dinfo,
            pk0=_pk_parse(doc["pk0"]),
            rinfo0=RoleInfo(int(doc["rinfo0"])),
            docsig=_sig_parse(doc["docsig"]),
            steps=steps,
        )
        return chain, int(doc["slot"])
    except (KeyError, TypeError, ValueError, ModelError) as e:
        if isinstance(e, SerializeError):
            raise
        raise SerializeError(f"malformed chain file: {e}") from e


def write_chain(path: str | Path, chain: AttestationChain, spec_hash: bytes, slot: int) -> None:
    Path(path).write_text(json.dumps(chain_to_dict(chain, spec_hash, slot), indent=2) + "\n")


def read_chain(path: str | Path, expected_spec_hash: bytes | None = None) -> tuple[AttestationChain, int]:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise SerializeError(f"cannot read chain file {path}: {e}") from e
    return chain_from_dict(doc, expected_spec_hash)


def doc_attestation_to_dict(att: DocAttestation, spec_hash: bytes) -> dict:
    return {
        "schema": DOC_ATT_SCHEMA,
        "spec_hash": spec_hash.hex(),
        "doctype": att.dinfo.doctype,
        "identifier": att.dinfo.identifier.hex(),
        "ref": att.dinfo.ref.hex(),
        "author_pk": _pk_hex(att.author_pk),
        "sig": att.sig.to_bytes().hex(),
    }


def doc_attestation_from_dict(doc: dict) -> DocAttestation:
    try:
        if doc.get("schema") != DOC_ATT_SCHEMA:
            raise SerializeError(f"unsupported document attestation schema {doc.get('schema')!r}")
        return DocAttestation(
            dinfo=DocInfo(
                doctype=int(doc["doctype"]),
                identifier=bytes.fromhex(doc["identifier"]),
                ref=bytes.fromhex(doc["ref"]),
            ),
            author_pk=_pk_parse(doc["author_pk"]),
            sig=_sig_parse(doc["sig"]),
        )
    except (KeyError, TypeError, ValueError, ModelError) as e:
        if isinstance(e, SerializeError):
            raise
        raise SerializeError(f"malformed document attestation: {e}") from e


def role_attestation_to_dict(att: RoleAttestation) -> dict:
    return {
        "schema": ROLE_ATT_SCHEMA,
        "subject_pk": _pk_hex(att.subject_pk),
        "permissions": att.subject_rinfo.permissions,
        "attestor_pk": _pk_hex(att.attestor_pk),
        "sig": att.sig.to_bytes().hex(),
    }


def role_attestation_from_dict(doc: dict) -> RoleAttestation:
    try:
        if doc.get("schema") != ROLE_ATT_SCHEMA:
            raise SerializeError(f"unsupported role attestation schema {doc.get('schema')!r}")
        return RoleAttestation(
            subject_pk=_pk_parse(doc["subject_pk"]),
            subject_rinfo=RoleInfo(int(doc["permissions"])),
            attestor_pk=_pk_parse(doc["attestor_pk"]),
            sig=_sig_parse(doc["sig"]),
        )
    except (KeyError, TypeError, ValueError, ModelError) as e:
        if isinstance(e, SerializeError):
            raise
        raise SerializeError(f"malformed role attestation: {e}") from e
