"""Key files: JSON {scheme_id, sk_hex (optional), pk_hex}, lowercase hex."""

from __future__ import annotations

import json
from pathlib import Path

from . import bjj
from .eddsa import SCHEME_ID, KeyPair, SignatureError, public_key


class KeyFileError(ValueError):
    pass


def dump_keypair(kp: KeyPair, include_secret: bool = True) -> dict:
    doc = {"scheme_id": SCHEME_ID, "pk_hex": kp.pk_bytes().hex()}
    if include_secret:
        doc["sk_hex"] = kp.sk.to_bytes(32, "big").hex()
    return doc


def write_keypair(path: str | Path, kp: KeyPair, include_secret: bool = True) -> None:
    Path(path).write_text(json.dumps(dump_keypair(kp, include_secret), indent=2) + "\n")


def load_key(path: str | Path) -> KeyPair:
    """Load a key file; sk is 0 for public-only files."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise KeyFileError(f"cannot read key file {path}: {e}") from e
    if doc.get("scheme_id") != SCHEME_ID:
        raise KeyFileError(f"unsupported scheme {doc.get('scheme_id')!r}")
    pk = bjj.decompress(bytes.fromhex(doc["pk_hex"]))
    if pk is None:
        raise KeyFileError("public key does not decode to a curve point")
    sk_hex = doc.get("sk_hex")
    if sk_hex is None:
        return KeyPair(sk=0, pk=pk)
    sk = int.from_bytes(bytes.fromhex(sk_hex), "big")
    try:
        derived = public_key(sk)
    except SignatureError as e:
        raise KeyFileError(str(e)) from e
    if derived != pk:
        raise KeyFileError("pk_hex does not match sk_hex")
    return KeyPair(sk=sk, pk=pk)
