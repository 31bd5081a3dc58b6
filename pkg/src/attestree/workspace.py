"""On-disk workspace layout for a process phase.

    <root>/process_spec.json
    <root>/keys/<role>.json
    <root>/documents/<DOCTYPE>.bin
    <root>/attestations/doc_<DOCTYPE>.json, role_<subject>.json
    <root>/chains/chain_<slot>_<DOCTYPE>.json
    <root>/artifacts/{proving_key.bin, verification_key.bin, proof.bin, verifier.json}

Artifacts embed the process-description content hash; loading anything
against a different spec is a hard error raised here or by the artifact
layer.
"""

from __future__ import annotations

import json
from pathlib import Path

from .attestation.model import AttestationChain
from .attestation.processspec import ProcessSpec, SpecError
from .attestation.serialize import SerializeError, read_chain, write_chain
from .crypto.eddsa import KeyPair
from .crypto.keyfile import load_key, write_keypair


class WorkspaceError(ValueError):
    pass


class Workspace:
    SPEC_FILE = "process_spec.json"

    def __init__(self, root: str | Path):
        self.root = Path(root)

    # -- paths ---------------------------------------------------------------

    @property
    def spec_path(self) -> Path:
        return self.root / self.SPEC_FILE

    @property
    def keys_dir(self) -> Path:
        return self.root / "keys"

    @property
    def documents_dir(self) -> Path:
        return self.root / "documents"

    @property
    def attestations_dir(self) -> Path:
        return self.root / "attestations"

    @property
    def chains_dir(self) -> Path:
        return self.root / "chains"

    @property
    def artifacts_dir(self) -> Path:
        return self.root / "artifacts"

    def key_path(self, role_id: str) -> Path:
        return self.keys_dir / f"{role_id}.json"

    def doc_attestation_path(self, doctype_name: str) -> Path:
        return self.attestations_dir / f"doc_{doctype_name}.json"

    def chain_path(self, slot: int, doctype_name: str) -> Path:
        return self.chains_dir / f"chain_{slot}_{doctype_name}.json"

    def ensure_layout(self) -> None:
        for d in (self.root, self.keys_dir, self.documents_dir,
                  self.attestations_dir, self.chains_dir, self.artifacts_dir):
            d.mkdir(parents=True, exist_ok=True)

    # -- content --------------------------------------------------------------

    def load_spec(self) -> ProcessSpec:
        if not self.spec_path.exists():
            raise WorkspaceError(f"no {self.SPEC_FILE} in workspace {self.root}")
        try:
            return ProcessSpec.load(self.spec_path)
        except SpecError as e:
            raise WorkspaceError(str(e)) from e

    def load_keys(self, spec: ProcessSpec) -> dict[str, KeyPair]:
        keys = {}
        for rid in spec.role_ids():
            path = self.key_path(rid)
            if not path.exists():
                raise WorkspaceError(f"missing key file for role {rid!r}: {path}")
            keys[rid] = load_key(path)
        return keys

    def write_key(self, role_id: str, kp: KeyPair) -> Path:
        self.keys_dir.mkdir(parents=True, exist_ok=True)
        path = self.key_path(role_id)
        write_keypair(path, kp)
        return path

    def doc_identifiers(self, spec: ProcessSpec) -> dict[int, bytes]:
        """Identifier digests recorded by document attestations so far."""
        out = {}
        for name, code in spec.doctypes:
            path = self.doc_attestation_path(name)
            if path.exists():
                doc = json.loads(path.read_text())
                out[code] = bytes.fromhex(doc["identifier"])
        return out

    def write_chains(self, spec: ProcessSpec, chains: list[AttestationChain]) -> list[Path]:
        self.chains_dir.mkdir(parents=True, exist_ok=True)
        spec_hash = spec.content_hash()
        paths = []
        for slot, chain in enumerate(chains):
            name = spec.doctype_name(chain.dinfo.doctype)
            path = self.chain_path(slot, name)
            write_chain(path, chain, spec_hash, slot)
            paths.append(path)
        return paths

    def load_chains(self, spec: ProcessSpec) -> list[AttestationChain]:
        """All chain files, ordered by slot; the set must be complete."""
        spec_hash = spec.content_hash()
        found: dict[int, AttestationChain] = {}
        if not self.chains_dir.exists():
            raise WorkspaceError(f"no chains directory in workspace {self.root}")
        for path in sorted(self.chains_dir.glob("chain_*.json")):
            try:
                chain, slot = read_chain(path, spec_hash)
            except SerializeError as e:
                raise WorkspaceError(f"{path}: {e}") from e
            found[slot] = chain
        missing = set(range(spec.chain_count)) - set(found)
        if missing:
            raise WorkspaceError(f"missing chain files for slots {sorted(missing)}")
        return [found[i] for i in range(spec.chain_count)]
