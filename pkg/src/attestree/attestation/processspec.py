"""Declarative phase description and its on-disk JSON format.

A ProcessSpec pins everything a proof is relative to: doctype codes,
role hierarchy and permission masks, document authorship and references,
the fixed chain count and height, and the hash configuration.  Its
canonical content hash is embedded in every artifact so mismatched
material is rejected early.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from ..crypto.eddsa import SCHEME_ID
from ..crypto.encoding import HashConfig
from ..policy import ChainPolicyConfig, PhasePolicyConfig
from .model import DocumentNode, ModelError, ProcessTree, RoleInfo, RoleNode

SPEC_SCHEMA = "tot-spec/v1"


class SpecError(ValueError):
    """Malformed process specification."""


@dataclass(frozen=True)
class ProcessSpec:
    name: str
    doctypes: tuple[tuple[str, int], ...]          # (name, single-bit code), slot order
    roles: tuple[tuple[str, str | None, int], ...]  # (role_id, parent, permission mask)
    documents: tuple[tuple[str, str, tuple[str, ...]], ...]  # (doctype, author, references)
    height: int
    hash_config: HashConfig = HashConfig()
    scheme_id: str = SCHEME_ID

    # -- derived views -------------------------------------------------------

    @property
    def chain_count(self) -> int:
        return len(self.documents)

    def doctype_code(self, name: str) -> int:
        for n, code in self.doctypes:
            if n == name:
                return code
        raise SpecError(f"unknown doctype {name!r}")

    def doctype_name(self, code: int) -> str:
        for n, c in self.doctypes:
            if c == code:
                return n
        raise SpecError(f"unknown doctype code {code}")

    @property
    def universe(self) -> int:
        mask = 0
        for _, code in self.doctypes:
            mask |= code
        return mask

    @property
    def root_role(self) -> str:
        roots = [rid for rid, parent, _ in self.roles if parent is None]
        if len(roots) != 1:
            raise SpecError("spec must declare exactly one root role")
        return roots[0]

    @property
    def root_rinfo(self) -> RoleInfo:
        root = self.root_role
        for rid, _, mask in self.roles:
            if rid == root:
                return RoleInfo(mask)
        raise SpecError("root role missing")  # pragma: no cover

    def role_ids(self) -> list[str]:
        return [rid for rid, _, _ in self.roles]

    def tree(self) -> ProcessTree:
        return ProcessTree(
            roles=tuple(
                RoleNode(node_id=rid, rinfo=RoleInfo(mask), parent=parent)
                for rid, parent, mask in self.roles
            ),
            documents=tuple(
                DocumentNode(
                    doctype=self.doctype_code(doc),
                    author=author,
                    references=tuple(self.doctype_code(r) for r in refs),
                )
                for doc, author, refs in self.documents
            ),
            height=self.height,
        )

    def chain_policy(self) -> ChainPolicyConfig:
        return ChainPolicyConfig(universe=self.universe)

    def phase_policy(self) -> PhasePolicyConfig:
        return PhasePolicyConfig(
            slots=tuple(self.doctype_code(doc) for doc, _, _ in self.documents),
            references={
                self.doctype_code(doc): tuple(self.doctype_code(r) for r in refs)
                for doc, _, refs in self.documents
                if refs
            },
        )

    def validate(self) -> None:
        codes = [code for _, code in self.doctypes]
        if len(set(codes)) != len(codes):
            raise SpecError("duplicate doctype codes")
        names = [n for n, _ in self.doctypes]
        if len(set(names)) != len(names):
            raise SpecError("duplicate doctype names")
        for n, code in self.doctypes:
            if code <= 0 or code & (code - 1):
                raise SpecError(f"doctype {n!r} code must be a single bit")
        universe = self.universe
        for rid, _, mask in self.roles:
            if mask & ~universe:
                raise SpecError(f"role {rid!r} grants permissions outside the declared doctypes")
        if self.scheme_id != SCHEME_ID:
            raise SpecError(f"unsupported signature scheme {self.scheme_id!r}")
        try:
            tree = self.tree()
            tree.validate()
        except ModelError as e:
            raise SpecError(str(e)) from e
        self.chain_policy()
        self.phase_policy()

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema": SPEC_SCHEMA,
            "name": self.name,
            "scheme_id": self.scheme_id,
            "hash_config": {"identifier_hash": "sha256", "ref_hash": self.hash_config.ref_hash},
            "height": self.height,
            "chain_count": self.chain_count,
            "doctypes": [{"name": n, "code": c} for n, c in self.doctypes],
            "roles": [
                {"id": rid, "parent": parent, "permissions": mask}
                for rid, parent, mask in self.roles
            ],
            "documents": [
                {"doctype": doc, "author": author, "references": list(refs)}
                for doc, author, refs in self.documents
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ProcessSpec":
        if doc.get("schema") != SPEC_SCHEMA:
            raise SpecError(f"unsupported spec schema {doc.get('schema')!r}")
        spec = cls(
            name=doc["name"],
            doctypes=tuple((d["name"], int(d["code"])) for d in doc["doctypes"]),
            roles=tuple((r["id"], r.get("parent"), int(r["permissions"])) for r in doc["roles"]),
            documents=tuple(
                (d["doctype"], d["author"], tuple(d.get("references", [])))
                for d in doc["documents"]
            ),
            height=int(doc["height"]),
            hash_config=HashConfig(ref_hash=doc.get("hash_config", {}).get("ref_hash", "sha256")),
            scheme_id=doc.get("scheme_id", SCHEME_ID),
        )
        if "chain_count" in doc and int(doc["chain_count"]) != spec.chain_count:
            raise SpecError("chain_count does not match the number of documents")
        spec.validate()
        return spec

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def content_hash(self) -> bytes:
        return hashlib.sha256(self.canonical_json().encode()).digest()

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "ProcessSpec":
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise SpecError(f"cannot read spec {path}: {e}") from e
        return cls.from_dict(doc)
