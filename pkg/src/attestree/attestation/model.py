"""Domain model: documents, roles, attestations, chains, and the process tree.

Chain length convention: a process of height ``n`` pads every chain to
exactly ``n`` attestations (one document attestation plus ``n - 1`` role
attestations), so a phase of ``l`` documents always carries ``l * n``
signature slots.  ``steps[i]`` holds the key and role of the attestor one
level above, together with that attestor's signature over the entry below.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..crypto import bjj
from ..crypto.eddsa import Signature


class ModelError(ValueError):
    """Structurally invalid domain value."""


@dataclass(frozen=True)
class DocInfo:
    doctype: int
    identifier: bytes  # SHA-256 of the document payload
    ref: bytes         # digest over referenced identifiers

    def __post_init__(self):
        if self.doctype <= 0 or self.doctype & (self.doctype - 1):
            raise ModelError("doctype must have exactly one bit set")
        if len(self.identifier) != 32 or len(self.ref) != 32:
            raise ModelError("identifier and ref must be 32 bytes")


@dataclass(frozen=True)
class RoleInfo:
    permissions: int  # bitmask over doctype codes

    def __post_init__(self):
        if self.permissions < 0:
            raise ModelError("permission mask must be non-negative")

    def allows(self, doctype: int) -> bool:
        return bool(self.permissions & doctype)

    def subset_of(self, other: "RoleInfo | int") -> bool:
        mask = other.permissions if isinstance(other, RoleInfo) else other
        return self.permissions & ~mask == 0


@dataclass(frozen=True)
class DocAttestation:
    dinfo: DocInfo
    author_pk: bjj.Point
    sig: Signature


@dataclass(frozen=True)
class RoleAttestation:
    subject_pk: bjj.Point
    subject_rinfo: RoleInfo
    attestor_pk: bjj.Point
    sig: Signature


@dataclass(frozen=True)
class ChainStep:
    pk: bjj.Point
    rinfo: RoleInfo
    rolesig: Signature  # by pk, over the (pk, rinfo) of the entry below


@dataclass(frozen=True)
class AttestationChain:
    dinfo: DocInfo
    pk0: bjj.Point
    rinfo0: RoleInfo
    docsig: Signature
    steps: tuple[ChainStep, ...]

    @property
    def signature_count(self) -> int:
        return 1 + len(self.steps)

    @property
    def terminal_pk(self) -> bjj.Point:
        return self.steps[-1].pk if self.steps else self.pk0

    @property
    def rinfos(self) -> tuple[RoleInfo, ...]:
        return (self.rinfo0, *(s.rinfo for s in self.steps))

    def entries(self) -> tuple[tuple[bjj.Point, RoleInfo], ...]:
        return ((self.pk0, self.rinfo0), *((s.pk, s.rinfo) for s in self.steps))


ROOT = None  # parent marker for the root role


@dataclass(frozen=True)
class RoleNode:
    node_id: str
    rinfo: RoleInfo
    parent: str | None  # None marks the root


@dataclass(frozen=True)
class DocumentNode:
    doctype: int
    author: str
    references: tuple[int, ...] = ()  # referenced doctype codes, in order


@dataclass(frozen=True)
class ProcessTree:
    roles: tuple[RoleNode, ...]
    documents: tuple[DocumentNode, ...]
    height: int

    @property
    def chain_count(self) -> int:
        return len(self.documents)

    @property
    def root(self) -> RoleNode:
        return next(r for r in self.roles if r.parent is None)

    def role_map(self) -> dict[str, RoleNode]:
        return {r.node_id: r for r in self.roles}

    def path_to_root(self, node_id: str) -> list[RoleNode]:
        """Role nodes from the given node up to and including the root."""
        roles = self.role_map()
        path = []
        cur: str | None = node_id
        seen = set()
        while cur is not None:
            if cur in seen:
                raise ModelError(f"role parent cycle at {cur!r}")
            seen.add(cur)
            node = roles.get(cur)
            if node is None:
                raise ModelError(f"unknown role {cur!r}")
            path.append(node)
            cur = node.parent
        return path

    def validate(self) -> None:
        if self.height < 1:
            raise ModelError("height must be at least 1")
        ids = [r.node_id for r in self.roles]
        if len(set(ids)) != len(ids):
            raise ModelError("duplicate role ids")
        roots = [r for r in self.roles if r.parent is None]
        if len(roots) != 1:
            raise ModelError(f"expected exactly one root role, found {len(roots)}")
        for r in self.roles:
            self.path_to_root(r.node_id)  # raises on cycles / missing parents
        codes = [d.doctype for d in self.documents]
        if len(set(codes)) != len(codes):
            raise ModelError("each doctype may be authored exactly once per phase")
        declared = set(codes)
        role_ids = set(ids)
        for d in self.documents:
            if d.doctype <= 0 or d.doctype & (d.doctype - 1):
                raise ModelError("doctype codes must be single bits")
            if d.author not in role_ids:
                raise ModelError(f"document author {d.author!r} is not a declared role")
            for ref in d.references:
                if ref not in declared:
                    raise ModelError(f"reference to undeclared doctype {ref}")
        self._check_reference_dag()
        for d in self.documents:
            depth = len(self.path_to_root(d.author))  # edges doc->author->...->root
            if depth > self.height:
                raise ModelError(
                    f"document {d.doctype} needs {depth} attestations, exceeding height {self.height}"
                )

    def _check_reference_dag(self) -> None:
        refs = {d.doctype: d.references for d in self.documents}
        state: dict[int, int] = {}

        def visit(code: int, stack: tuple[int, ...]) -> None:
            if state.get(code) == 2:
                return
            if state.get(code) == 1:
                raise ModelError(f"reference cycle through doctype {code}")
            state[code] = 1
            for nxt in refs.get(code, ()):
                visit(nxt, stack + (code,))
            state[code] = 2

        for code in refs:
            visit(code, ())
