"""Attestation chain construction and native verification."""

from __future__ import annotations

from ..crypto import bjj, eddsa
from ..crypto.encoding import HashConfig, encode_doc_message, encode_role_message, hash_concat_identifiers
from .model import (
    AttestationChain,
    ChainStep,
    DocAttestation,
    DocInfo,
    ModelError,
    ProcessTree,
    RoleAttestation,
    RoleInfo,
)


class ChainBuildError(ValueError):
    """Chain construction failed (missing material or malformed tree)."""


def attest_doc(sk: int, dinfo: DocInfo) -> DocAttestation:
    sig = eddsa.sign(sk, encode_doc_message(dinfo))
    return DocAttestation(dinfo=dinfo, author_pk=eddsa.public_key(sk), sig=sig)


def attest_role(sk: int, subject_pk: bjj.Point, subject_rinfo: RoleInfo) -> RoleAttestation:
    sig = eddsa.sign(sk, encode_role_message(subject_pk, subject_rinfo))
    return RoleAttestation(
        subject_pk=subject_pk,
        subject_rinfo=subject_rinfo,
        attestor_pk=eddsa.public_key(sk),
        sig=sig,
    )


def verify_doc_attestation(att: DocAttestation) -> bool:
    return eddsa.verify(att.author_pk, encode_doc_message(att.dinfo), att.sig)


def verify_role_attestation(att: RoleAttestation) -> bool:
    return eddsa.verify(
        att.attestor_pk, encode_role_message(att.subject_pk, att.subject_rinfo), att.sig
    )


def verify_chain(chain: AttestationChain) -> bool:
    """True iff every attestation in the chain was created by the entry
    above it: the document signature under pk0, then each role signature
    under the next key over the (pk, rinfo) below."""
    try:
        if not eddsa.verify(chain.pk0, encode_doc_message(chain.dinfo), chain.docsig):
            return False
        below_pk, below_rinfo = chain.pk0, chain.rinfo0
        for step in chain.steps:
            msg = encode_role_message(below_pk, below_rinfo)
            if not eddsa.verify(step.pk, msg, step.rolesig):
                return False
            below_pk, below_rinfo = step.pk, step.rinfo
        return True
    except (ValueError, TypeError):
        return False


def pad_chain(
    chain: AttestationChain,
    target_n: int,
    root_keypair: eddsa.KeyPair,
    root_rinfo: RoleInfo,
) -> AttestationChain:
    """Extend a chain to exactly target_n attestations with root
    self-attestations; a chain already at target_n is returned unchanged."""
    if chain.signature_count > target_n:
        raise ChainBuildError(
            f"chain of {chain.signature_count} attestations exceeds target {target_n}"
        )
    if chain.terminal_pk != root_keypair.pk:
        raise ChainBuildError("only chains terminating at the root can be padded")
    steps = list(chain.steps)
    below_pk = chain.terminal_pk
    below_rinfo = chain.rinfos[-1]
    while 1 + len(steps) < target_n:
        sig = eddsa.sign(root_keypair.sk, encode_role_message(below_pk, below_rinfo))
        steps.append(ChainStep(pk=root_keypair.pk, rinfo=root_rinfo, rolesig=sig))
        below_pk, below_rinfo = root_keypair.pk, root_rinfo
    return AttestationChain(
        dinfo=chain.dinfo, pk0=chain.pk0, rinfo0=chain.rinfo0,
        docsig=chain.docsig, steps=tuple(steps),
    )


def chains_from_tree(
    tree: ProcessTree,
    keys: dict[str, eddsa.KeyPair],
    doc_payload_hashes: dict[int, bytes],
    hash_config: HashConfig | None = None,
) -> list[AttestationChain]:
    """One padded, verifying chain per document, in declaration order.

    ``doc_payload_hashes`` maps doctype code to the 32-byte identifier
    digest of the underlying document; references are resolved from the
    tree in declared order.
    """
    hash_config = hash_config or HashConfig()
    tree.validate()
    missing = {r.node_id for r in tree.roles} - set(keys)
    if missing:
        raise ChainBuildError(f"missing keys for roles: {sorted(missing)}")
    for node_id, kp in keys.items():
        if kp.sk == 0:
            raise ChainBuildError(f"key for role {node_id!r} has no secret part")
    missing_docs = {d.doctype for d in tree.documents} - set(doc_payload_hashes)
    if missing_docs:
        raise ChainBuildError(f"missing payload hashes for doctypes: {sorted(missing_docs)}")

    identifiers = {d.doctype: doc_payload_hashes[d.doctype] for d in tree.documents}
    for code, ident in identifiers.items():
        if len(ident) != 32:
            raise ChainBuildError(f"identifier for doctype {code} must be 32 bytes")
    refs = {
        d.doctype: hash_concat_identifiers(
            [identifiers[t] for t in d.references], hash_config
        )
        for d in tree.documents
    }

    root = tree.root
    root_kp = keys[root.node_id]
    chains = []
    for doc in tree.documents:
        dinfo = DocInfo(doctype=doc.doctype, identifier=identifiers[doc.doctype], ref=refs[doc.doctype])
        path = tree.path_to_root(doc.author)
        author = path[0]
        docsig = eddsa.sign(keys[author.node_id].sk, encode_doc_message(dinfo))
        steps = []
        below = author
        for node in path[1:]:
            msg = encode_role_message(keys[below.node_id].pk, below.rinfo)
            sig = eddsa.sign(keys[node.node_id].sk, msg)
            steps.append(ChainStep(pk=keys[node.node_id].pk, rinfo=node.rinfo, rolesig=sig))
            below = node
        chain = AttestationChain(
            dinfo=dinfo, pk0=keys[author.node_id].pk, rinfo0=author.rinfo,
            docsig=docsig, steps=tuple(steps),
        )
        chain = pad_chain(chain, tree.height, root_kp, root.rinfo)
        if not verify_chain(chain):  # pragma: no cover - construction bug guard
            raise ChainBuildError(f"constructed chain for doctype {doc.doctype} does not verify")
        chains.append(chain)
    return chains


def count_signatures(chains: list[AttestationChain]) -> tuple[int, int]:
    """(total signature slots, distinct signature byte strings)."""
    total = 0
    unique = set()
    for chain in chains:
        total += chain.signature_count
        unique.add(chain.docsig.to_bytes())
        for step in chain.steps:
            unique.add(step.rolesig.to_bytes())
    return total, len(unique)
