"""Attestation trees with zero-knowledge phase proofs.

Hierarchical business processes are modelled as a tree of roles issuing
documents; every document carries an attestation chain up to the root
attestor, and a zk-SNARK proves that all chains verify, terminate at the
root key, and satisfy the configured business rules, without revealing
participants or documents.
"""

from .attestation.chains import (
    attest_doc,
    attest_role,
    chains_from_tree,
    count_signatures,
    pad_chain,
    verify_chain,
)
from .attestation.model import (
    AttestationChain,
    ChainStep,
    DocAttestation,
    DocInfo,
    ProcessTree,
    RoleAttestation,
    RoleInfo,
)
from .attestation.processspec import ProcessSpec
from .crypto.eddsa import KeyPair, Signature, kgen, sign, verify
from .crypto.encoding import (
    HashConfig,
    Message,
    encode_doc_message,
    encode_role_message,
    hash_concat_identifiers,
)
from .policy import (
    ChainPolicyConfig,
    PhasePolicyConfig,
    chain_policy_eval,
    compute_ref,
    phase_policy_eval,
)
from .policy.railway import railway_phase1_spec
from .snark.relation import RelationParams, build_witness, public_inputs, synthesize

__version__ = "0.1.0"

__all__ = [
    "AttestationChain", "ChainStep", "ChainPolicyConfig", "DocAttestation", "DocInfo",
    "HashConfig", "KeyPair", "Message", "PhasePolicyConfig", "ProcessSpec", "ProcessTree",
    "RelationParams", "RoleAttestation", "RoleInfo", "Signature",
    "attest_doc", "attest_role", "build_witness", "chain_policy_eval", "chains_from_tree",
    "compute_ref", "count_signatures", "encode_doc_message", "encode_role_message",
    "hash_concat_identifiers", "kgen", "pad_chain", "phase_policy_eval", "public_inputs",
    "railway_phase1_spec", "sign", "synthesize", "verify", "verify_chain",
]
