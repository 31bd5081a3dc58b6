"""The process-phase relation: every chain verifies, terminates at the
root key, and satisfies the chain policy; the document set satisfies the
phase policy.

Statement: the root public key (two field elements).  Witness: per chain,
the document descriptor, the (pk, rinfo) entries from author to root, and
the n signatures.  Constraint groups are labeled doc-sig(i),
role-sig(i,j), root-equality(i), chain-policy(i) and phase-policy so
proving failures name the first violated check.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..attestation.model import AttestationChain
from ..attestation.processspec import ProcessSpec
from ..crypto import bjj
from ..crypto.encoding import (
    DOC_DOMAIN,
    ROLE_DOMAIN,
    SPONGE_REF,
    HashConfig,
    hash_concat_identifiers,
    split_digest,
)
from ..policy import ChainPolicyConfig, PhasePolicyConfig
from .gadgets import bits_of, enforce_eq, mul, poseidon_digest, verify_signature
from .r1cs import LC, ConstraintSystem, lc, lc_add, lc_const, lc_scale, lc_sub
from .sha256_gadget import sha256_bits


class RelationError(ValueError):
    """Witness material does not fit the relation's fixed shape."""


@dataclass(frozen=True)
class RelationParams:
    chain_count: int
    height: int
    chain_policy: ChainPolicyConfig
    phase_policy: PhasePolicyConfig
    hash_config: HashConfig = HashConfig()

    def __post_init__(self):
        if self.chain_count < 1 or self.height < 1:
            raise RelationError("chain count and height must be positive")
        if len(self.phase_policy.slots) != self.chain_count:
            raise RelationError("phase policy must declare one doctype slot per chain")

    @classmethod
    def from_spec(cls, spec: ProcessSpec) -> "RelationParams":
        return cls(
            chain_count=spec.chain_count,
            height=spec.height,
            chain_policy=spec.chain_policy(),
            phase_policy=spec.phase_policy(),
            hash_config=spec.hash_config,
        )


def public_inputs(rpk: bjj.Point) -> list[int]:
    """The statement is exactly the root public key's coordinates."""
    return [rpk[0], rpk[1]]


@dataclass
class _ChainWires:
    doctype: LC
    id_hi: LC
    id_lo: LC
    ref_hi: LC
    ref_lo: LC
    entries: list[tuple[LC, LC, LC]]   # (pk.x, pk.y, rinfo) from author upward
    sigs: list[tuple[LC, LC, LC]]      # (R.x, R.y, S); index 0 is the doc signature


def _alloc_chain(cs: ConstraintSystem, params: RelationParams, chain: AttestationChain | None) -> _ChainWires:
    n = params.height

    def a(v):
        return lc(cs.alloc(v))

    if chain is None:
        vals = {}
    else:
        id_hi, id_lo = split_digest(chain.dinfo.identifier)
        ref_hi, ref_lo = split_digest(chain.dinfo.ref)
        entries = chain.entries()
        sigs = [chain.docsig, *(s.rolesig for s in chain.steps)]
        vals = {
            "doctype": chain.dinfo.doctype, "id_hi": id_hi, "id_lo": id_lo,
            "ref_hi": ref_hi, "ref_lo": ref_lo,
            "entries": [(pk[0], pk[1], r.permissions) for pk, r in entries],
            "sigs": [(s.r_point[0], s.r_point[1], s.s) for s in sigs],
        }

    def v(key, j=None, k=None):
        if chain is None:
            return None
        item = vals[key]
        return item if j is None else item[j][k]

    return _ChainWires(
        doctype=a(v("doctype")),
        id_hi=a(v("id_hi")), id_lo=a(v("id_lo")),
        ref_hi=a(v("ref_hi")), ref_lo=a(v("ref_lo")),
        entries=[(a(v("entries", j, 0)), a(v("entries", j, 1)), a(v("entries", j, 2))) for j in range(n)],
        sigs=[(a(v("sigs", j, 0)), a(v("sigs", j, 1)), a(v("sigs", j, 2))) for j in range(n)],
    )


def _digest_bits_msb(cs: ConstraintSystem, hi: LC, lo: LC) -> list[LC]:
    hi_bits = bits_of(cs, hi, 128)
    lo_bits = bits_of(cs, lo, 128)
    return list(reversed(hi_bits)) + list(reversed(lo_bits))


def _build(
    params: RelationParams,
    chains: list[AttestationChain] | None = None,
    rpk: bjj.Point | None = None,
) -> ConstraintSystem:
    l, n = params.chain_count, params.height
    with_values = chains is not None
    if with_values:
        if len(chains) != l:
            raise RelationError(f"expected exactly {l} chains, got {len(chains)}")
        for i, c in enumerate(chains):
            if c.signature_count != n:
                raise RelationError(
                    f"chain {i} has {c.signature_count} attestations, relation is fixed at {n}"
                )
        if rpk is None:
            raise RelationError("witness requires the root public key")

    cs = ConstraintSystem(with_values=with_values)
    rpk_x = lc(cs.alloc_public(rpk[0] if with_values else None))
    rpk_y = lc(cs.alloc_public(rpk[1] if with_values else None))

    with cs.scope(group="layout", klass="layout"):
        wires = [
            _alloc_chain(cs, params, chains[i] if with_values else None) for i in range(l)
        ]

    universe = params.chain_policy.universe
    width = universe.bit_length()
    slots = params.phase_policy.slots

    for i, cw in enumerate(wires):
        doc_msg = [lc_const(DOC_DOMAIN), cw.doctype, cw.id_hi, cw.id_lo, cw.ref_hi, cw.ref_lo]
        with cs.scope(group=f"doc-sig({i})", klass="signature"):
            pk0 = (cw.entries[0][0], cw.entries[0][1])
            rx, ry, s = cw.sigs[0]
            verify_signature(cs, pk0, doc_msg, (rx, ry), s)
        for j in range(1, n):
            with cs.scope(group=f"role-sig({i},{j})", klass="signature"):
                below = cw.entries[j - 1]
                role_msg = [lc_const(ROLE_DOMAIN), below[0], below[1], below[2]]
                pk_j = (cw.entries[j][0], cw.entries[j][1])
                rx, ry, s = cw.sigs[j]
                verify_signature(cs, pk_j, role_msg, (rx, ry), s)
        with cs.scope(group=f"root-equality({i})", klass="root-equality"):
            top = cw.entries[-1]
            enforce_eq(cs, top[0], rpk_x)
            enforce_eq(cs, top[1], rpk_y)
        with cs.scope(group=f"chain-policy({i})", klass="chain-policy"):
            rbits = [bits_of(cs, cw.entries[j][2], width) for j in range(n)]
            author_bit = slots[i].bit_length() - 1
            enforce_eq(cs, rbits[0][author_bit], lc_const(1))
            for j in range(n - 1):
                for b in range(width):
                    cs.enforce(rbits[j][b], lc_sub(lc_const(1), rbits[j + 1][b]), {})
            for b in range(width):
                if not (universe >> b) & 1:
                    enforce_eq(cs, rbits[n - 1][b], lc_const(0))

    with cs.scope(group="phase-policy", klass="phase-policy"):
        slot_of = {code: idx for idx, code in enumerate(slots)}
        for i, cw in enumerate(wires):
            enforce_eq(cs, cw.doctype, lc_const(slots[i]))
        id_bits_cache: dict[int, list[LC]] = {}

        def id_bits(slot_idx: int) -> list[LC]:
            if slot_idx not in id_bits_cache:
                with cs.scope(klass="ref-hash"):
                    id_bits_cache[slot_idx] = _digest_bits_msb(
                        cs, wires[slot_idx].id_hi, wires[slot_idx].id_lo
                    )
            return id_bits_cache[slot_idx]

        empty_ref = hash_concat_identifiers([], params.hash_config)
        for i, cw in enumerate(wires):
            referenced = params.phase_policy.references.get(slots[i], ())
            if not referenced:
                hi, lo = split_digest(empty_ref)
                enforce_eq(cs, cw.ref_hi, lc_const(hi))
                enforce_eq(cs, cw.ref_lo, lc_const(lo))
            elif params.hash_config.ref_hash == "sha256":
                with cs.scope(klass="ref-hash"):
                    msg_bits: list[LC] = []
                    for code in referenced:
                        msg_bits.extend(id_bits(slot_of[code]))
                    out = sha256_bits(cs, msg_bits)
                    out_hi = lc_add(*(lc_scale(b, 1 << (127 - k)) for k, b in enumerate(out[:128])))
                    out_lo = lc_add(*(lc_scale(b, 1 << (127 - k)) for k, b in enumerate(out[128:])))
                    enforce_eq(cs, cw.ref_hi, out_hi)
                    enforce_eq(cs, cw.ref_lo, out_lo)
            else:
                with cs.scope(klass="ref-hash"):
                    elements: list[LC] = []
                    for code in referenced:
                        ref_w = wires[slot_of[code]]
                        elements.extend((ref_w.id_hi, ref_w.id_lo))
                    out_lc = poseidon_digest(cs, elements, domain=SPONGE_REF)
                    packed = lc_add(lc_scale(cw.ref_hi, 1 << 128), cw.ref_lo)
                    enforce_eq(cs, packed, out_lc)
    return cs


def synthesize(params: RelationParams) -> ConstraintSystem:
    """Deterministic constraint system for the relation (no witness)."""
    return _build(params)


def build_witness(
    params: RelationParams, chains: list[AttestationChain], rpk: bjj.Point
) -> ConstraintSystem:
    """Same circuit with a full assignment derived from the chains."""
    return _build(params, chains, rpk)


def constraint_count(params: RelationParams) -> int:
    return synthesize(params).num_constraints


def cost_breakdown(params: RelationParams) -> dict[str, int]:
    return synthesize(params).cost_breakdown()


def satisfied_by(params: RelationParams, chains: list[AttestationChain], rpk: bjj.Point) -> bool:
    """Direct satisfiability check (no proving): does the witness satisfy
    the relation's constraints?"""
    try:
        return build_witness(params, chains, rpk).is_satisfied()
    except RelationError:
        return False
