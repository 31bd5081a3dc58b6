"""Business-rule layer: per-chain delegation policy and per-phase document policy.

The chain policy implements subset delegation: an author may create a
document only if its doctype bit is in their permission mask, and every
mask must be a subset of the mask one level up (the root's universe mask
closes the chain).  The phase policy pins each chain to a doctype slot
and checks the reference digests between documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..crypto.encoding import HashConfig, hash_concat_identifiers


class PolicyError(ValueError):
    """Malformed policy configuration."""


@dataclass(frozen=True)
class ChainPolicyConfig:
    universe: int  # bitmask with one bit per declared doctype
    kind: str = "subset_delegation"

    def __post_init__(self):
        if self.kind != "subset_delegation":
            raise PolicyError(f"unknown chain policy kind {self.kind!r}")
        if self.universe <= 0:
            raise PolicyError("universe mask must be non-empty")


@dataclass(frozen=True)
class PhasePolicyConfig:
    slots: tuple[int, ...]                     # doctype code per chain slot
    references: Mapping[int, tuple[int, ...]]  # doctype -> referenced doctypes, ordered
    kind: str = "reference_map"

    def __post_init__(self):
        if self.kind != "reference_map":
            raise PolicyError(f"unknown phase policy kind {self.kind!r}")
        declared = set(self.slots)
        if len(declared) != len(self.slots):
            raise PolicyError("duplicate doctype slots")
        for code, refs in self.references.items():
            if code not in declared:
                raise PolicyError(f"references declared for unknown doctype {code}")
            for r in refs:
                if r not in declared:
                    raise PolicyError(f"reference to undeclared doctype {r}")
        _check_acyclic(self.references)

    def slot_of(self, doctype: int) -> int:
        return self.slots.index(doctype)


def _check_acyclic(references: Mapping[int, tuple[int, ...]]) -> None:
    state: dict[int, int] = {}

    def visit(code: int) -> None:
        if state.get(code) == 2:
            return
        if state.get(code) == 1:
            raise PolicyError(f"reference cycle through doctype {code}")
        state[code] = 1
        for nxt in references.get(code, ()):
            visit(nxt)
        state[code] = 2

    for code in references:
        visit(code)


def _mask(rinfo) -> int:
    return rinfo.permissions if hasattr(rinfo, "permissions") else int(rinfo)


def chain_policy_eval(dinfo, rinfos: Sequence, cfg: ChainPolicyConfig) -> bool:
    """Subset delegation over one chain.

    ``rinfos`` is the full length-(n+1) mask sequence: the chain's own
    masks from author upward, closed by the root universe mask.
    """
    masks = [_mask(r) for r in rinfos]
    if not masks:
        return False
    if not dinfo.doctype & masks[0]:
        return False
    for below, above in zip(masks, masks[1:]):
        if below & ~above:
            return False
    return masks[-1] & ~cfg.universe == 0


def phase_policy_eval(
    dinfos: Sequence,
    cfg: PhasePolicyConfig,
    hash_config: HashConfig | None = None,
) -> bool:
    """Positional doctype slots plus reference-digest checks.

    Documents without declared references must carry the digest of the
    empty input, so every ref field is a genuine digest.
    """
    hash_config = hash_config or HashConfig()
    if len(dinfos) != len(cfg.slots):
        return False
    by_code = {}
    for d, expected in zip(dinfos, cfg.slots):
        if d.doctype != expected:
            return False
        by_code[d.doctype] = d
    for d in dinfos:
        referenced = cfg.references.get(d.doctype, ())
        expected_ref = hash_concat_identifiers(
            [by_code[t].identifier for t in referenced], hash_config
        )
        if d.ref != expected_ref:
            return False
    return True


def compute_ref(
    referenced_identifiers: Sequence[bytes], hash_config: HashConfig | None = None
) -> bytes:
    """Single shared definition of the reference digest (also used by the
    circuit and by workspace tooling)."""
    return hash_concat_identifiers(referenced_identifiers, hash_config or HashConfig())
