"""Bundled railway requirement-specification phase (Sektorleitlinie 22, phase 1).

Nine deliverable document types over an eight-role hierarchy, height 3:
the government is the root attestor, the federal railway authority (FRA)
supervises the assessment bodies (AsBo, DeBo), and the railway operator
appoints the product manager (BAV) and the two expert approvers (FGV1,
FGV2).  PTD references RS, PTD1, TR and SA (in that order); SUC
references SUC2.  With every chain padded to height 3 this yields 9
chains and 27 signature slots, 17 of them distinct.

The operator is taken as the author of the SUC2 notification and of both
FGV appointment notices.
"""

from __future__ import annotations

from ..attestation.processspec import ProcessSpec
from ..crypto.encoding import HashConfig

SA = 1 << 0
TR = 1 << 1
PTD = 1 << 2
RS = 1 << 3
SUC = 1 << 4
PTD1 = 1 << 5
SUC2 = 1 << 6
FGV1 = 1 << 7
FGV2 = 1 << 8

UNIVERSE = SA | TR | PTD | RS | SUC | PTD1 | SUC2 | FGV1 | FGV2


def railway_phase1_spec(ref_hash: str = "sha256") -> ProcessSpec:
    spec = ProcessSpec(
        name="railway-requirement-specification-phase1",
        doctypes=(
            ("SA", SA), ("TR", TR), ("PTD", PTD), ("RS", RS), ("SUC", SUC),
            ("PTD1", PTD1), ("SUC2", SUC2), ("FGV1", FGV1), ("FGV2", FGV2),
        ),
        roles=(
            ("gov", None, UNIVERSE),
            ("fra", "gov", SA | TR),
            ("operator", "gov", PTD | RS | SUC | PTD1 | SUC2 | FGV1 | FGV2),
            ("asbo", "fra", SA),
            ("debo", "fra", TR),
            ("bav", "operator", RS | SUC),
            ("fgv1", "operator", PTD1),
            ("fgv2", "operator", PTD),
        ),
        documents=(
            ("SA", "asbo", ()),
            ("TR", "debo", ()),
            ("PTD", "fgv2", ("RS", "PTD1", "TR", "SA")),
            ("PTD1", "fgv1", ()),
            ("RS", "bav", ()),
            ("SUC", "bav", ("SUC2",)),
            ("SUC2", "operator", ()),
            ("FGV1", "operator", ()),
            ("FGV2", "operator", ()),
        ),
        height=3,
        hash_config=HashConfig(ref_hash=ref_hash),
    )
    spec.validate()
    return spec
