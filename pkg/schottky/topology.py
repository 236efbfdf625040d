"""
Topology of the quotient surface of a (truncated) Schottky group.

The free arcs of R ∪ {∞} left between the sorted intervals are glued end to
end by the generators. Every cycle of glued arcs is one boundary component
(funnel end) of the quotient, and with χ = 1 - r the genus follows from
χ = 2 - 2g - b.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple
import logging

import networkx as nx
import pandas as pd

from .description import (
    IntervalOnR,
    LabelKind,
    SchottkyDescription,
    build_gamma_ms,
    sub_description,
)
from .errors import ConsistencyError, ParameterError
from .moebius import INFINITY, BoundaryPoint, QPoint, apply_boundary


__all__ = [
    "Slot",
    "PairingPattern",
    "SurfaceSignature",
    "CompactBox",
    "EndsProfile",
    "pattern_of",
    "boundary_cycles",
    "signature",
    "compact_box",
    "ends_profile",
    "block_signature",
    "topology_record",
    "topology_table",
]


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Slot:
    index: int
    interval: IntervalOnR


@dataclass(frozen=True)
class PairingPattern:
    """
    Combinatorics of a Schottky description along the boundary

    Args:
        slots: the intervals sorted by their left endpoint
        gluing: for every index k the images of (left, right) of A_k, each an
            endpoint of A_{-k}
    """

    slots: Tuple[Slot, ...]
    gluing: Dict[int, Tuple[Fraction, Fraction]]

    @property
    def rank(self) -> int:
        return len(self.slots) // 2

    @property
    def order(self) -> Tuple[int, ...]:
        "Indices in the order their intervals appear along R"
        return tuple(slot.index for slot in self.slots)

    def position(self, index: int) -> int:
        return self.order.index(index)

    @property
    def position_pairing(self) -> Tuple[int, ...]:
        "Position of the paired slot, for every slot position"
        where = {slot.index: i for i, slot in enumerate(self.slots)}
        return tuple(where[-slot.index] for slot in self.slots)

    def glued_endpoints(self) -> FrozenSet[FrozenSet[Fraction]]:
        "Unlabelled endpoint identifications {x, f_k(x)}"
        pairs = set()
        for slot in self.slots:
            images = self.gluing[slot.index]
            for x, y in zip(slot.interval.endpoints, images):
                pairs.add(frozenset((x, y)))
        return frozenset(pairs)

    def mirrored(self) -> "PairingPattern":
        "The pattern conjugated by the reflection x -> -x"
        slots = tuple(
            Slot(slot.index, IntervalOnR(-slot.interval.right, -slot.interval.left))
            for slot in reversed(self.slots)
        )
        gluing = {k: (-right, -left) for k, (left, right) in self.gluing.items()}
        return PairingPattern(slots, gluing)


@dataclass(frozen=True)
class SurfaceSignature:
    rank: int
    boundary_components: int
    genus: int

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.rank

    def __str__(self) -> str:
        return f"r={self.rank} b={self.boundary_components} g={self.genus}"


@dataclass(frozen=True)
class CompactBox:
    """
    Compact exhaustion set K_l of the quotient, as a box of H

    -5(s-1) - l <= Re(z) <= 5(s-1) + l and 1/l <= Im(z) <= l + 1
    """

    l: int
    x_min: Fraction
    x_max: Fraction
    y_min: Fraction
    y_max: Fraction

    def contains(self, z: QPoint) -> bool:
        return self.x_min <= z.re <= self.x_max and self.y_min <= z.im <= self.y_max


@dataclass(frozen=True)
class EndsProfile:
    """
    Genus attribution to the ends regions at an exhaustion level

    Args:
        level: exhaustion level, 0 counts every block
        signature_at_level: signature of the f generators together with the
            blocks surviving the level filter
        per_region_genus: genus carried by each region t = 1..s
    """

    level: int
    signature_at_level: SurfaceSignature
    per_region_genus: Dict[int, int]

    @property
    def ends(self) -> int:
        return self.signature_at_level.boundary_components

    @property
    def genus_regions(self) -> List[int]:
        return [t for t, g in sorted(self.per_region_genus.items()) if g > 0]


def _image_endpoint(
    desc: SchottkyDescription, index: int, x: BoundaryPoint
) -> Fraction:
    image = apply_boundary(desc[index].map, x)
    target = desc[-index].interval
    if image is INFINITY or image not in target.endpoints:
        raise ConsistencyError(
            f"f_{index} sends {x} to {image}, not an endpoint of A_{-index} = {target}"
        )
    return image


def pattern_of(desc: SchottkyDescription) -> PairingPattern:
    """
    Extract the pairing pattern of a description

    Raises:
        ConsistencyError: when intervals overlap or an endpoint is not sent
            onto an endpoint of the paired interval
    """
    slots = tuple(
        Slot(e.index, e.interval)
        for e in sorted(desc, key=lambda e: e.interval.left)
    )
    for first, second in zip(slots, slots[1:]):
        if not first.interval.closures_disjoint(second.interval):
            raise ConsistencyError(
                f"intervals of {first.index} and {second.index} overlap"
            )
    gluing = {
        slot.index: (
            _image_endpoint(desc, slot.index, slot.interval.left),
            _image_endpoint(desc, slot.index, slot.interval.right),
        )
        for slot in slots
    }
    log.debug("pairing pattern with %d slots", len(slots))
    return PairingPattern(slots, gluing)


def boundary_cycles(pattern: PairingPattern) -> int:
    """
    Number of boundary components of the quotient

    Free arc i runs from the right end of slot i to the left end of slot
    i + 1, the last one through ∞. An arc ending at the left end of A_k
    continues at the arc touching the image of that endpoint on A_{-k}.
    """
    count = len(pattern.slots)
    if count == 0:
        return 1
    where = {slot.index: i for i, slot in enumerate(pattern.slots)}

    def arc_at(index: int, x: Fraction) -> int:
        "The free arc touching endpoint x of A_index"
        position = where[index]
        if x == pattern.slots[position].interval.right:
            return position
        return (position - 1) % count

    graph = nx.MultiGraph()
    graph.add_nodes_from(range(count))
    for slot in pattern.slots:
        for x, y in zip(slot.interval.endpoints, pattern.gluing[slot.index]):
            graph.add_edge(arc_at(slot.index, x), arc_at(-slot.index, y))
    return nx.number_connected_components(graph)


def signature(pattern: PairingPattern) -> SurfaceSignature:
    """
    Rank, boundary components and genus of the quotient

    Raises:
        ConsistencyError: when the genus is not a non-negative integer
    """
    r = pattern.rank
    b = boundary_cycles(pattern)
    twice_genus = 1 + r - b
    if twice_genus < 0 or twice_genus % 2:
        raise ConsistencyError(f"rank {r} and {b} boundary components give a non-integral genus")
    return SurfaceSignature(r, b, twice_genus // 2)


def compact_box(s: int, l: int) -> CompactBox:
    if l < 1:
        raise ParameterError(f"require l ≥ 1, got l={l}")
    if s < 2:
        raise ParameterError(f"require s ≥ 2, got s={s}")
    half_width = 5 * (s - 1) + l
    return CompactBox(l, Fraction(-half_width), Fraction(half_width), Fraction(1, l), Fraction(l + 1))


def _regions(desc: SchottkyDescription) -> Tuple[int, int]:
    "Return (m, s) for a built description"
    params = desc.params
    if params.variant == "gamma_ms":
        return params.m, params.s
    if params.variant in ("genus0", "ffamily"):
        return 0, params.s
    raise ParameterError("ends are only attributed for built descriptions")


def _block_indices(
    desc: SchottkyDescription, region: Optional[int] = None, above: int = 0
) -> List[int]:
    "Positive indices of the g and h generators with n > above, optionally in one region"
    return [
        e.index
        for e in desc
        if e.index > 0
        and e.label.kind in (LabelKind.G, LabelKind.H)
        and e.label.n > above
        and (region is None or e.label.k == region)
    ]


def ends_profile(desc: SchottkyDescription, level: int = 0) -> EndsProfile:
    """
    Attribute the handles of the quotient to the ends regions

    Region t = k <= m holds the g_{k,n} and h_{k,n} blocks; only blocks with
    n > level survive the exhaustion by K_level. Level 0 keeps every block.

    Raises:
        ParameterError: for a negative level or a custom description
        ConsistencyError: when the regional genera do not add up
    """
    if level < 0:
        raise ParameterError(f"require level ≥ 0, got level={level}")
    m, s = _regions(desc)

    f_indices = [e.index for e in desc if e.index > 0 and e.label.kind is LabelKind.F]
    surviving = sub_description(desc, f_indices + _block_indices(desc, above=level))
    total = signature(pattern_of(surviving))

    per_region = {}
    for t in range(1, s + 1):
        block = _block_indices(desc, region=t, above=level) if t <= m else []
        per_region[t] = signature(pattern_of(sub_description(desc, block))).genus if block else 0

    if sum(per_region.values()) != total.genus:
        raise ConsistencyError(
            f"regional genera {per_region} do not add up to the total genus {total.genus}"
        )
    return EndsProfile(level, total, per_region)


def block_signature(desc: SchottkyDescription, k: int, n_pair: int) -> SurfaceSignature:
    """
    Signature of the block {g_{k,2n-1}, h_{k,2n-1}, g_{k,2n}, h_{k,2n}} on its own

    Raises:
        ParameterError: when the block is not part of the truncation
    """
    params = desc.params
    if params.variant != "gamma_ms":
        raise ParameterError("blocks only exist in Γ_{m,s} descriptions")
    if not (1 <= k <= params.m):
        raise ParameterError(f"require 1 ≤ k ≤ m={params.m}, got k={k}")
    if n_pair < 1 or 2 * n_pair > params.N:
        raise ParameterError(
            f"block n_pair={n_pair} needs n={2 * n_pair} within the truncation N={params.N}"
        )
    indices = [
        e.index
        for e in desc
        if e.index > 0
        and e.label.kind in (LabelKind.G, LabelKind.H)
        and e.label.k == k
        and e.label.n in (2 * n_pair - 1, 2 * n_pair)
    ]
    return signature(pattern_of(sub_description(desc, indices)))


def topology_record(desc: SchottkyDescription, level: int = 0) -> Dict[str, object]:
    """
    Row of the topology table: N, r, b, g and the genus of every region

    Custom descriptions get the signature columns only.
    """
    sig = signature(pattern_of(desc))
    record = {
        "N": desc.params.N if desc.params.N is not None else 0,
        "r": sig.rank,
        "b": sig.boundary_components,
        "g": sig.genus,
    }
    if desc.params.variant != "custom":
        profile = ends_profile(desc, level)
        for t, genus in sorted(profile.per_region_genus.items()):
            record[f"genus_{t}"] = genus
    return record


def topology_table(
    m: int, s: int, N_max: int, level: int = 0
) -> pd.DataFrame:
    "Topology of Γ_{m,s} truncated at N = 1..N_max, one row per N"
    if N_max < 1:
        raise ParameterError(f"require N_max ≥ 1, got N_max={N_max}")
    return pd.DataFrame(
        [topology_record(build_gamma_ms(m, s, N), level) for N in range(1, N_max + 1)]
    )
