"""
Checks of the five conditions defining a Schottky description.

Disjointness decisions are exact. The ε-margin of the last condition is a
statement about hyperbolic distances, it is compared in floating point on top
of the exact disjointness test and the largest certified ε is reported.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple
import logging
import math

import pandas as pd

from .description import SchottkyDescription
from .errors import AffineMapError
from .moebius import (
    Classification,
    HalfCircle,
    classify,
    hyperbolic_distance,
    invert,
    inversive_distance,
    isometric_circle,
)
from .utils import RationalLike, as_rational, format_rational


__all__ = [
    "Failure",
    "ConditionResult",
    "ValidationReport",
    "SeparationCheck",
    "validate",
    "separation_check",
    "pairwise_distances",
]


log = logging.getLogger(__name__)

# slack for the float comparison of the ε margin
MARGIN_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Failure:
    index: int
    other: Optional[int]
    reason: str

    def __str__(self) -> str:
        pair = f"{self.index}" if self.other is None else f"{self.index}, {self.other}"
        return f"({pair}): {self.reason}"


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witnesses: Tuple[Failure, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of :py:func:`validate`

    Args:
        conditions: results of conditions 1 to 5, in order
        epsilon: the ε that was tested
        min_inversive_distance: smallest exact δ over all circle pairs
        certified_epsilon: arccosh(min δ) / 2, the largest ε for which the
            closed neighborhoods are pairwise disjoint
    """

    conditions: Tuple[ConditionResult, ...]
    epsilon: Fraction
    min_inversive_distance: Optional[Fraction]
    certified_epsilon: float
    failures: List[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, number: int) -> ConditionResult:
        "Result of condition ``number`` (1 based)"
        return self.conditions[number - 1]

    def to_frame(self) -> pd.DataFrame:
        "Per condition verdicts as a DataFrame"
        return pd.DataFrame(
            {
                "condition": list(range(1, len(self.conditions) + 1)),
                "passed": [c.passed for c in self.conditions],
                "witnesses": [len(c.witnesses) for c in self.conditions],
            }
        )

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "epsilon": format_rational(self.epsilon),
            "conditions": {
                str(i): {"passed": c.passed, "witnesses": [str(w) for w in c.witnesses]}
                for i, c in enumerate(self.conditions, start=1)
            },
            "min_inversive_distance": (
                None
                if self.min_inversive_distance is None
                else format_rational(self.min_inversive_distance)
            ),
            "certified_epsilon": (
                None if math.isinf(self.certified_epsilon) else self.certified_epsilon
            ),
        }


@dataclass(frozen=True)
class SeparationCheck:
    centers_separated: bool
    strips_separated: bool
    neighborhoods_disjoint_for: float


def _condition_1(desc: SchottkyDescription) -> ConditionResult:
    "Closures of the intervals are pairwise disjoint"
    ordered = sorted(desc, key=lambda e: (e.interval.left, e.index))
    witnesses = []
    reach = None
    for entry in ordered:
        if reach is not None and entry.interval.left <= reach.interval.right:
            witnesses.append(Failure(reach.index, entry.index, "interval closures intersect"))
        if reach is None or entry.interval.right > reach.interval.right:
            reach = entry
    return ConditionResult(not witnesses, tuple(witnesses))


def _condition_2(desc: SchottkyDescription) -> ConditionResult:
    """
    No closure contains a closed half-plane, i.e. every interval is bounded

    Holds by construction: :py:class:`schottky.description.IntervalOnR`
    stores finite rational endpoints with left < right only, so there is
    nothing to witness.
    """
    return ConditionResult(True, ())


def _condition_3(desc: SchottkyDescription) -> ConditionResult:
    "Circles are the isometric circles of the generators and their inverses"
    witnesses = []
    for entry in desc:
        partner = desc[-entry.index]
        try:
            circle = isometric_circle(entry.map)
        except AffineMapError:
            witnesses.append(Failure(entry.index, None, "generator is affine"))
            continue
        if entry.circle != circle:
            witnesses.append(
                Failure(entry.index, None, f"circle {entry.circle} is not C(f) = {circle}")
            )
        if set(entry.interval.endpoints) != set(entry.circle.endpoints):
            witnesses.append(
                Failure(entry.index, None, "interval endpoints differ from circle endpoints")
            )
        if partner.map != invert(entry.map):
            witnesses.append(
                Failure(entry.index, partner.index, "generator at -k is not the inverse")
            )
        elif partner.circle != isometric_circle(invert(entry.map)):
            witnesses.append(
                Failure(entry.index, partner.index, "circle at -k is not C(f^-1)")
            )
    return ConditionResult(not witnesses, tuple(witnesses))


def _condition_4(desc: SchottkyDescription) -> ConditionResult:
    witnesses = [
        Failure(e.index, None, f"generator is {classify(e.map).value}")
        for e in desc
        if classify(e.map) is not Classification.HYPERBOLIC
    ]
    return ConditionResult(not witnesses, tuple(witnesses))


def _condition_5(
    desc: SchottkyDescription, epsilon: Fraction
) -> Tuple[ConditionResult, Optional[Fraction]]:
    "Closed ε-neighborhoods of the circles are pairwise disjoint"
    threshold = math.cosh(2 * float(epsilon)) + MARGIN_TOLERANCE
    witnesses = []
    smallest = None
    for first, second in combinations(desc.entries(), 2):
        delta = inversive_distance(first.circle, second.circle)
        if smallest is None or delta < smallest:
            smallest = delta
        if delta <= 1:
            witnesses.append(Failure(first.index, second.index, "circles intersect or nest"))
        elif float(delta) <= threshold:
            witnesses.append(
                Failure(first.index, second.index, f"ε-neighborhoods meet (δ={delta})")
            )
    return ConditionResult(not witnesses, tuple(witnesses)), smallest


def validate(desc: SchottkyDescription, epsilon: RationalLike) -> ValidationReport:
    """
    Validate the five conditions of a Schottky description

    Failures are collected in the report, nothing is raised.

    Args:
        desc: description to check
        epsilon: positive rational radius of the hyperbolic neighborhoods
    """
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    fifth, smallest = _condition_5(desc, epsilon)
    conditions = (
        _condition_1(desc),
        _condition_2(desc),
        _condition_3(desc),
        _condition_4(desc),
        fifth,
    )
    if smallest is None:
        certified = math.inf
    elif smallest > 1:
        certified = math.acosh(smallest) / 2
    else:
        certified = 0.0

    failures = [w for c in conditions for w in c.witnesses]
    for failure in failures:
        log.debug("validation failure %s", failure)
    return ValidationReport(conditions, epsilon, smallest, certified, failures)


def separation_check(first: HalfCircle, second: HalfCircle) -> SeparationCheck:
    """
    Compare the separation hypothesis |α1 - α2| > r1 + r2 with the one that
    makes the strips of half-width 2r disjoint, |α1 - α2| >= 2(r1 + r2).
    """
    gap = abs(first.center - second.center)
    total = first.radius + second.radius
    delta = inversive_distance(first, second)
    return SeparationCheck(
        centers_separated=gap > total,
        strips_separated=gap >= 2 * total,
        neighborhoods_disjoint_for=math.acosh(delta) / 2 if delta > 1 else 0.0,
    )


def pairwise_distances(desc: SchottkyDescription) -> pd.DataFrame:
    "All circle pairs with their exact inversive distance and hyperbolic distance"
    rows = [
        {
            "index": a.index,
            "other": b.index,
            "delta": format_rational(inversive_distance(a.circle, b.circle)),
            "distance": hyperbolic_distance(a.circle, b.circle),
        }
        for a, b in combinations(desc.entries(), 2)
    ]
    return pd.DataFrame(rows, columns=["index", "other", "delta", "distance"])
