"""
Words, group elements and the Ford reduction into the standard fundamental
domain F = the intersection of the closed exteriors of all circles.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np

from .description import SchottkyDescription
from .errors import NotReducedError, ParameterError, ReductionBudgetError, UnknownIndexError
from .moebius import Geodesic, MoebiusMap, QPoint, circle_image
from .utils import RationalLike, as_rational


__all__ = [
    "MAX_WORD_LENGTH",
    "DEFAULT_MAX_ITERS",
    "Word",
    "GroupElement",
    "DomainCertificate",
    "ReductionTrace",
    "enumerate_words",
    "word_count",
    "element_of",
    "in_fundamental_domain",
    "is_interior",
    "reduce_trace",
    "reduce_to_domain",
    "tessellation_tiles",
    "sample_points",
]


log = logging.getLogger(__name__)

MAX_WORD_LENGTH = 8
DEFAULT_MAX_ITERS = 10_000


@dataclass(frozen=True)
class Word:
    """
    Reduced word in the indices of a description.

    Raises:
        NotReducedError: when two adjacent letters are k and -k
    """

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for first, second in zip(letters, letters[1:]):
            if first == -second:
                raise NotReducedError(f"word {letters} contains the pair ({first}, {second})")

    @classmethod
    def parse(cls, text: str) -> "Word":
        "Inverse of ``str``: comma separated indices or ``-``"
        text = text.strip()
        if text == "-":
            return cls()
        return cls(tuple(int(tok) for tok in text.split(",")))

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.letters) if self.letters else "-"


@dataclass(frozen=True)
class GroupElement:
    word: Word
    map: MoebiusMap


@dataclass(frozen=True)
class DomainCertificate:
    point: QPoint
    in_domain: bool
    violating_index: Optional[int] = None


@dataclass(frozen=True)
class ReductionTrace:
    """
    Points visited by a Ford reduction

    ``points[0]`` is the input, ``points[-1]`` lies in F, and
    ``element_of(desc, word)`` maps the first onto the last.
    """

    points: Tuple[QPoint, ...]
    word: Word

    @property
    def steps(self) -> int:
        return len(self.points) - 1


def word_count(rank: int, length: int) -> int:
    "Number of reduced words of a given length in the free group of rank ``rank``"
    if length == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (length - 1)


def enumerate_words(
    desc: SchottkyDescription, max_len: int, allow_long: bool = False
) -> Iterator[Word]:
    """
    Generate the reduced words of length <= ``max_len`` in shortlex order

    Letters are ordered by their index. Matrix entries grow exponentially
    with the length, so lengths above :py:data:`MAX_WORD_LENGTH` need
    ``allow_long``.

    Args:
        desc: description providing the letters
        max_len: largest word length
        allow_long: lift the length cap
    """
    if max_len < 0:
        raise ParameterError(f"max_len must be non-negative, got {max_len}")
    if max_len > MAX_WORD_LENGTH and not allow_long:
        raise ParameterError(
            f"max_len={max_len} exceeds {MAX_WORD_LENGTH}, pass allow_long to override"
        )
    letters = sorted(desc.indices)

    def extend(prefix: Tuple[int, ...], remaining: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for letter in letters:
            if prefix and prefix[-1] == -letter:
                continue
            yield from extend(prefix + (letter,), remaining - 1)

    for length in range(max_len + 1):
        for letters_ in extend((), length):
            yield Word(letters_)


def element_of(
    desc: SchottkyDescription, word: Union[Word, Sequence[int]]
) -> GroupElement:
    """
    Compose the generators of ``word`` from left to right

    The resulting map sends z to f_{w_1}(f_{w_2}(...f_{w_n}(z))).

    Raises:
        NotReducedError: when the word is not reduced
        UnknownIndexError: for a letter outside the description
    """
    if not isinstance(word, Word):
        word = Word(tuple(word))
    result = MoebiusMap.identity()
    for letter in word:
        if letter not in desc:
            raise UnknownIndexError(f"index {letter} is not part of the description")
        result = result @ desc[letter].map
    return GroupElement(word, result)


def in_fundamental_domain(desc: SchottkyDescription, z: QPoint) -> DomainCertificate:
    """
    Exact membership test for F, stopping at the first violated circle

    Points on a circle count as members of F.
    """
    for entry in desc:
        if entry.map.denominator_norm(z) < 1:
            return DomainCertificate(z, False, entry.index)
    return DomainCertificate(z, True)


def is_interior(desc: SchottkyDescription, z: QPoint) -> bool:
    "True when z lies in F and on none of its boundary circles"
    return all(entry.map.denominator_norm(z) > 1 for entry in desc)


def reduce_trace(
    desc: SchottkyDescription, z: QPoint, max_iters: int = DEFAULT_MAX_ITERS
) -> ReductionTrace:
    """
    Ford reduction of z keeping every intermediate point

    While z lies strictly inside some C(f_k), replace z by f_k(z). Each step
    multiplies Im(z) by 1 / |c_k z + d_k|^2 > 1.

    Raises:
        ParameterError: when ``max_iters`` < 1
        ReductionBudgetError: when F is not reached within ``max_iters`` steps
    """
    if max_iters < 1:
        raise ParameterError(f"max_iters must be at least 1, got {max_iters}")
    points = [z]
    applied: List[int] = []
    for _ in range(max_iters):
        certificate = in_fundamental_domain(desc, z)
        if certificate.in_domain:
            break
        z = desc[certificate.violating_index].map(z)
        applied.append(certificate.violating_index)
        points.append(z)
    else:
        if not in_fundamental_domain(desc, z).in_domain:
            word = tuple(reversed(applied))
            raise ReductionBudgetError(
                f"reduction did not reach F within {max_iters} iterations", word, z
            )
    log.debug("reduced %s to %s in %d steps", points[0], z, len(applied))
    return ReductionTrace(tuple(points), Word(tuple(reversed(applied))))


def reduce_to_domain(
    desc: SchottkyDescription, z: QPoint, max_iters: int = DEFAULT_MAX_ITERS
) -> Tuple[QPoint, Word]:
    """
    Reduce a point of H into F

    Returns:
        the reduced point and the word ``w`` with
        ``element_of(desc, w).map(z)`` equal to the reduced point
    """
    trace = reduce_trace(desc, z, max_iters)
    return trace.points[-1], trace.word


def tessellation_tiles(
    desc: SchottkyDescription, max_len: int, allow_long: bool = False
) -> List[Tuple[Word, List[Geodesic]]]:
    "Images of the boundary circles of F under every reduced word of length <= max_len"
    tiles = []
    for word in enumerate_words(desc, max_len, allow_long=allow_long):
        g = element_of(desc, word).map
        tiles.append((word, [circle_image(g, circle) for circle in desc.circles()]))
    return tiles


def sample_points(
    count: int,
    seed: int,
    re_bound: RationalLike,
    im_min: RationalLike,
    im_max: RationalLike,
    denominator: int = 1000,
) -> List[QPoint]:
    """
    Reproducible pseudo-random rational points of H

    Coordinates are multiples of ``1 / denominator`` drawn uniformly with
    ``|Re| <= re_bound`` and ``im_min <= Im <= im_max``.
    """
    re_bound, im_min, im_max = (as_rational(v) for v in (re_bound, im_min, im_max))
    if im_min <= 0 or im_max < im_min:
        raise ParameterError(f"require 0 < im_min ≤ im_max, got {im_min}, {im_max}")
    if re_bound < 0:
        raise ParameterError(f"re_bound must be non-negative, got {re_bound}")

    rng = np.random.default_rng(seed)
    re_hi = math.floor(re_bound * denominator)
    im_lo, im_hi = math.ceil(im_min * denominator), math.floor(im_max * denominator)
    if im_hi < im_lo:
        raise ParameterError(f"no multiple of 1/{denominator} in [{im_min}, {im_max}]")
    res = rng.integers(-re_hi, re_hi, size=count, endpoint=True)
    ims = rng.integers(im_lo, im_hi, size=count, endpoint=True)
    return [
        QPoint(Fraction(int(x), denominator), Fraction(int(y), denominator))
        for x, y in zip(res, ims)
    ]
