"""
Schottky descriptions of the groups Γ_{m,s} and Γ_s.

A description is a symmetric family of (interval, generator) pairs indexed by
nonzero integers. The builders below materialize the infinite generator
families at a finite truncation ``N`` from their closed forms.
"""

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import enum
import logging
import re

from .errors import ConsistencyError, ParameterError, ParseError
from .moebius import HalfCircle, MoebiusMap, invert, isometric_circle, map_with_circles
from .utils import RationalLike, as_rational, format_rational, nth_prime, parse_rational


__all__ = [
    "IntervalOnR",
    "LabelKind",
    "GeneratorLabel",
    "DescriptionEntry",
    "Parameters",
    "SchottkyDescription",
    "alpha_kn",
    "beta_kn",
    "radius_n",
    "f_t",
    "g_kn",
    "h_kn",
    "psi_index",
    "build_gamma_ms",
    "build_gamma_s",
    "build_f_family",
    "sub_description",
]


log = logging.getLogger(__name__)

FORMAT_VERSION = "v1"


@dataclass(frozen=True)
class IntervalOnR:
    "Bounded open interval (left, right) of the real line"

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", as_rational(self.left))
        object.__setattr__(self, "right", as_rational(self.right))
        if not self.left < self.right:
            raise ValueError(
                f"interval must satisfy left < right, got [{self.left}, {self.right}]"
            )

    @property
    def endpoints(self) -> Tuple[Fraction, Fraction]:
        return (self.left, self.right)

    def closures_disjoint(self, other: "IntervalOnR") -> bool:
        return self.right < other.left or other.right < self.left

    def __str__(self) -> str:
        return f"[{format_rational(self.left)}, {format_rational(self.right)}]"


class LabelKind(enum.Enum):
    F = "f"
    G = "g"
    H = "h"
    # generators of user supplied descriptions
    X = "x"


_LABEL_RE = re.compile(r"^(?P<kind>[fghx])(?P<k>\d+)(?:,(?P<n>\d+))?(?P<inv>\^-1)?$")


@dataclass(frozen=True)
class GeneratorLabel:
    """
    Name of a generator.

    Args:
        kind: family of the generator
        k: ``t`` for the f family, ``k`` for g and h, a serial number for x
        n: level ``n`` of the g and h families
        inverted: label of the inverse generator
    """

    kind: LabelKind
    k: int
    n: Optional[int] = None
    inverted: bool = False

    def __post_init__(self):
        paired = self.kind in (LabelKind.G, LabelKind.H)
        if paired != (self.n is not None):
            raise ValueError(f"label {self.kind.value} with n={self.n} is malformed")
        if self.k < 1 or (self.n is not None and self.n < 1):
            raise ValueError(f"label indices must be positive, got k={self.k}, n={self.n}")

    def inverse(self) -> "GeneratorLabel":
        return GeneratorLabel(self.kind, self.k, self.n, not self.inverted)

    @classmethod
    def parse(cls, text: str) -> "GeneratorLabel":
        match = _LABEL_RE.match(text.strip())
        if match is None:
            raise ParseError(f"malformed generator label: '{text}'")
        n = match.group("n")
        try:
            return cls(
                LabelKind(match.group("kind")),
                int(match.group("k")),
                int(n) if n is not None else None,
                match.group("inv") is not None,
            )
        except ValueError as exc:
            raise ParseError(f"malformed generator label: '{text}'") from exc

    def __str__(self) -> str:
        core = f"{self.kind.value}{self.k}"
        if self.n is not None:
            core += f",{self.n}"
        return core + ("^-1" if self.inverted else "")


@dataclass(frozen=True)
class DescriptionEntry:
    "One member (A_k, f_k) of a Schottky description together with its circle"

    index: int
    label: GeneratorLabel
    map: MoebiusMap
    circle: HalfCircle
    interval: IntervalOnR

    def to_record(self) -> str:
        return " | ".join(
            [
                str(self.index),
                str(self.label),
                self.map.to_str(),
                f"{format_rational(self.circle.center)} {format_rational(self.circle.radius)}",
                f"{format_rational(self.interval.left)} {format_rational(self.interval.right)}",
            ]
        )


@dataclass(frozen=True)
class Parameters:
    """
    Construction parameters.

    ``variant`` is one of ``"gamma_ms"`` (m, s, N), ``"genus0"`` (s),
    ``"ffamily"`` (the truncated family f_1, ..., f_T with T = s - 1) and
    ``"custom"``.
    """

    variant: str
    m: Optional[int] = None
    s: Optional[int] = None
    N: Optional[int] = None

    def header(self) -> str:
        if self.variant == "gamma_ms":
            return f"schottky {FORMAT_VERSION}; m={self.m}; s={self.s}; N={self.N}"
        if self.variant == "genus0":
            return f"schottky {FORMAT_VERSION}; variant=genus0; s={self.s}"
        if self.variant == "ffamily":
            return f"schottky {FORMAT_VERSION}; variant=ffamily; T={self.s - 1}"
        return f"schottky {FORMAT_VERSION}; variant=custom"

    @classmethod
    def from_header(cls, line: str) -> "Parameters":
        parts = [p.strip() for p in line.split(";")]
        if parts[0] != f"schottky {FORMAT_VERSION}":
            raise ParseError(f"unsupported header: '{line}'")
        values = {}
        for part in parts[1:]:
            key, sep, value = part.partition("=")
            if not sep:
                raise ParseError(f"malformed header field: '{part}'")
            values[key.strip()] = value.strip()
        variant = values.pop("variant", "gamma_ms")
        if variant not in ("gamma_ms", "genus0", "ffamily", "custom"):
            raise ParseError(f"unknown variant: '{variant}'")
        try:
            if variant == "gamma_ms":
                params = cls(
                    variant, int(values.pop("m")), int(values.pop("s")), int(values.pop("N"))
                )
            elif variant == "genus0":
                params = cls(variant, s=int(values.pop("s")))
            elif variant == "ffamily":
                params = cls(variant, s=int(values.pop("T")) + 1)
            else:
                params = cls(variant)
        except (KeyError, ValueError) as exc:
            raise ParseError(f"incomplete header: '{line}'") from exc
        if values:
            raise ParseError(f"unexpected header fields: {', '.join(sorted(values))}")
        return params


class SchottkyDescription:
    """
    Symmetric indexed family of intervals and generators.

    The index set is checked to be symmetric (0 excluded, k present with -k);
    the geometric conditions are checked by
    :py:func:`schottky.validation.validate` so that broken documents can
    still be loaded and diagnosed.
    """

    def __init__(self, entries: Iterable[DescriptionEntry], params: Parameters):
        ordered = sorted(entries, key=lambda e: e.index)
        self._entries: Dict[int, DescriptionEntry] = OrderedDict(
            (e.index, e) for e in ordered
        )
        if len(self._entries) != len(ordered):
            raise ValueError("duplicate indices in description")
        if 0 in self._entries:
            raise ValueError("0 cannot be an index of a Schottky description")
        missing = [k for k in self._entries if -k not in self._entries]
        if missing:
            raise ValueError(f"index set is not symmetric, missing: {sorted(-k for k in missing)}")
        self.params = params

    @classmethod
    def from_pairs(
        cls, pairs: Sequence[Tuple[RationalLike, RationalLike, RationalLike]]
    ) -> "SchottkyDescription":
        """
        Build a description from (center, inverse_center, radius) triples

        The i-th triple gives the generator with index i whose isometric
        circles are centered at ``center`` and ``inverse_center``.
        """
        entries = []
        for i, (center, inverse_center, radius) in enumerate(pairs, start=1):
            f = map_with_circles(center, inverse_center, radius)
            label = GeneratorLabel(LabelKind.X, i)
            entries.extend(_entry_pair(i, label, f))
        return cls(entries, Parameters("custom"))

    @property
    def indices(self) -> List[int]:
        return list(self._entries.keys())

    @property
    def rank(self) -> int:
        return len(self._entries) // 2

    def entries(self) -> List[DescriptionEntry]:
        return list(self._entries.values())

    def circles(self) -> List[HalfCircle]:
        return [e.circle for e in self._entries.values()]

    def index_of(self, label: GeneratorLabel) -> int:
        for entry in self._entries.values():
            if entry.label == label:
                return entry.index
        raise KeyError(f"no generator labelled {label}")

    def __getitem__(self, index: int) -> DescriptionEntry:
        return self._entries[index]

    def __contains__(self, index: int) -> bool:
        return index in self._entries

    def __iter__(self) -> Iterator[DescriptionEntry]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchottkyDescription):
            return NotImplemented
        return self.params == other.params and self.entries() == other.entries()

    def to_text(self) -> str:
        "Serialize to the line oriented description document"
        lines = [self.params.header()]
        lines.extend(e.to_record() for e in self._entries.values())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SchottkyDescription":
        """
        Parse a description document

        Records are taken as written; nothing is recomputed, so inconsistent
        documents can be loaded and validated.
        """
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty description document")
        params = Parameters.from_header(lines[0])
        entries = [_parse_record(ln, no) for no, ln in enumerate(lines[1:], start=2)]
        try:
            return cls(entries, params)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def __repr__(self) -> str:
        return f"<SchottkyDescription({self.params.header()!r}, rank={self.rank})>"


def _parse_record(line: str, lineno: int) -> DescriptionEntry:
    fields = [f.strip() for f in line.split("|")]
    if len(fields) != 5:
        raise ParseError(f"line {lineno}: expected 5 fields, got {len(fields)}")
    try:
        index = int(fields[0])
        label = GeneratorLabel.parse(fields[1])
        a, b, c, d = (parse_rational(x) for x in _split(fields[2], 4))
        center, radius = (parse_rational(x) for x in _split(fields[3], 2))
        left, right = (parse_rational(x) for x in _split(fields[4], 2))
        return DescriptionEntry(
            index, label, MoebiusMap(a, b, c, d), HalfCircle(center, radius), IntervalOnR(left, right)
        )
    except ValueError as exc:
        raise ParseError(f"line {lineno}: {exc}") from exc


def _split(text: str, n: int) -> List[str]:
    tokens = text.split()
    if len(tokens) != n:
        raise ParseError(f"expected {n} numbers in '{text}'")
    return tokens


def _entry_pair(
    index: int, label: GeneratorLabel, f: MoebiusMap
) -> Tuple[DescriptionEntry, DescriptionEntry]:
    "The entries for f at ``index`` and for its inverse at ``-index``"
    finv = invert(f)
    circle, circle_inv = isometric_circle(f), isometric_circle(finv)
    return (
        DescriptionEntry(index, label, f, circle, IntervalOnR(*circle.endpoints)),
        DescriptionEntry(
            -index, label.inverse(), finv, circle_inv, IntervalOnR(*circle_inv.endpoints)
        ),
    )


def _scale(n: int) -> int:
    "Return 2^n * 10, the reciprocal of the radius at level n"
    return 2**n * 10


def alpha_kn(k: int, n: int) -> Fraction:
    "Center of C(g_{k,n}): (13 + (5k - 3) 2^n 10) / (2^n 10)"
    return Fraction(13 + (5 * k - 3) * _scale(n), _scale(n))


def beta_kn(k: int, n: int) -> Fraction:
    "Center of C(h_{k,n}): (17 + (5k - 3) 2^n 10) / (2^n 10)"
    return Fraction(17 + (5 * k - 3) * _scale(n), _scale(n))


def radius_n(n: int) -> Fraction:
    return Fraction(1, _scale(n))


def f_t(t: int) -> MoebiusMap:
    "f_t(z) = (-5t z + (25t^2 - 1)) / (z - 5t)"
    return MoebiusMap(-5 * t, 25 * t * t - 1, 1, -5 * t)


def _b_kn(k: int, n: int) -> Fraction:
    p = 17 + (5 * k - 3) * _scale(n)
    q = 13 + (5 * k - 3) * _scale(n)
    return Fraction(p * q - 1, _scale(n))


def g_kn(k: int, n: int) -> MoebiusMap:
    "Generator whose isometric circles are centered at alpha_{k,n} and -beta_{k,n}"
    p = 17 + (5 * k - 3) * _scale(n)
    q = 13 + (5 * k - 3) * _scale(n)
    return MoebiusMap(-p, _b_kn(k, n), _scale(n), -q)


def h_kn(k: int, n: int) -> MoebiusMap:
    "Generator whose isometric circles are centered at beta_{k,n} and -alpha_{k,n}"
    p = 17 + (5 * k - 3) * _scale(n)
    q = 13 + (5 * k - 3) * _scale(n)
    return MoebiusMap(-q, _b_kn(k, n), _scale(n), -p)


@lru_cache(maxsize=None)
def _prime(n: int) -> int:
    return nth_prime(n)


def psi_index(label: GeneratorLabel) -> int:
    """
    Integer index of a generator of Γ_{m,s}

    f_t -> p_1^t, g_{k,n} -> p_2 p_{4+n}^k, h_{k,n} -> p_3 p_{4+n}^k, and the
    negated value for inverses, with p_1 = 2, p_2 = 3, ... the primes in
    increasing order. Distinct labels get distinct indices by unique
    factorization.
    """
    if label.kind is LabelKind.F:
        value = _prime(1) ** label.k
    elif label.kind is LabelKind.G:
        value = _prime(2) * _prime(4 + label.n) ** label.k
    elif label.kind is LabelKind.H:
        value = _prime(3) * _prime(4 + label.n) ** label.k
    else:
        raise ParameterError(f"no prime index for user supplied generator {label}")
    return -value if label.inverted else value


def _checked(label: GeneratorLabel, built: MoebiusMap, closed_form: MoebiusMap):
    if built != closed_form:
        raise ConsistencyError(f"{label}: circle construction {built} != closed form {closed_form}")
    return _entry_pair(psi_index(label), label, built)


def _f_entries(s: int) -> List[DescriptionEntry]:
    entries = []
    for t in range(1, s):
        label = GeneratorLabel(LabelKind.F, t)
        entries.extend(_checked(label, map_with_circles(5 * t, -5 * t, 1), f_t(t)))
    return entries


def build_gamma_ms(m: int, s: int, N: int) -> SchottkyDescription:
    """
    Truncated Schottky description of Γ_{m,s}

    Contains f_t (t = 1..s-1), g_{k,n} and h_{k,n} (k = 1..m, n = 1..N) and
    their inverses. Every generator is derived from its pair of isometric
    circles and compared with the closed form.

    Args:
        m: number of ends with infinite genus, 1 < m <= s
        s: number of ends
        N: truncation level of the g and h families, N >= 1

    Raises:
        ParameterError: when the bounds are violated
    """
    if not (1 < m <= s):
        raise ParameterError(f"require 1 < m ≤ s, got m={m}, s={s}")
    if N < 1:
        raise ParameterError(f"require N ≥ 1, got N={N}")

    entries = _f_entries(s)
    for k in range(1, m + 1):
        for n in range(1, N + 1):
            r = radius_n(n)
            alpha, beta = alpha_kn(k, n), beta_kn(k, n)
            g = GeneratorLabel(LabelKind.G, k, n)
            h = GeneratorLabel(LabelKind.H, k, n)
            entries.extend(_checked(g, map_with_circles(alpha, -beta, r), g_kn(k, n)))
            entries.extend(_checked(h, map_with_circles(beta, -alpha, r), h_kn(k, n)))
    log.debug("built Γ_{%d,%d} truncated at N=%d with %d entries", m, s, N, len(entries))
    return SchottkyDescription(entries, Parameters("gamma_ms", m, s, N))


def build_gamma_s(s: int) -> SchottkyDescription:
    """
    Schottky description of Γ_s generated by f_1, ..., f_{s-1}

    Raises:
        ParameterError: when s < 2
    """
    if s < 2:
        raise ParameterError(f"require s ≥ 2, got s={s}")
    return SchottkyDescription(_f_entries(s), Parameters("genus0", s=s))


def build_f_family(T: int) -> SchottkyDescription:
    "The family {f_t : t in N} truncated to t <= T"
    if T < 1:
        raise ParameterError(f"require T ≥ 1, got T={T}")
    return SchottkyDescription(_f_entries(T + 1), Parameters("ffamily", s=T + 1))


def sub_description(
    desc: SchottkyDescription, indices: Iterable[int]
) -> SchottkyDescription:
    """
    Restrict a description to a subset of its indices

    The subset is closed under k -> -k before restricting. A proper subset
    no longer matches the construction parameters, so it is marked
    ``"custom"``; restricting to every index returns the original parameters.
    """
    chosen = set()
    for k in indices:
        if k not in desc:
            raise ParameterError(f"index {k} is not part of the description")
        chosen.update((k, -k))
    params = desc.params if chosen == set(desc.indices) else Parameters("custom")
    return SchottkyDescription([desc[k] for k in sorted(chosen)], params)
