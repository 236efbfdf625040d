"""
Exact Möbius transformations of the upper half-plane.

Every coefficient is a :py:class:`fractions.Fraction`, all predicates compare
rationals exactly. Floats only appear in the reporting helpers
(:py:func:`hyperbolic_distance`).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union
import enum
import logging
import math

from .errors import AffineMapError, ConsistencyError
from .utils import RationalLike, as_rational, format_rational


__all__ = [
    "INFINITY",
    "QPoint",
    "MoebiusMap",
    "StripTransfer",
    "HalfCircle",
    "VerticalLine",
    "Classification",
    "compose",
    "invert",
    "apply",
    "apply_boundary",
    "trace",
    "classify",
    "isometric_circle",
    "circle_relation",
    "map_with_circles",
    "strip_transfer",
    "inversive_distance",
    "hyperbolic_distance",
    "circle_inversion",
    "inversion_boundary",
    "circle_image",
]


log = logging.getLogger(__name__)


class _Infinity:
    "The point at infinity of the boundary R ∪ {∞}"

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "oo"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

BoundaryPoint = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class QPoint:
    """
    Point of the upper half-plane with rational coordinates.

    Args:
        re: real part
        im: imaginary part, strictly positive
    """

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))
        if self.im <= 0:
            raise ValueError(f"point must lie in the upper half-plane, got im={self.im}")

    def __str__(self) -> str:
        return f"{format_rational(self.re)},{format_rational(self.im)}"


class _MatrixAction:
    "Action of a real 2x2 matrix with positive determinant on H and its boundary"

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def denominator_norm(self, z: QPoint) -> Fraction:
        "Return |cz + d|^2"
        u = self.c * z.re + self.d
        v = self.c * z.im
        return u * u + v * v

    def apply(self, z: QPoint) -> QPoint:
        x, y = z.re, z.im
        norm = self.denominator_norm(z)
        u = self.c * x + self.d
        re = ((self.a * x + self.b) * u + self.a * self.c * y * y) / norm
        return QPoint(re, self.determinant * y / norm)

    def apply_boundary(self, x: BoundaryPoint) -> BoundaryPoint:
        if x is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        x = as_rational(x)
        den = self.c * x + self.d
        if den == 0:
            return INFINITY
        return (self.a * x + self.b) / den

    def is_identity(self) -> bool:
        "Projective identity test"
        return self.b == 0 and self.c == 0 and self.a == self.d


@dataclass(frozen=True, init=False)
class MoebiusMap(_MatrixAction):
    """
    Element of PSL(2, Q) acting by z -> (az + b) / (cz + d).

    The determinant has to be exactly one. The sign is normalized so that the
    first nonzero entry among (a, b, c) is positive, hence equal group
    elements are equal dataclasses.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(
        self, a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike
    ):
        entries = [as_rational(x) for x in (a, b, c, d)]
        if entries[0] * entries[3] - entries[1] * entries[2] != 1:
            raise ValueError(
                "determinant must be exactly 1, got "
                f"{entries[0] * entries[3] - entries[1] * entries[2]}"
            )
        lead = next(x for x in entries if x != 0)
        if lead < 0:
            entries = [-x for x in entries]
        for name, value in zip("abcd", entries):
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def to_list(self) -> List[Fraction]:
        return [self.a, self.b, self.c, self.d]

    def to_str(self) -> str:
        "Entries separated by spaces, rationals as p/q"
        return " ".join(format_rational(x) for x in self.to_list())

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __call__(self, z: QPoint) -> QPoint:
        return apply(self, z)

    def __str__(self) -> str:
        return "[" + ", ".join(format_rational(x) for x in self.to_list()) + "]"


@dataclass(frozen=True)
class StripTransfer(_MatrixAction):
    """
    Affine map z -> (a z + b) / d with c = 0 and positive determinant.

    The matrix is only projectively equal to an element of PSL(2, R): its
    unit-determinant representative has irrational entries, so the rational
    matrix is stored and ``unit_normalized`` is always ``False``.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    unit_normalized = False

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.c != 0 or self.determinant <= 0:
            raise ValueError("strip transfer must be affine with positive determinant")

    def __matmul__(self, other: "StripTransfer") -> "StripTransfer":
        return StripTransfer(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self) -> Fraction:
        return self.a / self.d


@dataclass(frozen=True)
class HalfCircle:
    """
    Geodesic of H given by a Euclidean half-circle orthogonal to R.

    Args:
        center: center on the real axis
        radius: strictly positive radius
    """

    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_rational(self.center))
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def left(self) -> Fraction:
        return self.center - self.radius

    @property
    def right(self) -> Fraction:
        return self.center + self.radius

    @property
    def endpoints(self) -> Tuple[Fraction, Fraction]:
        return (self.left, self.right)

    def power(self, z: QPoint) -> Fraction:
        "Return |z - center|^2 - radius^2, negative exactly inside the circle"
        u = z.re - self.center
        return u * u + z.im * z.im - self.radius * self.radius

    def contains(self, z: QPoint) -> bool:
        "Strictly inside"
        return self.power(z) < 0

    def strip(self) -> Tuple[Fraction, Fraction]:
        "Real parts bounding the open strip of half-width twice the radius"
        return (self.center - 2 * self.radius, self.center + 2 * self.radius)

    def scaled(self, factor: RationalLike) -> "HalfCircle":
        factor = as_rational(factor)
        return HalfCircle(self.center * factor, self.radius * factor)

    def __str__(self) -> str:
        return f"C({format_rational(self.center)}, {format_rational(self.radius)})"


@dataclass(frozen=True)
class VerticalLine:
    "Geodesic Re(z) = abscissa, the image of a half-circle with an endpoint sent to ∞"

    abscissa: Fraction

    def __post_init__(self):
        object.__setattr__(self, "abscissa", as_rational(self.abscissa))

    @property
    def endpoints(self) -> Tuple[BoundaryPoint, BoundaryPoint]:
        return (self.abscissa, INFINITY)

    def __str__(self) -> str:
        return f"L({format_rational(self.abscissa)})"


Geodesic = Union[HalfCircle, VerticalLine]


class Classification(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """
    Matrix product ``f g``, i.e. the map z -> f(g(z))

    The unit determinant is re-asserted by the constructor.
    """
    return MoebiusMap(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


def invert(f: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(f.d, -f.b, -f.c, f.a)


def apply(f: MoebiusMap, z: QPoint) -> QPoint:
    """
    Evaluate f at a point of H

    The imaginary part of the image equals ``Im(z) / |cz + d|^2`` exactly.
    """
    return f.apply(z)


def apply_boundary(f: MoebiusMap, x: BoundaryPoint) -> BoundaryPoint:
    "Extended action of f on R ∪ {∞}"
    return f.apply_boundary(x)


def trace(f: MoebiusMap) -> Fraction:
    return f.a + f.d


def classify(f: MoebiusMap) -> Classification:
    "Classify by the exact absolute value of the trace"
    t = abs(trace(f))
    if t > 2:
        return Classification.HYPERBOLIC
    if t < 2:
        return Classification.ELLIPTIC
    if f.is_identity():
        return Classification.IDENTITY
    return Classification.PARABOLIC


def isometric_circle(f: MoebiusMap) -> HalfCircle:
    """
    Return the isometric circle C(f) = {z : |cz + d| = 1}

    Its center is -d/c and its radius 1/|c|.

    Raises:
        AffineMapError: when c = 0
    """
    if f.c == 0:
        raise AffineMapError("isometric circle undefined for affine maps")
    return HalfCircle(-f.d / f.c, 1 / abs(f.c))


def circle_relation(f: MoebiusMap) -> Tuple[HalfCircle, HalfCircle]:
    """
    Return the pair (C(f), C(f^-1)) after checking that f sends the endpoints
    of the first onto the endpoints of the second.
    """
    source = isometric_circle(f)
    target = isometric_circle(invert(f))
    images = {apply_boundary(f, x) for x in source.endpoints}
    if images != set(target.endpoints):
        raise ConsistencyError(
            f"{f} maps the endpoints of {source} to {images}, expected {target.endpoints}"
        )
    return source, target


def map_with_circles(
    center: RationalLike, inverse_center: RationalLike, radius: RationalLike
) -> MoebiusMap:
    """
    Return the map whose isometric circles are C(center, radius) and
    C(inverse_center, radius).

    From the isometric circle relations c = 1/r, d = -center c and
    a = inverse_center c; b follows from ad - bc = 1.
    """
    center, inverse_center, radius = (
        as_rational(center),
        as_rational(inverse_center),
        as_rational(radius),
    )
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    c = 1 / radius
    d = -center * c
    a = inverse_center * c
    b = (a * d - 1) / c
    return MoebiusMap(a, b, c, d)


def strip_transfer(first: HalfCircle, second: HalfCircle) -> StripTransfer:
    """
    Affine map z -> (r2/r1)(z - α1) + α2 sending the strip of the first circle
    onto the strip of the second one.

    Stored as the rational matrix (r2, r1 α2 - r2 α1; 0, r1) of determinant
    r1 r2.
    """
    r1, r2 = first.radius, second.radius
    return StripTransfer(r2, r1 * second.center - r2 * first.center, 0, r1)


def inversive_distance(first: HalfCircle, second: HalfCircle) -> Fraction:
    r"""
    Exact inversive distance of two half-circles

    .. math::

        \delta = \frac{(\alpha_1 - \alpha_2)^2 - r_1^2 - r_2^2}{2 r_1 r_2}

    ``delta > 1`` exactly when the half-circles are disjoint and not nested.
    """
    gap = first.center - second.center
    return (gap * gap - first.radius**2 - second.radius**2) / (
        2 * first.radius * second.radius
    )


def hyperbolic_distance(first: HalfCircle, second: HalfCircle) -> float:
    "Distance between two disjoint geodesics as arccosh(delta), for reporting"
    delta = inversive_distance(first, second)
    if delta <= 1:
        return 0.0
    return math.acosh(delta)


def circle_inversion(circle: HalfCircle, z: QPoint) -> QPoint:
    """
    Orientation reversing inversion z -> α + r^2 / (conj(z) - α)

    Points of the circle are fixed, inside and outside are exchanged.
    """
    u = z.re - circle.center
    norm = u * u + z.im * z.im
    r2 = circle.radius * circle.radius
    return QPoint(circle.center + r2 * u / norm, r2 * z.im / norm)


def inversion_boundary(circle: HalfCircle, x: BoundaryPoint) -> BoundaryPoint:
    "Extension of :py:func:`circle_inversion` to R ∪ {∞}"
    if x is INFINITY:
        return circle.center
    x = as_rational(x)
    if x == circle.center:
        return INFINITY
    return circle.center + circle.radius**2 / (x - circle.center)


def circle_image(f: MoebiusMap, geodesic: Geodesic) -> Geodesic:
    """
    Exact image of a geodesic under f

    The image is a vertical line exactly when one endpoint is sent to ∞.
    """
    ends = [apply_boundary(f, x) for x in geodesic.endpoints]
    finite = [x for x in ends if x is not INFINITY]
    if len(finite) == 1:
        return VerticalLine(finite[0])
    if len(finite) != 2:
        raise ConsistencyError(f"degenerate image of {geodesic} under {f}")
    lo, hi = sorted(finite)
    return HalfCircle((lo + hi) / 2, (hi - lo) / 2)
