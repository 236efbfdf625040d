import logging
import xml.etree.ElementTree as etree
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from schottky.description import SchottkyDescription
from schottky.errors import ParseError, ParameterError
from schottky.group import tessellation_tiles
from schottky.moebius import HalfCircle, VerticalLine
from schottky.topology import CompactBox, compact_box
from schottky.utils import RationalLike, as_rational, parse_rational

from .utils import circle_frame, colormap_column, format_number


log = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"

LAYERS = ("circles", "intervals", "domain", "tiles", "box", "labels")

# longest words drawn by the tile layer
MAX_TILE_LENGTH = 6


@dataclass(frozen=True)
class RenderSpec:
    """
    What to draw and where

    Args:
        viewport: (x_min, x_max, y_max) in the coordinates of H, ``None`` to
            fit the description
        layers: layer name mapped to its parameter, the word length for
            ``tiles`` and the level l for ``box``
        palette: matplotlib colormap name for the circles
        stroke_width: stroke width in pixels
        width: width of the picture in pixels
    """

    viewport: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    layers: Dict[str, Optional[int]] = field(default_factory=lambda: {"circles": None})
    palette: str = "viridis"
    stroke_width: float = 1.0
    width: int = 1200

    def __post_init__(self):
        unknown = set(self.layers) - set(LAYERS)
        if unknown:
            raise ParameterError(f"unknown layers: {', '.join(sorted(unknown))}")
        if self.viewport is not None:
            x_min, x_max, y_max = (as_rational(v) for v in self.viewport)
            if not x_min < x_max:
                raise ParameterError(f"viewport needs x_min < x_max, got {x_min}, {x_max}")
            if y_max <= 0:
                raise ParameterError(f"viewport needs y_max > 0, got {y_max}")
            object.__setattr__(self, "viewport", (x_min, x_max, y_max))
        if self.width <= 0:
            raise ParameterError(f"width must be positive, got {self.width}")

    @staticmethod
    def parse_layers(text: str) -> Dict[str, Optional[int]]:
        """
        Parse a layer list such as ``circles,intervals,domain,tiles:2,box:1,labels``
        """
        layers = {}
        for token in (t.strip() for t in text.split(",")):
            if not token:
                continue
            name, sep, value = token.partition(":")
            if name not in LAYERS:
                raise ParseError(f"unknown layer: '{name}'")
            try:
                layers[name] = int(value) if sep else None
            except ValueError as exc:
                raise ParseError(f"malformed layer parameter: '{token}'") from exc
        return layers

    @staticmethod
    def parse_viewport(text: str) -> Tuple[Fraction, Fraction, Fraction]:
        "Parse ``x_min,x_max,y_max``"
        parts = text.split(",")
        if len(parts) != 3:
            raise ParseError(f"viewport must be x_min,x_max,y_max, got '{text}'")
        return tuple(parse_rational(p) for p in parts)


def fit_viewport(desc: SchottkyDescription) -> Tuple[Fraction, Fraction, Fraction]:
    "Viewport holding every interval with a margin of 10%"
    if len(desc) == 0:
        return Fraction(-1), Fraction(1), Fraction(1)
    left = min(e.interval.left for e in desc)
    right = max(e.interval.right for e in desc)
    margin = (right - left) / 10
    top = max(e.circle.radius for e in desc)
    return left - margin, right + margin, top * Fraction(6, 5)


def _x(value: RationalLike) -> str:
    return format_number(value)


def _y(value: RationalLike) -> str:
    "SVG y axis points down"
    return format_number(-as_rational(value))


def _arc(circle: HalfCircle) -> str:
    r = format_number(circle.radius)
    return f"M {_x(circle.left)} 0 A {r} {r} 0 0 1 {_x(circle.right)} 0"


def _in_view(left: Fraction, right: Fraction, viewport) -> bool:
    x_min, x_max, _ = viewport
    return right >= x_min and left <= x_max


def create_circle(parent: etree.Element, circle: HalfCircle, color: str, css: str):
    return etree.SubElement(
        parent, "path", {"class": css, "d": _arc(circle), "stroke": color, "fill": "none"}
    )


def create_vertical(parent: etree.Element, line: VerticalLine, y_max: Fraction, css: str):
    return etree.SubElement(
        parent,
        "line",
        {
            "class": css,
            "x1": _x(line.abscissa),
            "y1": "0",
            "x2": _x(line.abscissa),
            "y2": _y(y_max),
            "stroke": "#888888",
        },
    )


def create_box(parent: etree.Element, box: CompactBox):
    return etree.SubElement(
        parent,
        "rect",
        {
            "class": "box",
            "x": _x(box.x_min),
            "y": _y(box.y_max),
            "width": format_number(box.x_max - box.x_min),
            "height": format_number(box.y_max - box.y_min),
            "fill": "none",
            "stroke": "#d62728",
        },
    )


def _domain_path(circles: List[HalfCircle], viewport) -> str:
    "Viewport rectangle and every half-disc, to be filled with the even-odd rule"
    x_min, x_max, y_max = viewport
    parts = [
        f"M {_x(x_min)} 0 L {_x(x_max)} 0 L {_x(x_max)} {_y(y_max)} "
        f"L {_x(x_min)} {_y(y_max)} Z"
    ]
    parts.extend(_arc(c) + " Z" for c in circles)
    return " ".join(parts)


def _box_for(desc: SchottkyDescription, l: Optional[int]) -> Optional[CompactBox]:
    if desc.params.s is None:
        log.warning("box layer skipped: the description has no parameter s")
        return None
    return compact_box(desc.params.s, 1 if l is None else l)


def render_svg(desc: SchottkyDescription, spec: Optional[RenderSpec] = None) -> str:
    """
    Draw a description as an SVG document

    Coordinates are those of H with the y axis flipped, rationals are written
    with 12 significant digits. Every layer is a ``<g>`` element holding one
    element per drawn item.

    Args:
        desc (SchottkyDescription): description to draw
        spec (RenderSpec, optional): layers, viewport and style. Defaults to
            the circles layer on a fitted viewport.

    Returns:
        str: the SVG document
    """
    spec = spec or RenderSpec()
    viewport = spec.viewport or fit_viewport(desc)
    x_min, x_max, y_max = viewport
    # room below the axis for the interval ticks
    depth = y_max / 20
    scale = spec.width / float(x_max - x_min)

    root = etree.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(spec.width),
            "height": format(float(y_max + depth) * scale, ".12g"),
            "viewBox": " ".join(
                [_x(x_min), _y(y_max), format_number(x_max - x_min), format_number(y_max + depth)]
            ),
        },
    )
    style = etree.SubElement(root, "style")
    style.text = (
        f"path, line, rect {{ stroke-width: {spec.stroke_width}px; "
        "vector-effect: non-scaling-stroke; }"
    )
    etree.SubElement(
        root,
        "line",
        {"class": "axis", "x1": _x(x_min), "y1": "0", "x2": _x(x_max), "y2": "0", "stroke": "#000000"},
    )

    frame = circle_frame(desc)
    frame["color"] = colormap_column(frame, "level", cmap=spec.palette)
    visible = [
        row for _, row in frame.iterrows() if _in_view(row["left"], row["right"], viewport)
    ]
    drawn = 0

    if "domain" in spec.layers:
        group = etree.SubElement(root, "g", {"class": "domain"})
        etree.SubElement(
            group,
            "path",
            {
                "class": "domain",
                "d": _domain_path([HalfCircle(r["center"], r["radius"]) for r in visible], viewport),
                "fill": "#e8eef7",
                "fill-rule": "evenodd",
                "stroke": "none",
            },
        )

    if "tiles" in spec.layers:
        drawn += _tiles_layer(root, desc, spec.layers["tiles"], viewport)

    if "circles" in spec.layers:
        group = etree.SubElement(root, "g", {"class": "circles"})
        for row in visible:
            create_circle(group, HalfCircle(row["center"], row["radius"]), row["color"], "circle")
            drawn += 1

    if "intervals" in spec.layers:
        group = etree.SubElement(root, "g", {"class": "intervals"})
        for row in visible:
            etree.SubElement(
                group,
                "line",
                {
                    "class": "interval",
                    "x1": _x(row["left"]),
                    "y1": format_number(depth / 2),
                    "x2": _x(row["right"]),
                    "y2": format_number(depth / 2),
                    "stroke": row["color"],
                },
            )
            drawn += 1

    if "box" in spec.layers:
        group = etree.SubElement(root, "g", {"class": "box"})
        box = _box_for(desc, spec.layers["box"])
        if box is not None:
            create_box(group, box)
            drawn += 1

    if "labels" in spec.layers:
        group = etree.SubElement(root, "g", {"class": "labels"})
        for row in visible:
            text = etree.SubElement(
                group,
                "text",
                {
                    "class": "label",
                    "x": _x(row["center"]),
                    "y": _y(row["radius"]),
                    "font-size": format_number(row["radius"] / 2),
                    "text-anchor": "middle",
                },
            )
            text.text = row["label"]

    if drawn == 0:
        log.warning("viewport %s excludes all content", tuple(format_number(v) for v in viewport))

    return '<?xml version="1.0" encoding="UTF-8"?>\n' + etree.tostring(root, encoding="unicode") + "\n"


def _tiles_layer(root: etree.Element, desc: SchottkyDescription, max_len: Optional[int], viewport) -> int:
    "Images of the boundary circles under the words of length 1..max_len"
    max_len = 2 if max_len is None else max_len
    if max_len > MAX_TILE_LENGTH:
        log.info("tile word length capped at %d", MAX_TILE_LENGTH)
        max_len = MAX_TILE_LENGTH
    group = etree.SubElement(root, "g", {"class": "tiles"})
    drawn = 0
    for word, images in tessellation_tiles(desc, max_len):
        if len(word) == 0:
            continue
        for image in images:
            if isinstance(image, VerticalLine):
                if viewport[0] <= image.abscissa <= viewport[1]:
                    create_vertical(group, image, viewport[2], "tile")
                    drawn += 1
            elif _in_view(image.left, image.right, viewport):
                create_circle(group, image, "#888888", "tile")
                drawn += 1
    return drawn

