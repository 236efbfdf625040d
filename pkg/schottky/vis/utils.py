from fractions import Fraction

import pandas as pd
import matplotlib.pyplot as plt
import matplotlib.colors as colors
import matplotlib.cm as cmx

from schottky.description import LabelKind, SchottkyDescription


def format_number(value: Fraction) -> str:
    "Decimal form of an exact value with 12 significant digits"
    return format(float(value), ".12g")


def circle_frame(desc: SchottkyDescription) -> pd.DataFrame:
    """
    One row per circle of the description

    The ``level`` column holds ``n`` for the g and h families and 0 for the
    other generators.

    Args:
        desc: description to tabulate
    """
    rows = [
        {
            "index": e.index,
            "label": str(e.label),
            "kind": e.label.kind.value,
            "level": e.label.n if e.label.kind in (LabelKind.G, LabelKind.H) else 0,
            "center": e.circle.center,
            "radius": e.circle.radius,
            "left": e.interval.left,
            "right": e.interval.right,
        }
        for e in desc
    ]
    columns = ["index", "label", "kind", "level", "center", "radius", "left", "right"]
    return pd.DataFrame(rows, columns=columns)


def colormap_column(
    frame: pd.DataFrame, column: str, cmap: str = "viridis", missing: str = "#000000"
) -> pd.Series:
    """
    HEX colors for the values of `column`, indexed like `frame`

    A constant column maps to the lower end of the colormap.

    Args:
        frame : table of circles, see :py:func:`circle_frame`
        column : numeric column to color by
        cmap : matplotlib colormap name
        missing : HEX color for NaN or None
    """
    if frame.empty:
        return pd.Series(index=frame.index, dtype=object)

    values = frame[column].astype(float)
    colormap = plt.get_cmap(cmap)
    vmin, vmax = values.min(), values.max()
    if vmin == vmax:
        vmax = vmin + 1
    cnorm = colors.Normalize(vmin=vmin, vmax=vmax)
    scalarmap = cmx.ScalarMappable(norm=cnorm, cmap=colormap)

    rgba = scalarmap.to_rgba(values)

    colored = pd.Series(index=frame.index, data=[colors.rgb2hex(row) for row in rgba])
    colored.loc[values.isnull()] = missing
    return colored
