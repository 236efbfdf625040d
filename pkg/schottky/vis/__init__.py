from .svg import RenderSpec, render_svg, fit_viewport  # noqa: F401
from .utils import circle_frame, colormap_column  # noqa: F401
