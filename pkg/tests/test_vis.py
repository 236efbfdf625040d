import logging
import xml.etree.ElementTree as etree
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from schottky.description import SchottkyDescription, build_gamma_ms, build_gamma_s
from schottky.errors import ParameterError, ParseError
from schottky.vis import RenderSpec, circle_frame, colormap_column, fit_viewport, render_svg


NS = {"svg": "http://www.w3.org/2000/svg"}


def parse(document: str) -> etree.Element:
    assert document.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    return etree.fromstring(document.split("\n", 1)[1])


def find(root, css):
    return root.findall(f".//*[@class='{css}']")


def test_circles_layer():
    root = parse(render_svg(build_gamma_s(3)))
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    circles = find(root, "circle")
    assert len(circles) == 4
    for path in circles:
        assert " A " in path.get("d")
        assert path.get("stroke").startswith("#")
    assert root.find("svg:g[@class='circles']", NS) is not None


def test_circle_arc_coordinates():
    root = parse(render_svg(build_gamma_s(2)))
    paths = {p.get("d") for p in find(root, "circle")}
    assert paths == {"M -6 0 A 1 1 0 0 1 -4 0", "M 4 0 A 1 1 0 0 1 6 0"}


def test_circles_and_intervals():
    spec = RenderSpec(layers=RenderSpec.parse_layers("circles,intervals"))
    root = parse(render_svg(build_gamma_ms(2, 2, 3), spec))
    assert len(find(root, "circle")) == 26
    assert len(find(root, "interval")) == 26


def test_fit_viewport():
    assert fit_viewport(build_gamma_s(2)) == (Fraction(-36, 5), Fraction(36, 5), Fraction(6, 5))


def test_render_deterministic():
    desc = build_gamma_ms(2, 2, 2)
    spec = RenderSpec(layers=RenderSpec.parse_layers("circles,intervals,domain,tiles:1,box,labels"))
    assert render_svg(desc, spec) == render_svg(desc, spec)


def test_domain_layer():
    spec = RenderSpec(layers={"domain": None})
    root = parse(render_svg(build_gamma_s(3), spec))
    (path,) = root.findall(".//svg:path[@class='domain']", NS)
    assert path.get("fill-rule") == "evenodd"
    assert path.get("d").count(" A ") == 4


def test_box_layer():
    spec = RenderSpec(layers={"box": 1})
    root = parse(render_svg(build_gamma_s(2), spec))
    (rect,) = root.findall(".//svg:rect", NS)
    assert rect.get("class") == "box"
    assert (rect.get("x"), rect.get("y")) == ("-6", "-2")
    assert (rect.get("width"), rect.get("height")) == ("12", "1")


def test_box_layer_custom(caplog):
    desc = SchottkyDescription.from_pairs([(0, 6, 1)])
    with caplog.at_level(logging.WARNING):
        root = parse(render_svg(desc, RenderSpec(layers={"circles": None, "box": 2})))
    assert "box layer skipped" in caplog.text
    assert root.findall(".//svg:rect", NS) == []


def test_tiles_layer():
    spec = RenderSpec(layers={"tiles": 1})
    root = parse(render_svg(build_gamma_s(2), spec))
    assert len(find(root, "tile")) == 4


def test_tiles_capped(caplog):
    spec = RenderSpec(layers={"tiles": 9}, viewport=(100, 101, 1))
    with caplog.at_level(logging.INFO, logger="schottky.vis.svg"):
        render_svg(SchottkyDescription.from_pairs([(0, 6, 1)]), spec)
    assert "capped" in caplog.text


def test_labels_layer():
    spec = RenderSpec(layers={"labels": None})
    root = parse(render_svg(build_gamma_s(2), spec))
    assert sorted(t.text for t in find(root, "label")) == ["f1", "f1^-1"]


def test_empty_viewport_warns(caplog):
    spec = RenderSpec(viewport=(100, 200, 1))
    with caplog.at_level(logging.WARNING):
        root = parse(render_svg(build_gamma_s(3), spec))
    assert "excludes all content" in caplog.text
    assert find(root, "circle") == []


@pytest.mark.parametrize(
    "kwargs",
    [
        {"layers": {"hexagons": None}},
        {"viewport": (1, 1, 1)},
        {"viewport": (0, 1, 0)},
        {"width": 0},
    ],
)
def test_render_spec_errors(kwargs):
    with pytest.raises(ParameterError):
        RenderSpec(**kwargs)


def test_parse_layers():
    assert RenderSpec.parse_layers("tiles:3, box") == {"tiles": 3, "box": None}
    assert RenderSpec.parse_layers("") == {}
    with pytest.raises(ParseError, match="unknown layer"):
        RenderSpec.parse_layers("circles,bogus")
    with pytest.raises(ParseError, match="malformed layer"):
        RenderSpec.parse_layers("tiles:x")


def test_parse_viewport():
    assert RenderSpec.parse_viewport("-1,1/2,2") == (-1, Fraction(1, 2), 2)
    with pytest.raises(ParseError):
        RenderSpec.parse_viewport("1,2")


def test_circle_frame():
    frame = circle_frame(build_gamma_ms(2, 2, 2))
    assert list(frame.columns) == [
        "index",
        "label",
        "kind",
        "level",
        "center",
        "radius",
        "left",
        "right",
    ]
    assert len(frame) == 18
    assert set(frame["level"]) == {0, 1, 2}
    assert set(frame["kind"]) == {"f", "g", "h"}


def test_colormap_column():
    frame = pd.DataFrame({"level": [1.0, np.nan, 3.0]})
    colored = colormap_column(frame, "level", missing="#ffffff")
    assert list(colored) == ["#440154", "#ffffff", "#fde725"]


def test_colormap_column_constant():
    colored = colormap_column(pd.DataFrame({"level": [0, 0, 0]}), "level")
    assert colored.nunique() == 1
    assert colormap_column(pd.DataFrame({"level": []}), "level").empty
