from xml.etree import ElementTree

import pytest

from app.services.render import RenderFormat, RenderStyle, render_service

from tests.conftest import analyze


def test_tikz_tableau_draws_every_line(worked):
    text = render_service.render(worked, RenderFormat.TIKZ, RenderStyle.TABLEAU)
    assert text.startswith("\\begin{tikzpicture}")
    assert text.count("\\draw[lineone]") == 18
    assert text.count("\\draw[linestar]") == 6
    assert "\\draw[linevs]" not in text
    assert text.count("\\node[cell]") == 23


def test_tikz_extended_adds_vs_lines(worked):
    text = render_service.render(worked, RenderFormat.TIKZ, RenderStyle.EXTENDED)
    assert text.count("\\draw[lineone]") == 18
    assert text.count("\\draw[linestar]") == 6
    assert text.count("\\draw[linevs]") == 3
    assert text.count("\\node[repeat]") == len(worked.extended.extras())

    plain = render_service.render(worked, RenderFormat.TIKZ, RenderStyle.EXTENDED, include_vs=False)
    assert "\\draw[linevs]" not in plain


def test_svg_is_well_formed(worked):
    text = render_service.render(worked, RenderFormat.SVG, RenderStyle.EXTENDED)
    root = ElementTree.fromstring(text.split("\n", 2)[2])
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    classes = [el.get("class") for el in polylines]
    assert classes.count("lineone") == 18
    assert classes.count("linestar") == 6
    assert classes.count("linevs") == 3


def test_ascii_marks_repeats():
    text = render_service.render(analyze(1, 2, 1), RenderFormat.ASCII, RenderStyle.EXTENDED)
    assert "(2)" in text
    assert "1-lines: (1,2) (3,4)" in text
    assert "*-lines: (2,4)" in text


def test_ascii_matrix(worked):
    text = render_service.render(worked, RenderFormat.ASCII, RenderStyle.MATRIX)
    rows = text.rstrip("\n").split("\n")
    row_nine = [r for r in rows if not r.startswith("-")][8]
    glyphs = row_nine.replace("|", " ").split()
    assert glyphs[11] == "*" and glyphs[13] == "v" and glyphs[17] == "v"
    assert text.count("v") == 3


@pytest.mark.parametrize("fmt", list(RenderFormat))
@pytest.mark.parametrize("style", list(RenderStyle))
def test_every_layout_renders(fmt, style):
    assert render_service.render(analyze(2, 2, 1, 1), fmt, style)
