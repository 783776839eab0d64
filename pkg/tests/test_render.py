import xml.etree.ElementTree as ET

import pytest

from fractal_dirac import preset, render_svg, write_svg


def test_dust_square_count():
    doc = render_svg(preset("cantor_dust2"), 3)
    assert doc.count("<polygon") == 1 + 4 + 16 + 64


def test_carpet_level_one_count():
    doc = render_svg(preset("sierpinski_carpet"), 1)
    assert doc.count("<polygon") == 9


def test_svg_is_well_formed_xml(tmp_path):
    path = tmp_path / "carpet.svg"
    write_svg(preset("sierpinski_carpet"), 2, path)
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")


def test_rotation_outlines_are_tilted():
    doc = render_svg(preset("rotation:0.5"), 2)
    polygons = [line for line in doc.splitlines() if line.startswith("<polygon")]
    assert len(polygons) == 1 + 4 + 16
    # a tilted square's polygon has four distinct x coordinates
    pts = polygons[1].split('points="')[1].split('"')[0].split()
    xs = {p.split(",")[0] for p in pts}
    assert len(xs) == 4


def test_level_zero_arrows_present():
    doc = render_svg(preset("cantor_dust2"), 0)
    assert doc.count("marker-end") == 4  # the four oriented edges of the square


def test_projection_warning_for_other_dimensions():
    with pytest.warns(UserWarning):
        render_svg(preset("menger_sponge"), 1)
    with pytest.warns(UserWarning):
        render_svg(preset("cantor_set"), 1)


def test_render_is_byte_stable():
    a = render_svg(preset("cantor_dust2"), 2)
    b = render_svg(preset("cantor_dust2"), 2)
    assert a == b
