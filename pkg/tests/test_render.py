import xml.etree.ElementTree as ET

import pytest

from artifact.construct import build_base_gallery, first_certificate
from artifact.render import chimney_polygon, embedding, render_svg, scene_from_certificate
from artifact.eaw import parse_element
from artifact.gallery import ChimneySpec
from artifact.rootdata import build_root_datum, pairing

NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def scene():
    cert = first_certificate(build_base_gallery(build_root_datum("A", 2), (3, 3), 1))
    return scene_from_certificate(cert, signs=True)


def test_valid_xml_with_cusps(scene):
    root = ET.fromstring(render_svg(scene))
    assert root.tag == NS + "svg"
    folds = [c for c in root.iter(NS + "circle") if c.get("class") == "fold"]
    assert len(folds) == 2
    assert len([t for t in root.iter(NS + "text") if t.get("class") == "sign"]) == 9
    assert root.find(NS + "polygon").get("class") == "chimney"


def test_deterministic(scene):
    assert render_svg(scene) == render_svg(dict(scene))


def test_chimney_strip():
    A2 = build_root_datum("A", 2)
    spec = ChimneySpec.make({1}, parse_element(A2, "t^[-2,1]*s1s2"))
    poly = chimney_polygon(A2, spec)
    assert len(poly) >= 3
    values = {pairing((0, 1), v) for v in poly} | {pairing((1, 1), v) for v in poly}
    # every vertex lies on the strip's boundary lines or the viewport
    assert any(v in (1, 2) for v in values)


def test_embedding_integer():
    assert embedding(build_root_datum("A", 2)) == ((48, 0), (24, 41))
    assert embedding(build_root_datum("B", 2)) == ((48, 0), (48, 48))


def test_rank_refused():
    with pytest.raises(ValueError):
        render_svg({"root_system": "A3"})


def test_bare_arrangement():
    root = ET.fromstring(render_svg({"root_system": "G2", "radius": 2}))
    assert len(list(root.iter(NS + "line"))) > 6
