import json

import pytest

import treemaplab as tm


def test_flat_layout_fills_container():
    layout = tm.layout("dp", [0.25, 0.25, 0.25, 0.25], container=(1.0, 1.0))
    assert len(layout.cells) == 4
    metrics = tm.metrics(layout)
    assert metrics.perimeter == pytest.approx(8.0)
    assert metrics.max_ar == pytest.approx(1.0)
    total = sum(c.rect.area() for c in layout.cells)
    assert total == pytest.approx(1.0)


def test_spiral_builds_its_own_container():
    layout = tm.layout("sspiral", [1.0, 1.0, 2.0])
    assert layout.container.w == pytest.approx(2.0)
    assert layout.container.h == pytest.approx(2.0)
    with pytest.raises(ValueError):
        tm.layout("sspiral", [1.0, 2.0], container=(1.0, 1.0))
    with pytest.raises(ValueError):
        tm.layout("dp", [1.0, 2.0])  # needs a container


def test_tree_layout_and_json_round_trip():
    tree = {
        "name": "root",
        "children": [
            {"name": "a", "weight": 3},
            {"name": "b", "children": [{"weight": 1}, {"weight": 2}]},
        ],
    }
    layout = tm.layout_tree("squarified", json.dumps(tree), container=(3.0, 2.0))
    assert len(layout.cells) == 3
    text = tm.to_json(layout)
    parsed = tm.from_json(text)
    assert tm.to_json(parsed) == text
    assert [c.id for c in parsed.cells] == [0, 1, 2]


def test_svg_render():
    layout = tm.layout("stbundle", [1.0, 1.0, 1.0, 1.0])
    svg = tm.to_svg(layout, labels=True)
    assert svg.startswith("<svg")
    assert svg.count("<rect") >= 4


def test_algorithm_listing():
    names = tm.algorithms()
    assert "dp" in names and "sspiral" in names
    with pytest.raises(ValueError):
        tm.layout("nope", [1.0], container=(1.0, 1.0))
