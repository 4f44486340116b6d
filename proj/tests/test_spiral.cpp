#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "treemaplab/rng.hpp"
#include "treemaplab/spiral.hpp"
#include "treemaplab/treemodel.hpp"

namespace {

using namespace treemaplab;

double overlap_area(const Rect& a, const Rect& b) {
    double w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    double h = std::min(a.top(), b.top()) - std::max(a.y, b.y);
    return std::max(w, 0.0) * std::max(h, 0.0);
}

void check_invariants(const Layout& layout, const AreaList& areas,
                      double tol = 1e-9) {
    REQUIRE(layout.cells.size() == areas.size());
    CHECK(layout.container.w >= layout.container.h - tol);
    double scale = std::max(layout.container.w, layout.container.h);
    double total = 0.0;
    for (const Cell& cell : layout.cells) {
        const Rect& r = cell.rect;
        CHECK(r.x >= layout.container.x - tol * scale);
        CHECK(r.y >= layout.container.y - tol * scale);
        CHECK(r.right() <= layout.container.right() + tol * scale);
        CHECK(r.top() <= layout.container.top() + tol * scale);
        auto it = std::find(areas.ids.begin(), areas.ids.end(), cell.id);
        REQUIRE(it != areas.ids.end());
        double want = areas.areas[it - areas.ids.begin()];
        CHECK(r.area() == doctest::Approx(want).epsilon(1e-9));
        total += r.area();
    }
    CHECK(total == doctest::Approx(layout.container.area()).epsilon(1e-9));
    for (std::size_t i = 0; i < layout.cells.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.cells.size(); ++j) {
            CHECK(overlap_area(layout.cells[i].rect, layout.cells[j].rect) <=
                  tol * scale * scale);
        }
    }
}

const Rect& rect_of(const Layout& layout, int id) {
    for (const Cell& cell : layout.cells) {
        if (cell.id == id) {
            return cell.rect;
        }
    }
    REQUIRE(false);
    return layout.cells.front().rect;
}

void check_rect(const Rect& r, double x, double y, double w, double h) {
    CHECK(r.x == doctest::Approx(x));
    CHECK(r.y == doctest::Approx(y));
    CHECK(r.w == doctest::Approx(w));
    CHECK(r.h == doctest::Approx(h));
}

TEST_CASE("two equal areas form a unit-height row") {
    AreaList areas = make_area_list({1.0, 1.0});
    Layout layout = symmetric_spiral(areas, 2.0);
    check_invariants(layout, areas);
    check_rect(layout.container, 0, 0, 2, 1);
    check_rect(rect_of(layout, 0), 1, 0, 1, 1);
    check_rect(rect_of(layout, 1), 0, 0, 1, 1);
}

TEST_CASE("growth cycles top then right") {
    AreaList three = make_area_list({1.0, 1.0, 2.0});
    Layout layout = symmetric_spiral(three, 2.0);
    check_invariants(layout, three);
    check_rect(layout.container, 0, 0, 2, 2);
    check_rect(rect_of(layout, 2), 0, 1, 2, 1);

    AreaList four = make_area_list({1.0, 1.0, 2.0, 4.0});
    layout = symmetric_spiral(four, 2.0);
    check_invariants(layout, four);
    check_rect(layout.container, 0, 0, 4, 2);
    check_rect(rect_of(layout, 3), 2, 0, 2, 2);
}

TEST_CASE("six equal areas bundle into a three by two block of squares") {
    AreaList areas = make_area_list(std::vector<double>(6, 1.0));
    Layout layout = square_bundle(areas, 2.0);
    check_invariants(layout, areas);
    CHECK(layout.container.w == doctest::Approx(3.0));
    CHECK(layout.container.h == doctest::Approx(2.0));
    for (const Cell& cell : layout.cells) {
        CHECK(cell.rect.w == doctest::Approx(1.0));
        CHECK(cell.rect.h == doctest::Approx(1.0));
    }
    REQUIRE(layout.bundles.size() == 1);
    CHECK(layout.bundles[0] == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("four equal areas strip-bundle into a square") {
    AreaList areas = make_area_list(std::vector<double>(4, 1.0));
    Layout layout = strip_bundle(areas, 2.0);
    check_invariants(layout, areas);
    CHECK(layout.container.w == doctest::Approx(2.0));
    CHECK(layout.container.h == doctest::Approx(2.0));
    for (const Cell& cell : layout.cells) {
        CHECK(aspect_ratio(cell.rect) == doctest::Approx(1.0));
    }
    REQUIRE(layout.bundles.size() == 1);
    CHECK(layout.bundles[0] == std::vector<int>{2, 3});
}

TEST_CASE("single area becomes a square, any variant") {
    AreaList areas = make_area_list({4.0});
    for (SpiralVariant v : {SpiralVariant::symmetric, SpiralVariant::square_bundle,
                            SpiralVariant::strip_bundle}) {
        Layout layout = spiral_layout(v, areas, 2.0);
        REQUIRE(layout.cells.size() == 1);
        check_rect(layout.cells[0].rect, 0, 0, 2, 2);
    }
}

TEST_CASE("random instances keep the construction invariants") {
    Rng rng(99);
    for (SpiralVariant v : {SpiralVariant::symmetric, SpiralVariant::square_bundle,
                            SpiralVariant::strip_bundle}) {
        for (double ratio : {2.0, golden_seed_ratio}) {
            for (int rep = 0; rep < 6; ++rep) {
                int n = 1 + static_cast<int>(rng.below(40));
                std::vector<double> raw(n);
                for (double& a : raw) {
                    a = 0.01 + rng.uniform01() * 10.0;
                }
                AreaList areas = make_area_list(raw);
                Layout layout = spiral_layout(v, areas, ratio);
                check_invariants(layout, areas);
            }
        }
    }
}

TEST_CASE("hierarchies keep leaf areas and assign ids in document order") {
    const char* text = R"({
        "name": "root",
        "children": [
            {"name": "g1", "children": [{"weight": 1}, {"weight": 1}]},
            {"name": "g2", "children": [{"weight": 2}, {"weight": 2},
                                         {"weight": 2}, {"weight": 2}]},
            {"name": "solo", "weight": 3}
        ]
    })";
    WeightedTree tree =
        normalize_weights(parse_tree(text, TreeFormat::json), 13.0);
    for (SpiralVariant v : {SpiralVariant::symmetric, SpiralVariant::square_bundle,
                            SpiralVariant::strip_bundle}) {
        Layout layout = spiral_hierarchy(v, tree, 2.0);
        AreaList leaves = leaf_areas(tree);
        check_invariants(layout, leaves);
        REQUIRE(layout.cells.size() == 7);
        for (int id = 0; id < 7; ++id) {
            CHECK(layout.cells[id].id == id);
        }
        CHECK(rect_of(layout, 6).area() == doctest::Approx(3.0));
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(symmetric_spiral(make_area_list({})), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_spiral(make_area_list({1.0, -1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(symmetric_spiral(make_area_list({1.0}), 0.0),
                    std::invalid_argument);
}

}  // namespace
