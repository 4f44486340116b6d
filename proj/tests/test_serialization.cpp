#include <string>
#include <vector>

#include "doctest.h"
#include "treemaplab/serialization.hpp"
#include "treemaplab/svg.hpp"
#include "treemaplab/treemodel.hpp"

namespace {

using namespace treemaplab;

Layout sample_layout() {
    Layout layout;
    layout.container = Rect{0, 0, 2, 2};
    layout.cells.push_back(Cell{0, "alpha", Rect{0, 1, 2, 1}});
    layout.cells.push_back(Cell{1, "b<&>\"", Rect{0, 0, 1, 1}});
    layout.cells.push_back(Cell{2, "", Rect{1, 0, 1, 1}});
    layout.bundles.push_back({1, 2});
    return layout;
}

TEST_CASE("layout json round trip is exact") {
    Layout original = sample_layout();
    original.cells[0].rect.w = 0.1 + 0.2;  // a value without a short decimal form
    std::string text = layout_to_json(original);
    Layout parsed = layout_from_json(text);
    REQUIRE(parsed.cells.size() == original.cells.size());
    CHECK(parsed.container.w == original.container.w);
    for (std::size_t i = 0; i < original.cells.size(); ++i) {
        CHECK(parsed.cells[i].id == original.cells[i].id);
        CHECK(parsed.cells[i].name == original.cells[i].name);
        CHECK(parsed.cells[i].rect.x == original.cells[i].rect.x);
        CHECK(parsed.cells[i].rect.y == original.cells[i].rect.y);
        CHECK(parsed.cells[i].rect.w == original.cells[i].rect.w);
        CHECK(parsed.cells[i].rect.h == original.cells[i].rect.h);
    }
    REQUIRE(parsed.bundles.size() == 1);
    CHECK(parsed.bundles[0] == std::vector<int>{1, 2});
    // serialization is deterministic
    CHECK(layout_to_json(original) == text);
    CHECK(layout_to_json(parsed) == text);
}

TEST_CASE("malformed layout documents are rejected with positions") {
    CHECK_THROWS_AS(layout_from_json("{"), ParseError);
    CHECK_THROWS_AS(layout_from_json("[]"), std::runtime_error);
    CHECK_THROWS_AS(layout_from_json("{\"cells\": []}"), std::runtime_error);
    CHECK_THROWS_AS(
        layout_from_json(
            R"({"container": {"x":0,"y":0,"w":1,"h":1}, "cells": [{"x":0}]})"),
        std::runtime_error);
}

std::vector<ReportRow> sample_rows() {
    ReportRow plain;
    plain.algorithm = "dp";
    plain.n = 7;
    plain.seed = 42;
    plain.perimeter = 10.464894;
    plain.max_ar = 2.25;
    plain.avg_ar = 1.5;
    plain.awar = 1.625;
    ReportRow study = plain;
    study.algorithm = "sspiral";
    study.level = 0.05;
    study.rounds = 10;
    study.max_hd = 0.125;
    study.avg_hd = 0.01;
    return {plain, study};
}

TEST_CASE("csv report has the pinned header and blank optional fields") {
    std::string csv = rows_to_csv(sample_rows());
    CHECK(csv.rfind("algorithm,n,level,rounds,seed,perimeter,maxAR,avgAR,AWAR,maxHD,"
                    "avgHD\n",
                    0) == 0);
    CHECK(csv.find("dp,7,,,42,10.464894,2.25,1.5,1.625,,\n") != std::string::npos);
    CHECK(csv.find("sspiral,7,0.05,10,42,") != std::string::npos);
}

TEST_CASE("json report uses null for absent fields") {
    std::string text = rows_to_json(sample_rows());
    CHECK(text.find("\"level\": null") != std::string::npos);
    CHECK(text.find("\"maxHD\": null") != std::string::npos);
    CHECK(text.find("\"algorithm\": \"sspiral\"") != std::string::npos);
}

TEST_CASE("markdown report renders one table row per report row") {
    std::string md = rows_to_markdown(sample_rows());
    CHECK(md.find("| algorithm |") == 0);
    CHECK(md.find("| dp | 7 | - | - |") != std::string::npos);
    CHECK(md.find("| sspiral | 7 | 0.05 | 10 |") != std::string::npos);
}

TEST_CASE("svg output flips the vertical axis and escapes labels") {
    Layout layout = sample_layout();
    SvgOptions options;
    options.labels = true;
    std::string svg = render_svg(layout, options);
    CHECK(svg.rfind("<svg", 0) == 0);
    // one rect per cell plus one bundle outline
    std::size_t rects = 0;
    for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
         pos = svg.find("<rect", pos + 1)) {
        ++rects;
    }
    CHECK(rects == 4);
    // the cell anchored at world y=1 (top half) lands at image y=0
    CHECK(svg.find("y=\"0\" width=\"2\"") != std::string::npos);
    CHECK(svg.find("b&lt;&amp;&gt;&quot;") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 2 2\"") != std::string::npos);
    // deterministic output
    CHECK(render_svg(layout, options) == svg);
}

TEST_CASE("svg rejects bundles that reference unknown cells") {
    Layout layout = sample_layout();
    layout.bundles.push_back({99});
    CHECK_THROWS_AS(render_svg(layout), std::invalid_argument);
}

}  // namespace
