#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treemaplab/geometry.hpp"

namespace treemaplab {

/// Serializes a layout as JSON: container rectangle, cells (id, name,
/// geometry) and bundle id groups. Keys are emitted in sorted order and
/// doubles round-trip exactly, so equal layouts serialize to equal bytes.
std::string layout_to_json(const Layout& layout, int indent = 2);

/// Inverse of layout_to_json. Throws ParseError for malformed JSON and
/// std::runtime_error for valid JSON with missing or mistyped fields.
Layout layout_from_json(std::string_view text);

/// One result line of a benchmark or stability run. Optional fields stay
/// empty in CSV output and null in JSON output.
struct ReportRow {
    std::string algorithm;
    int n = 0;
    std::optional<double> level;
    std::optional<int> rounds;
    std::uint64_t seed = 0;
    double perimeter = 0.0;
    double max_ar = 0.0;
    double avg_ar = 0.0;
    double awar = 0.0;
    std::optional<double> max_hd;
    std::optional<double> avg_hd;
};

std::string rows_to_csv(const std::vector<ReportRow>& rows);

std::string rows_to_json(const std::vector<ReportRow>& rows, int indent = 2);

std::string rows_to_markdown(const std::vector<ReportRow>& rows);

}  // namespace treemaplab
