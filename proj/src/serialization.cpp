#include "treemaplab/serialization.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

namespace {

using nlohmann::json;

std::pair<int, int> line_column_of_offset(std::string_view text, std::size_t offset) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json rect_to_json(const Rect& r) {
    return json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
}

Rect rect_from_json(const json& j, const char* what) {
    if (!j.is_object()) {
        throw std::runtime_error(std::string(what) + " must be an object");
    }
    Rect r;
    for (auto [key, dst] : {std::pair<const char*, double*>{"x", &r.x},
                            {"y", &r.y},
                            {"w", &r.w},
                            {"h", &r.h}}) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_number()) {
            throw std::runtime_error(std::string(what) + " needs numeric field '" +
                                     key + "'");
        }
        *dst = it->get<double>();
    }
    return r;
}

// Fixed-width enough for round trips, short enough for readable reports.
std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

constexpr const char* report_header =
    "algorithm,n,level,rounds,seed,perimeter,maxAR,avgAR,AWAR,maxHD,avgHD";

std::vector<std::string> row_fields(const ReportRow& row) {
    std::vector<std::string> f;
    f.reserve(11);
    f.push_back(row.algorithm);
    f.push_back(std::to_string(row.n));
    f.push_back(row.level ? fmt_num(*row.level) : "");
    f.push_back(row.rounds ? std::to_string(*row.rounds) : "");
    f.push_back(std::to_string(row.seed));
    f.push_back(fmt_num(row.perimeter));
    f.push_back(fmt_num(row.max_ar));
    f.push_back(fmt_num(row.avg_ar));
    f.push_back(fmt_num(row.awar));
    f.push_back(row.max_hd ? fmt_num(*row.max_hd) : "");
    f.push_back(row.avg_hd ? fmt_num(*row.avg_hd) : "");
    return f;
}

}  // namespace

std::string layout_to_json(const Layout& layout, int indent) {
    json cells = json::array();
    for (const Cell& cell : layout.cells) {
        json c = rect_to_json(cell.rect);
        c["id"] = cell.id;
        c["name"] = cell.name;
        cells.push_back(std::move(c));
    }
    json bundles = json::array();
    for (const std::vector<int>& group : layout.bundles) {
        bundles.push_back(group);
    }
    json doc{{"container", rect_to_json(layout.container)},
             {"cells", std::move(cells)},
             {"bundles", std::move(bundles)}};
    return doc.dump(indent) + "\n";
}

Layout layout_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, column);
    }
    if (!doc.is_object()) {
        throw std::runtime_error("layout document must be an object");
    }
    Layout layout;
    auto container = doc.find("container");
    if (container == doc.end()) {
        throw std::runtime_error("layout document missing 'container'");
    }
    layout.container = rect_from_json(*container, "container");
    auto cells = doc.find("cells");
    if (cells == doc.end() || !cells->is_array()) {
        throw std::runtime_error("layout document needs a 'cells' array");
    }
    for (const json& c : *cells) {
        Cell cell;
        cell.rect = rect_from_json(c, "cell");
        auto id = c.find("id");
        if (id == c.end() || !id->is_number_integer()) {
            throw std::runtime_error("cell needs an integer 'id'");
        }
        cell.id = id->get<int>();
        if (auto name = c.find("name"); name != c.end()) {
            if (!name->is_string()) {
                throw std::runtime_error("cell 'name' must be a string");
            }
            cell.name = name->get<std::string>();
        }
        layout.cells.push_back(std::move(cell));
    }
    if (auto bundles = doc.find("bundles"); bundles != doc.end()) {
        if (!bundles->is_array()) {
            throw std::runtime_error("'bundles' must be an array of id arrays");
        }
        for (const json& group : *bundles) {
            if (!group.is_array()) {
                throw std::runtime_error("'bundles' must be an array of id arrays");
            }
            std::vector<int> ids;
            for (const json& id : group) {
                if (!id.is_number_integer()) {
                    throw std::runtime_error("bundle ids must be integers");
                }
                ids.push_back(id.get<int>());
            }
            layout.bundles.push_back(std::move(ids));
        }
    }
    return layout;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = report_header;
    out += '\n';
    for (const ReportRow& row : rows) {
        bool first = true;
        for (const std::string& field : row_fields(row)) {
            if (!first) {
                out += ',';
            }
            out += field;
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<ReportRow>& rows, int indent) {
    json arr = json::array();
    for (const ReportRow& row : rows) {
        json r{{"algorithm", row.algorithm}, {"n", row.n},
               {"seed", row.seed},           {"perimeter", row.perimeter},
               {"maxAR", row.max_ar},        {"avgAR", row.avg_ar},
               {"AWAR", row.awar}};
        r["level"] = row.level ? json(*row.level) : json(nullptr);
        r["rounds"] = row.rounds ? json(*row.rounds) : json(nullptr);
        r["maxHD"] = row.max_hd ? json(*row.max_hd) : json(nullptr);
        r["avgHD"] = row.avg_hd ? json(*row.avg_hd) : json(nullptr);
        arr.push_back(std::move(r));
    }
    return arr.dump(indent) + "\n";
}

std::string rows_to_markdown(const std::vector<ReportRow>& rows) {
    std::string out = "| algorithm | n | level | rounds | seed | perimeter | maxAR | "
                      "avgAR | AWAR | maxHD | avgHD |\n";
    out += "|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const ReportRow& row : rows) {
        out += '|';
        for (const std::string& field : row_fields(row)) {
            out += ' ';
            out += field.empty() ? "-" : field;
            out += " |";
        }
        out += '\n';
    }
    return out;
}

}  // namespace treemaplab
