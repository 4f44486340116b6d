#include "treemaplab/treemodel.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "json.hpp"

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

WeightedTree node_from_json(const json& j, const std::string& fallback_name) {
    WeightedTree node;
    node.name = fallback_name;
    if (j.is_number()) {
        node.weight = j.get<double>();
        return node;
    }
    if (!j.is_object()) {
        throw ParseError("tree node must be an object or a number", 0, 0);
    }
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) {
            throw ParseError("node name must be a string", 0, 0);
        }
        node.name = it->get<std::string>();
    }
    if (auto it = j.find("children"); it != j.end()) {
        if (!it->is_array() || it->empty()) {
            throw ParseError("children must be a non-empty array", 0, 0);
        }
        int index = 0;
        for (const json& child : *it) {
            node.children.push_back(
                node_from_json(child, node.name + "/" + std::to_string(index)));
            ++index;
        }
        return node;
    }
    if (auto it = j.find("weight"); it != j.end()) {
        if (!it->is_number()) {
            throw ParseError("weight must be a number", 0, 0);
        }
        node.weight = it->get<double>();
        return node;
    }
    throw ParseError("leaf node missing weight", 0, 0);
}

WeightedTree parse_tree_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, column);
    }
    if (j.is_array()) {
        WeightedTree root;
        root.name = "root";
        int index = 0;
        for (const json& child : j) {
            root.children.push_back(node_from_json(child, std::to_string(index)));
            ++index;
        }
        if (root.children.empty()) {
            throw ParseError("tree has no leaves", 1, 1);
        }
        return root;
    }
    return node_from_json(j, "root");
}

WeightedTree parse_tree_csv(std::string_view text) {
    WeightedTree root;
    root.name = "root";
    int line_no = 0;
    std::size_t pos = 0;
    int index = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && line.front() == ' ') {
            line.remove_prefix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::size_t comma = line.rfind(',');
        std::string name;
        std::string_view weight_field = line;
        if (comma != std::string_view::npos) {
            name = std::string(line.substr(0, comma));
            weight_field = line.substr(comma + 1);
        } else {
            name = std::to_string(index);
        }
        double weight = 0.0;
        try {
            std::size_t consumed = 0;
            weight = std::stod(std::string(weight_field), &consumed);
            if (consumed != weight_field.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw ParseError("invalid weight field", line_no,
                             static_cast<int>(comma == std::string_view::npos ? 1 : comma + 2));
        }
        WeightedTree leaf;
        leaf.name = std::move(name);
        leaf.weight = weight;
        root.children.push_back(std::move(leaf));
        ++index;
    }
    if (root.children.empty()) {
        throw ParseError("tree has no leaves", line_no, 1);
    }
    return root;
}

void validate_node(const WeightedTree& node) {
    if (node.is_leaf()) {
        if (!std::isfinite(node.weight) || node.weight <= 0.0) {
            throw std::invalid_argument("leaf '" + node.name +
                                        "' has non-positive or non-finite weight");
        }
        return;
    }
    for (const WeightedTree& child : node.children) {
        validate_node(child);
    }
}

double scale_and_sum(WeightedTree& node, double factor) {
    if (node.is_leaf()) {
        node.weight *= factor;
        return node.weight;
    }
    double total = 0.0;
    for (WeightedTree& child : node.children) {
        total += scale_and_sum(child, factor);
    }
    node.weight = total;
    return total;
}

void collect_leaves(const WeightedTree& node, AreaList& out) {
    if (node.is_leaf()) {
        out.ids.push_back(static_cast<int>(out.ids.size()));
        out.areas.push_back(node.weight);
        out.names.push_back(node.name);
        return;
    }
    for (const WeightedTree& child : node.children) {
        collect_leaves(child, out);
    }
}

}  // namespace

WeightedTree parse_tree(std::string_view text, TreeFormat format) {
    return format == TreeFormat::json ? parse_tree_json(text) : parse_tree_csv(text);
}

void validate_tree(const WeightedTree& tree) {
    if (tree.is_leaf()) {
        validate_node(tree);
        return;
    }
    if (leaf_count(tree) == 0) {
        throw std::invalid_argument("tree has no leaves");
    }
    validate_node(tree);
}

double sum_leaf_weights(const WeightedTree& tree) {
    if (tree.is_leaf()) {
        return tree.weight;
    }
    double total = 0.0;
    for (const WeightedTree& child : tree.children) {
        total += sum_leaf_weights(child);
    }
    return total;
}

std::size_t leaf_count(const WeightedTree& tree) {
    if (tree.is_leaf()) {
        return 1;
    }
    std::size_t total = 0;
    for (const WeightedTree& child : tree.children) {
        total += leaf_count(child);
    }
    return total;
}

int tree_depth(const WeightedTree& tree) {
    if (tree.is_leaf()) {
        return 0;
    }
    int deepest = 0;
    for (const WeightedTree& child : tree.children) {
        deepest = std::max(deepest, tree_depth(child));
    }
    return deepest + 1;
}

WeightedTree normalize_weights(const WeightedTree& tree, double target_area) {
    validate_tree(tree);
    if (!std::isfinite(target_area) || target_area <= 0.0) {
        throw std::invalid_argument("target area must be positive and finite");
    }
    WeightedTree copy = tree;
    double total = sum_leaf_weights(copy);
    scale_and_sum(copy, target_area / total);
    return copy;
}

AreaList leaf_areas(const WeightedTree& tree) {
    AreaList out;
    out.areas.reserve(leaf_count(tree));
    collect_leaves(tree, out);
    return out;
}

AreaList make_area_list(std::vector<double> areas) {
    AreaList out;
    out.areas = std::move(areas);
    out.ids.resize(out.areas.size());
    out.names.resize(out.areas.size());
    for (std::size_t i = 0; i < out.areas.size(); ++i) {
        out.ids[i] = static_cast<int>(i);
        out.names[i] = std::to_string(i);
    }
    return out;
}

}  // namespace treemaplab
