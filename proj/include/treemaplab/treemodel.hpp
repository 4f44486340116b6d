#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treemaplab {

// Weighted hierarchy of named nodes. Leaves carry positive weights; an
// internal node's weight is the sum over its subtree (filled in by
// normalize_weights, ignored by the parser if present in the input).
struct WeightedTree {
    std::string name;
    double weight = 0.0;
    std::vector<WeightedTree> children;

    bool is_leaf() const { return children.empty(); }
};

enum class TreeFormat { json, csv };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error(message), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Accepted JSON shapes: a node object {"name": ..., "weight": ..., "children":
// [...]} where leaves require a weight and internal nodes require children,
// or a bare array of numbers as shorthand for a flat list of leaves. CSV
// input is a flat list, one leaf per line, either "weight" or "name,weight";
// blank lines and lines starting with '#' are skipped.
WeightedTree parse_tree(std::string_view text, TreeFormat format);

// Rejects non-finite or non-positive leaf weights and empty trees. Throws
// std::invalid_argument naming the offending node.
void validate_tree(const WeightedTree& tree);

double sum_leaf_weights(const WeightedTree& tree);

std::size_t leaf_count(const WeightedTree& tree);

// Longest root-to-leaf path counted in edges; 0 for a bare leaf.
int tree_depth(const WeightedTree& tree);

// Returns a copy with every leaf weight scaled so the total equals
// target_area, and every internal node's weight set to its subtree sum.
WeightedTree normalize_weights(const WeightedTree& tree, double target_area);

// Flat list of leaf areas. ids are dense integers in document order and stay
// attached to their leaf through sorting or perturbation.
struct AreaList {
    std::vector<double> areas;
    std::vector<int> ids;
    std::vector<std::string> names;

    std::size_t size() const { return areas.size(); }
};

AreaList leaf_areas(const WeightedTree& tree);

// Convenience for tests and tools: wraps raw areas with ids 0..n-1 and
// numeric names.
AreaList make_area_list(std::vector<double> areas);

}  // namespace treemaplab
