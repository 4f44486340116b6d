#include "treemaplab/algorithms.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "treemaplab/spiral.hpp"
#include "treemaplab/subdivision.hpp"

namespace treemaplab {

namespace {

constexpr std::array<AlgorithmId, 8> all_algorithms = {
    AlgorithmId::squarified, AlgorithmId::dc,       AlgorithmId::mdc,
    AlgorithmId::dp,         AlgorithmId::opt,      AlgorithmId::sspiral,
    AlgorithmId::sqbundle,   AlgorithmId::stbundle,
};

const std::array<std::string, 8> names = {
    "squarified", "dc", "mdc", "dp", "opt", "sspiral", "sqbundle", "stbundle",
};

SpiralVariant variant_of(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::sspiral:
            return SpiralVariant::symmetric;
        case AlgorithmId::sqbundle:
            return SpiralVariant::square_bundle;
        default:
            return SpiralVariant::strip_bundle;
    }
}

void check_areas(const AreaList& areas) {
    if (areas.size() == 0) {
        throw std::invalid_argument("at least one area is required");
    }
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (!std::isfinite(areas.areas[i]) || areas.areas[i] <= 0.0) {
            throw std::invalid_argument("area " + std::to_string(i) +
                                        " must be finite and positive");
        }
    }
}

void check_container(const Rect& r) {
    if (!std::isfinite(r.w) || !std::isfinite(r.h) || r.w <= 0.0 || r.h <= 0.0) {
        throw std::invalid_argument("container must have positive finite extent");
    }
}

AreaList scaled_to(const AreaList& areas, double target) {
    double total = 0.0;
    for (double a : areas.areas) {
        total += a;
    }
    double scale = target / total;
    AreaList out = areas;
    for (double& a : out.areas) {
        a *= scale;
    }
    return out;
}

Layout run_flat(AlgorithmId id, const Rect& container, const AreaList& areas,
                const AlgorithmOptions& options) {
    switch (id) {
        case AlgorithmId::squarified:
            return squarified(container, areas);
        case AlgorithmId::dc:
            return dc_baseline(container, areas);
        case AlgorithmId::mdc:
            return modified_dc(container, areas, options.c);
        case AlgorithmId::dp:
            return dynamic_prog(container, areas);
        case AlgorithmId::opt: {
            ModelParams params;
            params.alpha = options.alpha;
            params.beta = options.beta;
            OptModel model = build_model(container, areas, params);
            OptSolution sol = solve(model, options.opt_config);
            return solution_to_layout(model, sol);
        }
        default:
            return spiral_layout(variant_of(id), areas, options.seed_ratio);
    }
}

void place_subtree(AlgorithmId id, const WeightedTree& node, const Rect& rect,
                   const AlgorithmOptions& options, int& next_id, Layout& out) {
    if (node.is_leaf()) {
        out.cells.push_back(Cell{next_id++, node.name, rect});
        return;
    }
    AreaList parts;
    parts.areas.reserve(node.children.size());
    for (std::size_t k = 0; k < node.children.size(); ++k) {
        parts.areas.push_back(node.children[k].weight);
        parts.ids.push_back(static_cast<int>(k));
        parts.names.push_back(node.children[k].name);
    }
    Layout inner = run_flat(id, rect, parts, options);
    // Cells come back sorted by id, so cell k is child k's rectangle.
    for (std::size_t k = 0; k < node.children.size(); ++k) {
        place_subtree(id, node.children[k], inner.cells[k].rect, options, next_id,
                      out);
    }
}

}  // namespace

bool builds_own_container(AlgorithmId id) {
    return id == AlgorithmId::sspiral || id == AlgorithmId::sqbundle ||
           id == AlgorithmId::stbundle;
}

const std::string& algorithm_name(AlgorithmId id) {
    return names[static_cast<std::size_t>(id)];
}

AlgorithmId parse_algorithm(const std::string& name) {
    for (AlgorithmId id : all_algorithms) {
        if (name == algorithm_name(id)) {
            return id;
        }
    }
    std::string valid;
    for (const std::string& n : names) {
        valid += valid.empty() ? n : ", " + n;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected one of " +
                                valid + ")");
}

Layout run_algorithm(AlgorithmId id, const std::optional<Rect>& container,
                     const AreaList& areas, const AlgorithmOptions& options) {
    check_areas(areas);
    if (builds_own_container(id)) {
        if (container.has_value()) {
            throw std::invalid_argument(algorithm_name(id) +
                                        " constructs its own container");
        }
        return spiral_layout(variant_of(id), areas, options.seed_ratio);
    }
    if (!container.has_value()) {
        throw std::invalid_argument(algorithm_name(id) + " requires a container");
    }
    check_container(*container);
    return run_flat(id, *container, scaled_to(areas, container->area()), options);
}

Layout layout_tree(AlgorithmId id, const std::optional<Rect>& container,
                   const WeightedTree& tree, const AlgorithmOptions& options) {
    validate_tree(tree);
    if (builds_own_container(id)) {
        if (container.has_value()) {
            throw std::invalid_argument(algorithm_name(id) +
                                        " constructs its own container");
        }
        WeightedTree summed = normalize_weights(tree, sum_leaf_weights(tree));
        return spiral_hierarchy(variant_of(id), summed, options.seed_ratio);
    }
    if (!container.has_value()) {
        throw std::invalid_argument(algorithm_name(id) + " requires a container");
    }
    check_container(*container);
    WeightedTree scaled = normalize_weights(tree, container->area());
    Layout out;
    out.container = *container;
    int next_id = 0;
    place_subtree(id, scaled, *container, options, next_id, out);
    return out;
}

}  // namespace treemaplab
