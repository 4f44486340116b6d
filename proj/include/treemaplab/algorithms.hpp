#pragma once

#include <optional>
#include <string>

#include "treemaplab/geometry.hpp"
#include "treemaplab/optimizer.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

enum class AlgorithmId {
    squarified,
    dc,
    mdc,
    dp,
    opt,
    sspiral,
    sqbundle,
    stbundle,
};

/// True for the algorithms that build their own container and therefore
/// reject an externally supplied one.
bool builds_own_container(AlgorithmId id);

const std::string& algorithm_name(AlgorithmId id);

/// Parses a CLI-style algorithm name; throws std::invalid_argument listing
/// the valid names when it does not match.
AlgorithmId parse_algorithm(const std::string& name);

struct AlgorithmOptions {
    double c = 2.0;           // deviation guard for mdc
    double seed_ratio = 2.0;  // seed aspect ratio for the spiral family
    int alpha = 0;            // optimizer cost weighting (0 plain, 1 area-weighted)
    double beta = 0.0;        // optimizer orientation reward
    SolveConfig opt_config;   // optimizer search budget and tolerances
};

/// Lays out a flat list of areas. Algorithms that fill a given container
/// require one (areas are rescaled to its area if they do not sum to it);
/// the spiral family forbids one. Violations throw std::invalid_argument.
Layout run_algorithm(AlgorithmId id, const std::optional<Rect>& container,
                     const AreaList& areas, const AlgorithmOptions& options = {});

/// Lays out a weighted tree: container-filling algorithms recurse top-down,
/// splitting each node's rectangle among its children by subtree weight;
/// the spiral family delegates to its own hierarchical construction.
/// Cell ids are assigned to leaves in document order.
Layout layout_tree(AlgorithmId id, const std::optional<Rect>& container,
                   const WeightedTree& tree, const AlgorithmOptions& options = {});

}  // namespace treemaplab
