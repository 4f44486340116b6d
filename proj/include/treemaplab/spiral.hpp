#pragma once

#include "treemaplab/geometry.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

// Container-free algorithms: each constructs its own bounding rectangle by
// accreting areas around a two-cell core, smallest areas first, cycling the
// growth direction. The finished layout always satisfies width >= height
// (rotated a quarter turn when it does not), cell areas equal the requested
// areas exactly, and the cells tile the container.

inline constexpr double golden_seed_ratio = 1.6180339887498949;

// The seed ratio fixes the core pair's shape: the first two areas share a
// row of height sqrt((a0 + a1) / seed_ratio).
Layout symmetric_spiral(const AreaList& areas, double seed_ratio = 2.0);

// Accretes groups of consecutive areas instead of single areas, sizing each
// group so its strip is as close to square as possible, then fills the strip
// with the squarified heuristic. Groups are recorded as bundles.
Layout square_bundle(const AreaList& areas, double seed_ratio = 2.0);

// Like square_bundle, but groups are chosen to minimize the worst aspect
// ratio of the strip's cells and the strip is filled by straight slicing.
Layout strip_bundle(const AreaList& areas, double seed_ratio = 2.0);

enum class SpiralVariant { symmetric, square_bundle, strip_bundle };

Layout spiral_layout(SpiralVariant variant, const AreaList& areas,
                     double seed_ratio = 2.0);

// Bottom-up hierarchical application: nodes whose children are all leaves
// are laid out with the flat algorithm; higher nodes keep their first
// (smallest) child's finished shape and accrete the remaining children's
// sub-layouts along full sides, left first and then the usual direction
// cycle, rescaling each sub-layout to span the side it lands on. The tree
// must already carry subtree sums (see normalize_weights).
Layout spiral_hierarchy(SpiralVariant variant, const WeightedTree& tree,
                        double seed_ratio = 2.0);

}  // namespace treemaplab
