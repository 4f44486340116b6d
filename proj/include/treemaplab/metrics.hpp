#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "treemaplab/geometry.hpp"
#include "treemaplab/rng.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

struct LayoutMetrics {
    double perimeter = 0.0;  // sum over cells of 2 (w + h)
    double max_ar = 0.0;     // worst cell aspect ratio
    double avg_ar = 0.0;     // unweighted mean aspect ratio
    double awar = 0.0;       // area-weighted mean aspect ratio
};

LayoutMetrics compute_metrics(const Layout& layout);

/// Adds an independent uniform [0, level) offset to every area, then rescales
/// so the total stays unchanged. Draws one variate per area in list order.
AreaList perturb_areas(const AreaList& areas, double level, Rng& rng);

struct StabilityPair {
    double max_hd = 0.0;  // worst per-cell Hausdorff distance
    double avg_hd = 0.0;  // mean per-cell Hausdorff distance
};

/// Per-cell Hausdorff distances between two layouts of the same areas, cells
/// matched by id (throws std::invalid_argument on a mismatch). With align
/// set, both layouts are first translated so their container origins
/// coincide, which compares shapes rather than absolute positions.
StabilityPair stability_between(const Layout& a, const Layout& b, bool align = true);

struct LevelStability {
    double level = 0.0;
    int rounds = 0;
    double max_hd = 0.0;  // worst round's worst displacement
    double avg_hd = 0.0;  // mean over rounds of the mean displacement
};

/// Runs the layout function on `rounds` perturbations of the base areas per
/// level and measures displacement against the unperturbed layout. By
/// default every round perturbs the base areas afresh; with `cumulative`
/// set, each round perturbs the previous round's areas instead, so the
/// inputs drift over the rounds. Each round draws from its own seed derived
/// from (seed, level index, round), so results do not depend on the worker
/// count. The layout function must be safe to call concurrently when
/// threads > 1.
std::vector<LevelStability> stability_study(
    const std::function<Layout(const AreaList&)>& layout_fn,
    const AreaList& base_areas, const std::vector<double>& levels, int rounds,
    std::uint64_t seed, int threads = 1, bool cumulative = false);

}  // namespace treemaplab
