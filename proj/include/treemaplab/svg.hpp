#pragma once

#include <cstdint>
#include <string>

#include "treemaplab/geometry.hpp"

namespace treemaplab {

struct SvgOptions {
    // Pixel width of the image; height follows the container's shape.
    double width_px = 800.0;
    bool labels = false;
    // Seed mixed into the per-name fill colors.
    std::uint64_t color_seed = 0;
    // Cell border width as a fraction of the container's larger extent.
    double stroke_fraction = 0.002;
};

/// Renders the layout as a standalone SVG document. Cells are drawn in id
/// order with deterministic name-keyed fill colors; bundles get a heavier
/// outline around their bounding box. The vertical axis is flipped so the
/// layout's up matches the image's up.
std::string render_svg(const Layout& layout, const SvgOptions& options = {});

}  // namespace treemaplab
