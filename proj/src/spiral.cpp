#include "treemaplab/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treemaplab/subdivision.hpp"

namespace treemaplab {

namespace {

enum Dir { dir_top = 0, dir_right = 1, dir_bottom = 2, dir_left = 3 };

void require_valid(const AreaList& areas, double seed_ratio) {
    if (areas.size() == 0) {
        throw std::invalid_argument("layout requires at least one area");
    }
    if (!std::isfinite(seed_ratio) || seed_ratio <= 0.0) {
        throw std::invalid_argument("seed ratio must be positive and finite");
    }
    for (double a : areas.areas) {
        if (!std::isfinite(a) || a <= 0.0) {
            throw std::invalid_argument("areas must be positive and finite");
        }
    }
}

// Indices ordered by ascending area, equal areas keeping input order.
std::vector<std::size_t> ascending_order(const AreaList& areas) {
    std::vector<std::size_t> order(areas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return areas.areas[a] < areas.areas[b];
    });
    return order;
}

// A rectangle spanning the full side of `box` in the given direction, sized
// to hold `area`; returns the rectangle and the grown union box.
std::pair<Rect, Rect> grow(const Rect& box, int dir, double area) {
    switch (dir) {
        case dir_top: {
            double hh = area / box.w;
            return {Rect{box.x, box.y + box.h, box.w, hh},
                    Rect{box.x, box.y, box.w, box.h + hh}};
        }
        case dir_right: {
            double ww = area / box.h;
            return {Rect{box.x + box.w, box.y, ww, box.h},
                    Rect{box.x, box.y, box.w + ww, box.h}};
        }
        case dir_bottom: {
            double hh = area / box.w;
            return {Rect{box.x, box.y - hh, box.w, hh},
                    Rect{box.x, box.y - hh, box.w, box.h + hh}};
        }
        default: {
            double ww = area / box.h;
            return {Rect{box.x - ww, box.y, ww, box.h},
                    Rect{box.x - ww, box.y, box.w + ww, box.h}};
        }
    }
}

// The first two (smallest) areas form a row: the second sits to the left of
// the first, sharing a height fixed by the seed ratio.
Rect seed_pair(const std::vector<double>& a, double seed_ratio,
               std::vector<Rect>& placed) {
    double h = std::sqrt((a[0] + a[1]) / seed_ratio);
    double w1 = a[0] / h;
    double w2 = a[1] / h;
    placed[0] = Rect{w2, 0.0, w1, h};
    placed[1] = Rect{0.0, 0.0, w2, h};
    return Rect{0.0, 0.0, w1 + w2, h};
}

struct Construction {
    std::vector<Rect> placed;                       // by ascending position
    std::vector<std::pair<int, int>> groups;        // position ranges, inclusive
    Rect box;
};

Layout assemble(const AreaList& areas, const std::vector<std::size_t>& order,
                Construction&& built) {
    Layout layout;
    layout.container = built.box;
    layout.cells.resize(areas.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        std::size_t src = order[pos];
        Cell& cell = layout.cells[src];
        cell.id = areas.ids[src];
        cell.name = src < areas.names.size() ? areas.names[src] : std::string{};
        cell.rect = built.placed[pos];
    }
    std::stable_sort(layout.cells.begin(), layout.cells.end(),
                     [](const Cell& a, const Cell& b) { return a.id < b.id; });
    for (auto [first, last] : built.groups) {
        std::vector<int> bundle;
        bundle.reserve(last - first + 1);
        for (int pos = first; pos <= last; ++pos) {
            bundle.push_back(areas.ids[order[pos]]);
        }
        layout.bundles.push_back(std::move(bundle));
    }
    if (layout.container.w < layout.container.h) {
        rotate_ccw90(layout);
    }
    return layout;
}

Construction build_symmetric(const std::vector<double>& a, double seed_ratio) {
    std::size_t n = a.size();
    Construction out;
    out.placed.resize(n);
    if (n == 1) {
        double s = std::sqrt(a[0]);
        out.placed[0] = Rect{0.0, 0.0, s, s};
        out.box = out.placed[0];
        return out;
    }
    out.box = seed_pair(a, seed_ratio, out.placed);
    int dir = dir_top;
    for (std::size_t i = 2; i < n; ++i) {
        auto [rect, grown] = grow(out.box, dir, a[i]);
        out.placed[i] = rect;
        out.box = grown;
        dir = (dir + 1) % 4;
    }
    return out;
}

// Longest prefix a[i..k] whose strip against a side of length `side` is
// closest to square, stopping at the first k that is no improvement.
std::size_t square_group_end(const std::vector<double>& a, std::size_t i,
                             double side) {
    double sum = a[i];
    double best = std::abs(side - sum / side);
    std::size_t end = i;
    for (std::size_t k = i + 1; k < a.size(); ++k) {
        double next_sum = sum + a[k];
        double v = std::abs(side - next_sum / side);
        if (v >= best) {
            break;
        }
        best = v;
        sum = next_sum;
        end = k;
    }
    return end;
}

Construction build_square_bundle(const std::vector<double>& a, double seed_ratio) {
    std::size_t n = a.size();
    Construction out;
    out.placed.resize(n);
    if (n == 1) {
        double s = std::sqrt(a[0]);
        out.placed[0] = Rect{0.0, 0.0, s, s};
        out.box = out.placed[0];
        return out;
    }
    out.box = seed_pair(a, seed_ratio, out.placed);
    int dir = dir_top;
    std::size_t i = 2;
    while (i < n) {
        double side = (dir == dir_top || dir == dir_bottom) ? out.box.w : out.box.h;
        std::size_t end = square_group_end(a, i, side);
        double group_sum = std::accumulate(a.begin() + i, a.begin() + end + 1, 0.0);
        auto [strip, grown] = grow(out.box, dir, group_sum);
        out.box = grown;
        AreaList group;
        group.areas.assign(a.begin() + i, a.begin() + end + 1);
        group.ids.resize(group.areas.size());
        std::iota(group.ids.begin(), group.ids.end(), 0);
        group.names.resize(group.areas.size());
        Layout inner = squarified(strip, group);
        for (std::size_t t = 0; t < inner.cells.size(); ++t) {
            out.placed[i + t] = inner.cells[t].rect;
        }
        out.groups.emplace_back(static_cast<int>(i), static_cast<int>(end));
        dir = (dir + 1) % 4;
        i = end + 1;
    }
    return out;
}

// Worst aspect ratio over a strip of thickness sum/side sliced into the
// group's areas.
double strip_worst_ar(double sum, double max_a, double min_a, double side) {
    double t2 = (sum / side) * (sum / side);
    return std::max(t2 / min_a, max_a / t2);
}

std::size_t strip_group_end(const std::vector<double>& a, std::size_t i,
                            double side) {
    double sum = a[i];
    double max_a = a[i];
    double min_a = a[i];
    double best = strip_worst_ar(sum, max_a, min_a, side);
    std::size_t end = i;
    for (std::size_t k = i + 1; k < a.size(); ++k) {
        double next_sum = sum + a[k];
        double next_max = std::max(max_a, a[k]);
        double next_min = std::min(min_a, a[k]);
        double v = strip_worst_ar(next_sum, next_max, next_min, side);
        if (v >= best) {
            break;
        }
        best = v;
        sum = next_sum;
        max_a = next_max;
        min_a = next_min;
        end = k;
    }
    return end;
}

// Slices a strip into one cell per area. The slicing order wraps around the
// union box so consecutive cells stay adjacent across strips: left to right
// on top, top to bottom on the right, right to left on the bottom, bottom to
// top on the left.
void slice_strip(const Rect& strip, int dir, const std::vector<double>& a,
                 std::size_t first, std::size_t last, std::vector<Rect>& placed) {
    switch (dir) {
        case dir_top: {
            double cx = strip.x;
            for (std::size_t t = first; t <= last; ++t) {
                double cw = a[t] / strip.h;
                placed[t] = Rect{cx, strip.y, cw, strip.h};
                cx += cw;
            }
            break;
        }
        case dir_bottom: {
            double cx = strip.x + strip.w;
            for (std::size_t t = first; t <= last; ++t) {
                double cw = a[t] / strip.h;
                cx -= cw;
                placed[t] = Rect{cx, strip.y, cw, strip.h};
            }
            break;
        }
        case dir_right: {
            double cy = strip.y + strip.h;
            for (std::size_t t = first; t <= last; ++t) {
                double ch = a[t] / strip.w;
                cy -= ch;
                placed[t] = Rect{strip.x, cy, strip.w, ch};
            }
            break;
        }
        default: {
            double cy = strip.y;
            for (std::size_t t = first; t <= last; ++t) {
                double ch = a[t] / strip.w;
                placed[t] = Rect{strip.x, cy, strip.w, ch};
                cy += ch;
            }
            break;
        }
    }
}

Construction build_strip_bundle(const std::vector<double>& a, double seed_ratio) {
    std::size_t n = a.size();
    Construction out;
    out.placed.resize(n);
    if (n == 1) {
        double s = std::sqrt(a[0]);
        out.placed[0] = Rect{0.0, 0.0, s, s};
        out.box = out.placed[0];
        return out;
    }
    out.box = seed_pair(a, seed_ratio, out.placed);
    int dir = dir_top;
    std::size_t i = 2;
    while (i < n) {
        double side = (dir == dir_top || dir == dir_bottom) ? out.box.w : out.box.h;
        std::size_t end = strip_group_end(a, i, side);
        double group_sum = std::accumulate(a.begin() + i, a.begin() + end + 1, 0.0);
        auto [strip, grown] = grow(out.box, dir, group_sum);
        out.box = grown;
        slice_strip(strip, dir, a, i, end, out.placed);
        out.groups.emplace_back(static_cast<int>(i), static_cast<int>(end));
        dir = (dir + 1) % 4;
        i = end + 1;
    }
    return out;
}

Construction build(SpiralVariant variant, const std::vector<double>& a,
                   double seed_ratio) {
    switch (variant) {
        case SpiralVariant::symmetric:
            return build_symmetric(a, seed_ratio);
        case SpiralVariant::square_bundle:
            return build_square_bundle(a, seed_ratio);
        default:
            return build_strip_bundle(a, seed_ratio);
    }
}

Layout run_flat(SpiralVariant variant, const AreaList& areas, double seed_ratio) {
    require_valid(areas, seed_ratio);
    std::vector<std::size_t> order = ascending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    return assemble(areas, order, build(variant, a, seed_ratio));
}

// Maps `layout` affinely onto `target`. Axis scales may differ; cell areas
// scale by the single factor target.area / container.area.
void map_into(Layout& layout, const Rect& target) {
    double sx = target.w / layout.container.w;
    double sy = target.h / layout.container.h;
    double ox = layout.container.x;
    double oy = layout.container.y;
    for (Cell& cell : layout.cells) {
        cell.rect = Rect{target.x + (cell.rect.x - ox) * sx,
                         target.y + (cell.rect.y - oy) * sy, cell.rect.w * sx,
                         cell.rect.h * sy};
    }
    layout.container = target;
}

bool all_children_leaves(const WeightedTree& node) {
    for (const WeightedTree& child : node.children) {
        if (!child.is_leaf()) {
            return false;
        }
    }
    return true;
}

// Assigns ids by document order, mirroring leaf_areas.
Layout build_node(SpiralVariant variant, const WeightedTree& node, double seed_ratio,
                  int& next_id) {
    if (node.is_leaf()) {
        double s = std::sqrt(node.weight);
        Layout layout;
        layout.container = Rect{0.0, 0.0, s, s};
        layout.cells.push_back(Cell{next_id++, node.name, layout.container});
        return layout;
    }
    if (node.children.size() == 1) {
        return build_node(variant, node.children.front(), seed_ratio, next_id);
    }
    if (all_children_leaves(node)) {
        AreaList areas;
        for (const WeightedTree& child : node.children) {
            areas.ids.push_back(next_id++);
            areas.areas.push_back(child.weight);
            areas.names.push_back(child.name);
        }
        return run_flat(variant, areas, seed_ratio);
    }
    std::vector<Layout> parts;
    parts.reserve(node.children.size());
    for (const WeightedTree& child : node.children) {
        parts.push_back(build_node(variant, child, seed_ratio, next_id));
    }
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return parts[a].container.area() < parts[b].container.area();
    });

    // The smallest sub-layout keeps its shape and anchors the union at the
    // origin; the rest are rescaled onto full sides, the second going left
    // and later ones following the top/right/bottom/left cycle.
    Layout merged = std::move(parts[order[0]]);
    translate(merged, Vec2{-merged.container.x, -merged.container.y});
    for (std::size_t i = 1; i < order.size(); ++i) {
        Layout& part = parts[order[i]];
        int dir = i == 1 ? dir_left : static_cast<int>((i - 2) % 4);
        auto [target, grown] = grow(merged.container, dir, part.container.area());
        map_into(part, target);
        merged.cells.insert(merged.cells.end(),
                            std::make_move_iterator(part.cells.begin()),
                            std::make_move_iterator(part.cells.end()));
        merged.bundles.insert(merged.bundles.end(),
                              std::make_move_iterator(part.bundles.begin()),
                              std::make_move_iterator(part.bundles.end()));
        merged.container = grown;
    }
    std::stable_sort(merged.cells.begin(), merged.cells.end(),
                     [](const Cell& a, const Cell& b) { return a.id < b.id; });
    if (merged.container.w < merged.container.h) {
        rotate_ccw90(merged);
    }
    return merged;
}

}  // namespace

Layout symmetric_spiral(const AreaList& areas, double seed_ratio) {
    return run_flat(SpiralVariant::symmetric, areas, seed_ratio);
}

Layout square_bundle(const AreaList& areas, double seed_ratio) {
    return run_flat(SpiralVariant::square_bundle, areas, seed_ratio);
}

Layout strip_bundle(const AreaList& areas, double seed_ratio) {
    return run_flat(SpiralVariant::strip_bundle, areas, seed_ratio);
}

Layout spiral_layout(SpiralVariant variant, const AreaList& areas, double seed_ratio) {
    return run_flat(variant, areas, seed_ratio);
}

Layout spiral_hierarchy(SpiralVariant variant, const WeightedTree& tree,
                        double seed_ratio) {
    validate_tree(tree);
    if (!std::isfinite(seed_ratio) || seed_ratio <= 0.0) {
        throw std::invalid_argument("seed ratio must be positive and finite");
    }
    int next_id = 0;
    return build_node(variant, tree, seed_ratio, next_id);
}

}  // namespace treemaplab
