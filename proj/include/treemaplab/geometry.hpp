#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treemaplab {

struct Vec2 {
    double dx = 0.0;
    double dy = 0.0;
};

// Axis-aligned rectangle anchored at its lower-left corner.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
    double right() const { return x + w; }
    double top() const { return y + h; }
};

// max(w/h, h/w); infinity for degenerate rectangles.
double aspect_ratio(const Rect& r);

// 2 * (w + h).
double full_perimeter(const Rect& r);

Rect translated(const Rect& r, Vec2 d);

// Smallest rectangle covering all inputs. Throws std::invalid_argument on an
// empty span.
Rect bounding_box(std::span<const Rect> rects);

// Euclidean distance from a point to the closed solid rectangle (zero when
// the point lies inside).
double point_rect_distance(double px, double py, const Rect& r);

// Exact Hausdorff distance between two solid rectangles. For convex shapes
// the supremum is attained at a vertex of one shape, so the maximum over the
// eight corner-to-other-rectangle distances is exact.
double hausdorff_distance(const Rect& a, const Rect& b);

// One placed leaf of a layout.
struct Cell {
    int id = 0;
    std::string name;
    Rect rect;
};

// A finished arrangement: the container, one cell per leaf (sorted by id),
// and optional groups of cell ids that were placed as a unit.
struct Layout {
    Rect container;
    std::vector<Cell> cells;
    std::vector<std::vector<int>> bundles;
};

void translate(Layout& layout, Vec2 d);

// Rotates the container and every cell a quarter turn counter-clockwise
// about the container's lower-left corner, then shifts everything so that
// corner returns to its original coordinates.
void rotate_ccw90(Layout& layout);

}  // namespace treemaplab
