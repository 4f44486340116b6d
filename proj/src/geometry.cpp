#include "treemaplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace treemaplab {

double aspect_ratio(const Rect& r) {
    if (r.w <= 0.0 || r.h <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(r.w / r.h, r.h / r.w);
}

double full_perimeter(const Rect& r) {
    return 2.0 * (r.w + r.h);
}

Rect translated(const Rect& r, Vec2 d) {
    return Rect{r.x + d.dx, r.y + d.dy, r.w, r.h};
}

Rect bounding_box(std::span<const Rect> rects) {
    if (rects.empty()) {
        throw std::invalid_argument("bounding_box: empty rectangle set");
    }
    double x0 = rects[0].x;
    double y0 = rects[0].y;
    double x1 = rects[0].right();
    double y1 = rects[0].top();
    for (const Rect& r : rects.subspan(1)) {
        x0 = std::min(x0, r.x);
        y0 = std::min(y0, r.y);
        x1 = std::max(x1, r.right());
        y1 = std::max(y1, r.top());
    }
    return Rect{x0, y0, x1 - x0, y1 - y0};
}

double point_rect_distance(double px, double py, const Rect& r) {
    double dx = std::max({r.x - px, 0.0, px - r.right()});
    double dy = std::max({r.y - py, 0.0, py - r.top()});
    return std::hypot(dx, dy);
}

namespace {

// Largest distance from a corner of `a` to the solid rectangle `b`.
double directed_corner_distance(const Rect& a, const Rect& b) {
    double d = point_rect_distance(a.x, a.y, b);
    d = std::max(d, point_rect_distance(a.right(), a.y, b));
    d = std::max(d, point_rect_distance(a.x, a.top(), b));
    d = std::max(d, point_rect_distance(a.right(), a.top(), b));
    return d;
}

}  // namespace

double hausdorff_distance(const Rect& a, const Rect& b) {
    return std::max(directed_corner_distance(a, b), directed_corner_distance(b, a));
}

void translate(Layout& layout, Vec2 d) {
    layout.container = translated(layout.container, d);
    for (Cell& c : layout.cells) {
        c.rect = translated(c.rect, d);
    }
}

void rotate_ccw90(Layout& layout) {
    const double cx = layout.container.x;
    const double cy = layout.container.y;
    const double ch = layout.container.h;
    // Rotating (x, y) about the origin a quarter turn CCW gives (-y, x). A
    // rectangle's lower-left corner maps from its lower-right corner, so in
    // container-local coordinates the image of (lx, ly, w, h) is
    // (ch - (ly + h), lx, h, w) once the layout is shifted back to anchor the
    // rotated container at (cx, cy).
    auto rotate_rect = [&](const Rect& r) {
        double lx = r.x - cx;
        double ly = r.y - cy;
        return Rect{cx + ch - (ly + r.h), cy + lx, r.h, r.w};
    };
    for (Cell& c : layout.cells) {
        c.rect = rotate_rect(c.rect);
    }
    layout.container = rotate_rect(layout.container);
}

}  // namespace treemaplab
