#include "treemaplab/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treemaplab/rng.hpp"

namespace treemaplab {

namespace {

void require_valid_input(const Rect& container, const AreaList& areas) {
    if (areas.size() == 0) {
        throw std::invalid_argument("layout requires at least one area");
    }
    if (container.w <= 0.0 || container.h <= 0.0) {
        throw std::invalid_argument("container must have positive extent");
    }
    double total = 0.0;
    for (double a : areas.areas) {
        if (!std::isfinite(a) || a <= 0.0) {
            throw std::invalid_argument("areas must be positive and finite");
        }
        total += a;
    }
    // The cut arithmetic assumes the areas tile the container exactly;
    // anything else silently produces negative remainders deep in the
    // recursion. run_algorithm rescales, callers of the raw functions must.
    double target = container.area();
    if (std::abs(total - target) > 1e-9 * std::max(total, target)) {
        throw std::invalid_argument("areas must sum to the container area (rescale them first)");
    }
}

// Indices into `areas` ordered by descending area; equal areas keep input
// order so results do not depend on the sort implementation.
std::vector<std::size_t> descending_order(const AreaList& areas) {
    std::vector<std::size_t> order(areas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return areas.areas[a] > areas.areas[b];
    });
    return order;
}

// Cells arrive indexed by sorted position; attach ids and names and emit
// them sorted by id.
Layout assemble(const Rect& container, const AreaList& areas,
                const std::vector<std::size_t>& order,
                const std::vector<Rect>& placed) {
    Layout layout;
    layout.container = container;
    layout.cells.resize(areas.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        std::size_t src = order[pos];
        Cell& cell = layout.cells[src];
        cell.id = areas.ids[src];
        cell.name = src < areas.names.size() ? areas.names[src] : std::string{};
        cell.rect = placed[pos];
    }
    std::stable_sort(layout.cells.begin(), layout.cells.end(),
                     [](const Cell& a, const Cell& b) { return a.id < b.id; });
    return layout;
}

std::vector<double> prefix_sums(const std::vector<double>& values) {
    std::vector<double> pre(values.size() + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        pre[i + 1] = pre[i] + values[i];
    }
    return pre;
}

// Context shared by the recursive partition algorithms. `a` holds areas in
// descending order, `pre` its prefix sums.
struct SplitCtx {
    const std::vector<double>& a;
    const std::vector<double>& pre;

    double block_sum(int s, int e) const { return pre[e + 1] - pre[s]; }
};

// First cut index k in [s, e-1] such that moving the next element across the
// cut would make the two sides less balanced; returns k and the prefix sum.
std::pair<int, double> balanced_cut(const SplitCtx& ctx, int s, int e) {
    double total = ctx.block_sum(s, e);
    double s1 = 0.0;
    for (int k = s; k < e; ++k) {
        s1 += ctx.a[k];
        double s2 = total - s1;
        double moved = ctx.a[k + 1];
        if (std::abs(s1 - s2) < std::abs((s1 + moved) - (s2 - moved))) {
            return {k, s1};
        }
    }
    return {e - 1, total - ctx.a[e]};
}

// Cuts `q` in two with the prefix block taking `s1` of its area. The cut is
// vertical when the rectangle is at least as wide as tall; the prefix block
// sits on the left, or on top for horizontal cuts.
std::pair<Rect, Rect> split_rect(const Rect& q, double s1) {
    if (q.w >= q.h) {
        double w1 = s1 / q.h;
        return {Rect{q.x, q.y, w1, q.h}, Rect{q.x + w1, q.y, q.w - w1, q.h}};
    }
    double h1 = s1 / q.w;
    return {Rect{q.x, q.y + (q.h - h1), q.w, h1}, Rect{q.x, q.y, q.w, q.h - h1}};
}

// Recursion recurses into the smaller block and loops on the larger one, so
// the stack depth stays logarithmic regardless of how skewed the cuts are.
void dc_run(const SplitCtx& ctx, Rect q, int s, int e, std::vector<Rect>& out) {
    while (s != e) {
        auto [k, s1] = balanced_cut(ctx, s, e);
        auto [q1, q2] = split_rect(q, s1);
        if (k - s <= e - k - 1) {
            dc_run(ctx, q1, s, k, out);
            q = q2;
            s = k + 1;
        } else {
            dc_run(ctx, q2, k + 1, e, out);
            q = q1;
            e = k;
        }
    }
    out[s] = q;
}

struct MdcCtx {
    SplitCtx split;
    double c;
    // Number of times both repair alternatives may still be evaluated.
    // Bounding this keeps the worst case near the plain recursion's cost;
    // once exhausted only the first alternative is taken.
    long budget;
};

double half_perimeter_sum(const std::vector<Rect>& rects, int s, int e) {
    double total = 0.0;
    for (int i = s; i <= e; ++i) {
        total += rects[i].w + rects[i].h;
    }
    return total;
}

void mdc_run(MdcCtx& ctx, Rect q, int s, int e, std::vector<Rect>& out);

// Lays out the two blocks produced by cutting at k.
void mdc_split(MdcCtx& ctx, const Rect& q, int s, int k, int e, double s1,
               std::vector<Rect>& out) {
    auto [q1, q2] = split_rect(q, s1);
    if (k - s <= e - k - 1) {
        mdc_run(ctx, q1, s, k, out);
        mdc_run(ctx, q2, k + 1, e, out);
    } else {
        mdc_run(ctx, q2, k + 1, e, out);
        mdc_run(ctx, q1, s, k, out);
    }
}

void mdc_run(MdcCtx& ctx, Rect q, int s, int e, std::vector<Rect>& out) {
    const std::vector<double>& a = ctx.split.a;
    while (s != e) {
        auto [k, s1] = balanced_cut(ctx.split, s, e);
        double lhs = a[std::max(s, k - 1)] - a[k];
        double rhs = ctx.c * (a[k] - a[std::min(k + 1, e)]);
        if (lhs > rhs) {
            // The area step at the cut is steep: moving a[k] to the suffix
            // block (and, as a second candidate, a[k+1] to the prefix block)
            // tends to even out the blocks' extremes. Keep whichever
            // candidate yields the smaller total perimeter.
            mdc_split(ctx, q, s, k - 1, e, s1 - a[k], out);
            if (k + 2 <= e && ctx.budget > 0) {
                --ctx.budget;
                double first = half_perimeter_sum(out, s, e);
                std::vector<Rect> saved(out.begin() + s, out.begin() + e + 1);
                mdc_split(ctx, q, s, k + 1, e, s1 + a[k + 1], out);
                if (half_perimeter_sum(out, s, e) >= first) {
                    std::copy(saved.begin(), saved.end(), out.begin() + s);
                }
            }
            return;
        }
        auto [q1, q2] = split_rect(q, s1);
        if (k - s <= e - k - 1) {
            mdc_run(ctx, q1, s, k, out);
            q = q2;
            s = k + 1;
        } else {
            mdc_run(ctx, q2, k + 1, e, out);
            q = q1;
            e = k;
        }
    }
    out[s] = q;
}

// Worst aspect ratio in a row of areas laid side by side in a strip along a
// side of length `side`. Every cell in the row has the same thickness
// row_sum / side, so only the extreme areas matter.
double row_worst_ar(double row_sum, double max_a, double min_a, double side) {
    double s2 = side * side;
    return std::max(s2 * max_a / (row_sum * row_sum), row_sum * row_sum / (s2 * min_a));
}

}  // namespace

Layout squarified(const Rect& container, const AreaList& areas) {
    require_valid_input(container, areas);
    std::vector<std::size_t> order = descending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    std::size_t n = a.size();
    std::vector<Rect> placed(n);
    Rect rest = container;
    std::size_t i = 0;
    while (i < n) {
        if (i == n - 1) {
            placed[i] = rest;
            break;
        }
        bool vertical = rest.w >= rest.h;
        double side = vertical ? rest.h : rest.w;
        double row_sum = a[i];
        double row_max = a[i];
        std::size_t j = i + 1;
        // Areas are descending, so the row's min is always the most recently
        // added element.
        while (j < n) {
            double cur = row_worst_ar(row_sum, row_max, a[j - 1], side);
            double nxt = row_worst_ar(row_sum + a[j], row_max, a[j], side);
            if (nxt > cur) {
                break;
            }
            row_sum += a[j];
            ++j;
        }
        if (vertical) {
            double sw = row_sum / rest.h;
            double cy = rest.y;
            for (std::size_t t = i; t < j; ++t) {
                double ch = a[t] / sw;
                placed[t] = Rect{rest.x, cy, sw, ch};
                cy += ch;
            }
            rest.x += sw;
            rest.w -= sw;
        } else {
            double sh = row_sum / rest.w;
            double cx = rest.x;
            for (std::size_t t = i; t < j; ++t) {
                double cw = a[t] / sh;
                placed[t] = Rect{cx, rest.y, cw, sh};
                cx += cw;
            }
            rest.y += sh;
            rest.h -= sh;
        }
        i = j;
    }
    return assemble(container, areas, order, placed);
}

Layout dc_baseline(const Rect& container, const AreaList& areas) {
    require_valid_input(container, areas);
    std::vector<std::size_t> order = descending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    std::vector<double> pre = prefix_sums(a);
    SplitCtx ctx{a, pre};
    std::vector<Rect> placed(a.size());
    dc_run(ctx, container, 0, static_cast<int>(a.size()) - 1, placed);
    return assemble(container, areas, order, placed);
}

Layout modified_dc(const Rect& container, const AreaList& areas, double c) {
    require_valid_input(container, areas);
    if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument("repair parameter c must be non-negative");
    }
    std::vector<std::size_t> order = descending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    std::vector<double> pre = prefix_sums(a);
    MdcCtx ctx{SplitCtx{a, pre}, c, 2 * static_cast<long>(a.size())};
    std::vector<Rect> placed(a.size());
    mdc_run(ctx, container, 0, static_cast<int>(a.size()) - 1, placed);
    return assemble(container, areas, order, placed);
}

std::int64_t MemoTable::quantize(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("quantize requires a positive finite value");
    }
    int e10 = static_cast<int>(std::floor(std::log10(v)));
    double scaled = v * std::pow(10.0, 11 - e10);
    std::int64_t digits = std::llround(scaled);
    return digits * 128 + (e10 + 64);
}

std::size_t MemoTable::KeyHash::operator()(const Key& k) const {
    std::uint64_t h = detail::mix64(static_cast<std::uint64_t>(k.start) << 32 |
                                    static_cast<std::uint32_t>(k.stop));
    h = detail::mix64(h ^ static_cast<std::uint64_t>(k.qw));
    h = detail::mix64(h ^ static_cast<std::uint64_t>(k.qh));
    return static_cast<std::size_t>(h);
}

const MemoTable::Entry* MemoTable::find(const Key& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
}

void MemoTable::put(const Key& key, const Entry& entry) {
    map_.emplace(key, entry);
}

namespace {

std::int64_t block_key(std::int32_t start, std::int32_t stop) {
    return static_cast<std::int64_t>(start) << 32 | static_cast<std::uint32_t>(stop);
}

struct FloorPoint {
    double w = 0.0;
    double h = 0.0;
    double f = 0.0;
};

// Smallest value of A*w + B*h over A >= 1, B >= 1 subject to the floor
// constraints A*c.w + B*c.h >= c.f. Every layout of the block costs exactly
// A*w + B*h across shapes for some fixed A, B, and both coefficients are at
// least 1 because the cells' projections cover the rectangle's extents; the
// LP minimum is therefore a sound floor at (w, h). The minimum sits on a
// vertex of the feasible region, so all vertices are tried. Feasibility
// checks lean a hair toward accepting, which can only lower the result.
double lp_floor(double w, double h, const FloorPoint* cons, int count) {
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](double a, double b) {
        if (!(a >= 1.0 - 1e-12) || !(b >= 1.0 - 1e-12)) {
            return;
        }
        for (int i = 0; i < count; ++i) {
            if (a * cons[i].w + b * cons[i].h < cons[i].f * (1.0 - 1e-12)) {
                return;
            }
        }
        best = std::min(best, a * w + b * h);
    };
    consider(1.0, 1.0);
    for (int i = 0; i < count; ++i) {
        consider(1.0, (cons[i].f - cons[i].w) / cons[i].h);
        consider((cons[i].f - cons[i].h) / cons[i].w, 1.0);
    }
    if (count == 2) {
        double det = cons[0].w * cons[1].h - cons[1].w * cons[0].h;
        if (det != 0.0) {
            double a = (cons[0].f * cons[1].h - cons[1].f * cons[0].h) / det;
            double b = (cons[1].f * cons[0].w - cons[0].f * cons[1].w) / det;
            consider(a, b);
        }
    }
    return std::isfinite(best) ? best : 0.0;
}

}  // namespace

double MemoTable::floor_at(std::int32_t start, std::int32_t stop, double area, double w) const {
    auto it = anchors_.find(block_key(start, stop));
    if (it == anchors_.end()) {
        return 0.0;
    }
    const std::vector<Anchor>& list = it->second;
    auto pos = std::lower_bound(list.begin(), list.end(), w,
                                [](const Anchor& a, double width) { return a.width < width; });
    double h = area / w;
    // Transfer weakens with shape distance, so only the nearest anchors on
    // each side are worth consulting; any subset still yields a sound floor.
    double strongest = 0.0;
    FloorPoint cons[2];
    auto single = [&](const Anchor& anchor) {
        cons[0] = FloorPoint{anchor.width, area / anchor.width, anchor.value};
        strongest = std::max(strongest, lp_floor(w, h, cons, 1));
    };
    auto lo = pos;
    for (int i = 0; i < 8 && lo != list.begin(); ++i) {
        --lo;
        single(*lo);
    }
    for (auto hi = pos; hi != list.end() && hi - pos < 8; ++hi) {
        single(*hi);
    }
    // Pair the nearest anchors on both sides of w; when w falls outside the
    // recorded range, extrapolate from the two outermost on that side.
    const Anchor* left = pos != list.begin() ? &*(pos - 1) : nullptr;
    const Anchor* right = pos != list.end() ? &*pos : nullptr;
    if (left != nullptr && right == nullptr && pos - list.begin() >= 2) {
        right = left;
        left = &*(pos - 2);
    } else if (right != nullptr && left == nullptr && list.end() - pos >= 2) {
        left = right;
        right = &*(pos + 1);
    }
    if (left != nullptr && right != nullptr && left != right &&
        right->width > left->width * (1.0 + 1e-9)) {
        cons[0] = FloorPoint{left->width, area / left->width, left->value};
        cons[1] = FloorPoint{right->width, area / right->width, right->value};
        strongest = std::max(strongest, lp_floor(w, h, cons, 2));
    }
    return strongest;
}

void MemoTable::record_floor(std::int32_t start, std::int32_t stop, double w, double value) {
    std::vector<Anchor>& list = anchors_[block_key(start, stop)];
    auto pos = std::lower_bound(list.begin(), list.end(), w,
                                [](const Anchor& a, double width) { return a.width < width; });
    if (pos != list.end() && pos->width <= w * (1.0 + 1e-12) && w <= pos->width * (1.0 + 1e-12)) {
        pos->value = std::max(pos->value, value);
        return;
    }
    list.insert(pos, Anchor{w, value});
}

namespace {

// A coefficient pair (a, b) describing one way to slice a block: the cut
// fractions inside a slicing are fixed area ratios, so laid out at any shape
// (w, h) that slicing costs exactly a*w + b*h. A block's profile is the
// lower-left convex chain of the pairs of all its slicings, sorted by
// ascending a with descending b, so the chain's minimum over a*w + b*h is
// the block's exact optimal cost at any shape.
struct CostPoint {
    double a = 0.0;
    double b = 0.0;
};

using CostChain = std::vector<CostPoint>;

// Triangular table with one cost profile per contiguous block.
struct EnvelopeTable {
    int n = 0;
    std::vector<CostChain> chains;

    const CostChain& at(int s, int e) const {
        return chains[static_cast<std::size_t>(s) * n - static_cast<std::size_t>(s) * (s - 1) / 2 +
                      (e - s)];
    }
    CostChain& at(int s, int e) {
        return chains[static_cast<std::size_t>(s) * n - static_cast<std::size_t>(s) * (s - 1) / 2 +
                      (e - s)];
    }
};

// Smallest a*w + b*h over the chain's pairs. The pair differences have
// increasing slope along the chain, so the objective is unimodal in the
// vertex index and a binary search lands on the minimizer.
double profile_cost(const CostChain& chain, double w, double h) {
    std::size_t lo = 0;
    std::size_t hi = chain.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        double step = (chain[mid + 1].a - chain[mid].a) * w + (chain[mid + 1].b - chain[mid].b) * h;
        if (step >= 0.0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return chain[lo].a * w + chain[lo].b * h;
}

// Appends the lower-left frontier of pairwise sums of two scaled chains.
// With a side cut into fractions r1 and r2, a pair (a, b) of the first part
// becomes (r1*a, b) for a vertical cut or (a, r1*b) for a horizontal one,
// and the parts' costs add. Only sums of frontier-adjacent vertices can end
// up on the combined frontier, so the chains are merged edge by edge in
// slope order instead of forming all pairs.
void combine_into(std::vector<CostPoint>& pool, const CostChain& x, const CostChain& y, double r1,
                  double r2, bool vertical) {
    double xa = vertical ? r1 : 1.0;
    double xb = vertical ? 1.0 : r1;
    double ya = vertical ? r2 : 1.0;
    double yb = vertical ? 1.0 : r2;
    std::size_t i = 0;
    std::size_t j = 0;
    pool.push_back({xa * x[0].a + ya * y[0].a, xb * x[0].b + yb * y[0].b});
    while (i + 1 < x.size() || j + 1 < y.size()) {
        bool take_x;
        if (i + 1 >= x.size()) {
            take_x = false;
        } else if (j + 1 >= y.size()) {
            take_x = true;
        } else {
            double dxa = xa * (x[i + 1].a - x[i].a);
            double dxb = xb * (x[i + 1].b - x[i].b);
            double dya = ya * (y[j + 1].a - y[j].a);
            double dyb = yb * (y[j + 1].b - y[j].b);
            take_x = dxb * dya <= dyb * dxa;
        }
        if (take_x) {
            ++i;
        } else {
            ++j;
        }
        pool.push_back({xa * x[i].a + ya * y[j].a, xb * x[i].b + yb * y[j].b});
    }
}

// Lower-left convex chain of a point pool: the subset that can minimize
// a*w + b*h for some positive direction, sorted by ascending a.
CostChain lower_left_chain(std::vector<CostPoint>& pool) {
    std::sort(pool.begin(), pool.end(), [](const CostPoint& x, const CostPoint& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    CostChain chain;
    chain.reserve(64);
    for (const CostPoint& q : pool) {
        if (!std::isfinite(q.a) || !std::isfinite(q.b)) {
            continue;
        }
        if (!chain.empty() && q.b >= chain.back().b) {
            continue;
        }
        while (chain.size() >= 2) {
            const CostPoint& s = chain[chain.size() - 2];
            const CostPoint& t = chain.back();
            if ((t.b - s.b) * (q.a - s.a) < (q.b - s.b) * (t.a - s.a)) {
                break;
            }
            chain.pop_back();
        }
        chain.push_back(q);
    }
    return chain;
}

// Bottom-up pass assembling every block's cost profile: a cell is exactly
// w + h, and a longer block's candidates come from combining the two sides
// of each cut in both orientations. Only hull vertices survive each step,
// which keeps profile sizes growing about linearly with block length in
// practice, so the table costs roughly n^3 frontier merges and dominates
// the whole layout time for inputs in the hundreds.
EnvelopeTable build_envelopes(const std::vector<double>& pre, int n) {
    EnvelopeTable env;
    env.n = n;
    env.chains.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int s = 0; s < n; ++s) {
        env.at(s, s) = {{1.0, 1.0}};
    }
    std::vector<CostPoint> pool;
    for (int len = 2; len <= n; ++len) {
        for (int s = 0; s + len - 1 < n; ++s) {
            int e = s + len - 1;
            double total = pre[e + 1] - pre[s];
            pool.clear();
            for (int k = s; k < e; ++k) {
                double r1 = (pre[k + 1] - pre[s]) / total;
                double r2 = (pre[e + 1] - pre[k + 1]) / total;
                combine_into(pool, env.at(s, k), env.at(k + 1, e), r1, r2, true);
                combine_into(pool, env.at(s, k), env.at(k + 1, e), r1, r2, false);
            }
            env.at(s, e) = lower_left_chain(pool);
        }
    }
    return env;
}

struct DpCtx {
    const std::vector<double>& a;
    const std::vector<double>& pre;
    // Prefix sums of sqrt(area), feeding the block cost bounds below.
    const std::vector<double>& pre_sqrt;
    const EnvelopeTable& env;
    MemoTable& table;

    double block_sum(int s, int e) const { return pre[e + 1] - pre[s]; }
    double sqrt_sum(int s, int e) const { return pre_sqrt[e + 1] - pre_sqrt[s]; }
};

// First index in [s, e+1) whose area is at most `t`; areas are sorted
// descending, so the cells above the threshold form a prefix.
int first_at_most(const DpCtx& ctx, int s, int e, double t) {
    auto begin = ctx.a.begin();
    auto it = std::lower_bound(begin + s, begin + e + 1, t,
                               [](double value, double threshold) { return value > threshold; });
    return static_cast<int>(it - begin);
}

// Lower bound on the total half-perimeter of any guillotine layout of block
// [s, e] inside a w-by-h rectangle. Three sound relaxations, combined by
// taking the maximum:
//  - every cell costs at least 2*sqrt(a) (square cell);
//  - a cell with sqrt(a) > h cannot be square; its height is capped at h,
//    so it costs at least h + a/h (likewise for w);
//  - the cells' x-projections jointly cover [0, w], so sum(w_i) >= w; when
//    B = sum(sqrt(a_i)) < w the widths must stretch beyond square, and the
//    cheapest way costs w + B*B/w (likewise for h); the two coverings
//    together also put w + h underneath any layout.
// Unlike the plain square-cell bound this depends on the block's shape,
// which is what lets the cut loop discard lopsided candidates.
double shape_bound(const DpCtx& ctx, int s, int e, double w, double h) {
    double sqrt_total = ctx.sqrt_sum(s, e);
    double bound = 2.0 * sqrt_total;
    int tall = first_at_most(ctx, s, e, h * h);
    if (tall > s) {
        bound += (tall - s) * h + (ctx.pre[tall] - ctx.pre[s]) / h -
                 2.0 * (ctx.pre_sqrt[tall] - ctx.pre_sqrt[s]);
    }
    int wide = first_at_most(ctx, s, e, w * w);
    if (wide > s) {
        bound += (wide - s) * w + (ctx.pre[wide] - ctx.pre[s]) / w -
                 2.0 * (ctx.pre_sqrt[wide] - ctx.pre_sqrt[s]);
    }
    bound = std::max(bound, w + h);
    if (sqrt_total < w) {
        bound = std::max(bound, w + sqrt_total * sqrt_total / w);
    }
    if (sqrt_total < h) {
        bound = std::max(bound, h + sqrt_total * sqrt_total / h);
    }
    return bound;
}

struct DpResult {
    double value = 0.0;
    // True when `value` is the block's exact optimum (and the memo holds its
    // entry); false when the probe was abandoned because the optimum provably
    // exceeds the ceiling, in which case `value` is a sound lower bound.
    bool exact = false;
};

// Cut index whose prefix sum lands nearest to half the block's area; used by
// the seed chain below, which only needs some reasonable feasible layout.
int half_cut(const DpCtx& ctx, int s, int e) {
    double target = ctx.pre[s] + 0.5 * ctx.block_sum(s, e);
    auto begin = ctx.pre.begin();
    auto it = std::lower_bound(begin + s + 1, begin + e + 1, target);
    int j = static_cast<int>(it - begin);
    if (j > s + 1 && (j > e || target - ctx.pre[j - 1] <= ctx.pre[j] - target)) {
        --j;
    }
    return j - 1;
}

// Cost of the feasible layout that halves the block at the most balanced cut
// all the way down (vertical when w >= h). Seeds the candidate gates with an
// upper bound before anything is solved exactly, which lets hopeless cuts be
// discarded without recursing into them.
double chain_cost(const DpCtx& ctx, int s, int e, double w, double h) {
    double cost = 0.0;
    while (s != e) {
        int k = half_cut(ctx, s, e);
        double part = ctx.block_sum(s, k);
        double w1 = w;
        double h1 = h;
        double w2 = w;
        double h2 = h;
        if (w >= h) {
            w1 = part / h;
            w2 = w - w1;
        } else {
            h1 = part / w;
            h2 = h - h1;
        }
        if (k - s <= e - k - 1) {
            cost += chain_cost(ctx, s, k, w1, h1);
            s = k + 1;
            w = w2;
            h = h2;
        } else {
            cost += chain_cost(ctx, k + 1, e, w2, h2);
            e = k;
            w = w1;
            h = h1;
        }
    }
    return cost + w + h;
}

// Bound comparisons leave this much relative headroom so that rounding in
// the bound arithmetic can never discard a candidate whose evaluated total
// would have won or tied. Tied candidates therefore always survive to full
// evaluation, where the explicit tie rules decide.
constexpr double bound_slack = 1e-12;

// Solves block [s, e] in a w-by-h rectangle, giving up early once the cost
// provably exceeds `ceiling`. The many cuts of a near-balanced block differ
// only slightly in cost, so candidates run most-balanced first to make the
// incumbent tight before the bulk of the loop; ties are then resolved to the
// smallest cut index, and to the horizontal orientation within a cut, the
// same rules the plain left-to-right loop follows.
DpResult dp_solve(DpCtx& ctx, int s, int e, double w, double h, double ceiling) {
    if (s == e) {
        return {w + h, true};
    }
    MemoTable::Key key{s, e, MemoTable::quantize(w), MemoTable::quantize(h)};
    if (const MemoTable::Entry* hit = ctx.table.find(key)) {
        return {hit->half_perimeter, true};
    }
    double state_floor = std::max({ctx.table.floor_at(s, e, ctx.block_sum(s, e), w),
                                   shape_bound(ctx, s, e, w, h),
                                   profile_cost(ctx.env.at(s, e), w, h)});
    if (state_floor > ceiling) {
        return {state_floor, false};
    }
    // One-ply pass: bound both children of every cut before solving anything.
    // The minimum over cuts is itself a floor for the state (some first cut
    // must be made), and sorting by the per-cut bound makes the strongest
    // candidates set the incumbent before the weak ones come up for pruning.
    auto child_floor = [&ctx](int cs, int ce, double cw, double ch) {
        return std::max({shape_bound(ctx, cs, ce, cw, ch),
                         ctx.table.floor_at(cs, ce, ctx.block_sum(cs, ce), cw),
                         profile_cost(ctx.env.at(cs, ce), cw, ch)});
    };
    struct SplitBounds {
        int k = 0;
        double vertical_lb1 = 0.0;
        double vertical_lb2 = 0.0;
        double horizontal_lb1 = 0.0;
        double horizontal_lb2 = 0.0;
        double key = 0.0;
    };
    std::vector<SplitBounds> splits;
    splits.reserve(e - s);
    double one_ply = std::numeric_limits<double>::infinity();
    for (int k = s; k < e; ++k) {
        double part = ctx.block_sum(s, k);
        double w1 = part / h;
        double h1 = part / w;
        SplitBounds sb;
        sb.k = k;
        sb.vertical_lb1 = child_floor(s, k, w1, h);
        sb.vertical_lb2 = child_floor(k + 1, e, w - w1, h);
        sb.horizontal_lb1 = child_floor(s, k, w, h1);
        sb.horizontal_lb2 = child_floor(k + 1, e, w, h - h1);
        sb.key = std::min(sb.vertical_lb1 + sb.vertical_lb2,
                          sb.horizontal_lb1 + sb.horizontal_lb2);
        one_ply = std::min(one_ply, sb.key);
        splits.push_back(sb);
    }
    state_floor = std::max(state_floor, one_ply);
    if (state_floor > ceiling) {
        // Worth remembering: the one-ply floor took a full pass to compute
        // and transfers to the block's nearby shapes.
        ctx.table.record_floor(s, e, w, state_floor);
        return {state_floor, false};
    }
    // Any feasible layout's cost caps the optimum, so the seed tightens the
    // gates below before the first exact evaluation exists.
    double seed = chain_cost(ctx, s, e, w, h);
    std::stable_sort(splits.begin(), splits.end(),
                     [](const SplitBounds& lhs, const SplitBounds& rhs) {
                         return lhs.key < rhs.key;
                     });
    double best = std::numeric_limits<double>::infinity();
    int best_k = std::numeric_limits<int>::max();
    bool best_vertical = false;
    // Smallest sound bound among abandoned candidates; together with `best`
    // this is a valid floor for the whole state.
    double abandoned_floor = std::numeric_limits<double>::infinity();
    for (const SplitBounds& sb : splits) {
        int k = sb.k;
        double part = ctx.block_sum(s, k);
        double gate = std::min({best, ceiling, seed}) * (1.0 + bound_slack);
        auto try_split = [&](double lb1, double lb2, double w1, double h1, double w2, double h2) {
            if (lb1 + lb2 > gate) {
                abandoned_floor = std::min(abandoned_floor, lb1 + lb2);
                return std::numeric_limits<double>::infinity();
            }
            // The child with more slack above its floor is likelier to sink
            // the candidate, so probe it first; the solve order does not
            // affect which totals exist, only how quickly dead ends show.
            bool left_first = lb1 >= lb2;
            DpResult first = left_first ? dp_solve(ctx, s, k, w1, h1, gate - lb2)
                                        : dp_solve(ctx, k + 1, e, w2, h2, gate - lb1);
            double other_lb = left_first ? lb2 : lb1;
            if (!first.exact || first.value + other_lb > gate) {
                abandoned_floor = std::min(abandoned_floor, first.value + other_lb);
                return std::numeric_limits<double>::infinity();
            }
            DpResult second = left_first ? dp_solve(ctx, k + 1, e, w2, h2, gate - first.value)
                                         : dp_solve(ctx, s, k, w1, h1, gate - first.value);
            if (!second.exact) {
                abandoned_floor = std::min(abandoned_floor, first.value + second.value);
                return std::numeric_limits<double>::infinity();
            }
            return first.value + second.value;
        };
        double w1 = part / h;
        double vertical_total =
            try_split(sb.vertical_lb1, sb.vertical_lb2, w1, h, w - w1, h);
        double h1 = part / w;
        double horizontal_total =
            try_split(sb.horizontal_lb1, sb.horizontal_lb2, w, h1, w, h - h1);
        bool vertical = vertical_total < horizontal_total;
        double total = vertical ? vertical_total : horizontal_total;
        if (total < best || (total == best && k < best_k)) {
            best = total;
            best_k = k;
            best_vertical = vertical;
        }
    }
    // `abandoned_floor > best` also proves optimality: nothing abandoned
    // could have matched the incumbent, so the loop saw every contender.
    if (std::isfinite(best) && (best <= ceiling || abandoned_floor > best)) {
        ctx.table.put(key, MemoTable::Entry{best, best_k, best_vertical});
        ctx.table.record_floor(s, e, w, best);
        return {best, true};
    }
    double proven = std::max(state_floor, std::min(best, abandoned_floor));
    ctx.table.record_floor(s, e, w, proven);
    return {proven, false};
}

// Replays the decisions recorded during dp_solve. Dimensions follow the same
// arithmetic as the solve, so every lookup hits.
void dp_emit(DpCtx& ctx, int s, int e, Rect q, std::vector<Rect>& out) {
    while (s != e) {
        MemoTable::Key key{s, e, MemoTable::quantize(q.w), MemoTable::quantize(q.h)};
        const MemoTable::Entry* entry = ctx.table.find(key);
        if (entry == nullptr) {
            throw std::logic_error("dynamic_prog: missing memo entry during replay");
        }
        int k = entry->cut;
        double part = ctx.block_sum(s, k);
        Rect q1;
        Rect q2;
        if (entry->vertical) {
            double w1 = part / q.h;
            q1 = Rect{q.x, q.y, w1, q.h};
            q2 = Rect{q.x + w1, q.y, q.w - w1, q.h};
        } else {
            double h1 = part / q.w;
            q1 = Rect{q.x, q.y + (q.h - h1), q.w, h1};
            q2 = Rect{q.x, q.y, q.w, q.h - h1};
        }
        if (k - s <= e - k - 1) {
            dp_emit(ctx, s, k, q1, out);
            q = q2;
            s = k + 1;
        } else {
            dp_emit(ctx, k + 1, e, q2, out);
            q = q1;
            e = k;
        }
    }
    out[s] = q;
}

struct OraclePiece {
    double half_perimeter;
    std::vector<Rect> rects;  // relative to the block's lower-left corner
};

OraclePiece oracle_solve(const SplitCtx& ctx, int s, int e, double w, double h) {
    if (s == e) {
        return {w + h, {Rect{0.0, 0.0, w, h}}};
    }
    OraclePiece best;
    best.half_perimeter = std::numeric_limits<double>::infinity();
    for (int k = s; k < e; ++k) {
        double part = ctx.block_sum(s, k);
        double w1 = part / h;
        OraclePiece v1 = oracle_solve(ctx, s, k, w1, h);
        OraclePiece v2 = oracle_solve(ctx, k + 1, e, w - w1, h);
        double h1 = part / w;
        OraclePiece t1 = oracle_solve(ctx, s, k, w, h1);
        OraclePiece t2 = oracle_solve(ctx, k + 1, e, w, h - h1);
        double vertical_total = v1.half_perimeter + v2.half_perimeter;
        double horizontal_total = t1.half_perimeter + t2.half_perimeter;
        OraclePiece candidate;
        if (vertical_total < horizontal_total) {
            candidate.half_perimeter = vertical_total;
            candidate.rects = std::move(v1.rects);
            for (Rect r : v2.rects) {
                r.x += w1;
                candidate.rects.push_back(r);
            }
        } else {
            candidate.half_perimeter = horizontal_total;
            candidate.rects = std::move(t1.rects);
            for (Rect& r : candidate.rects) {
                r.y += h - h1;
            }
            for (Rect r : t2.rects) {
                candidate.rects.push_back(r);
            }
        }
        if (candidate.half_perimeter < best.half_perimeter) {
            best = std::move(candidate);
        }
    }
    return best;
}

}  // namespace

Layout dynamic_prog(const Rect& container, const AreaList& areas, MemoTable* table) {
    require_valid_input(container, areas);
    std::vector<std::size_t> order = descending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    std::vector<double> pre = prefix_sums(a);
    std::vector<double> roots(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        roots[i] = std::sqrt(a[i]);
    }
    std::vector<double> pre_sqrt = prefix_sums(roots);
    EnvelopeTable env = build_envelopes(pre, static_cast<int>(a.size()));
    MemoTable local;
    MemoTable& memo = table != nullptr ? *table : local;
    DpCtx ctx{a, pre, pre_sqrt, env, memo};
    int last = static_cast<int>(a.size()) - 1;
    dp_solve(ctx, 0, last, container.w, container.h,
             std::numeric_limits<double>::infinity());
    std::vector<Rect> placed(a.size());
    dp_emit(ctx, 0, last, container, placed);
    return assemble(container, areas, order, placed);
}

Layout slicing_oracle(const Rect& container, const AreaList& areas) {
    require_valid_input(container, areas);
    if (areas.size() > 8) {
        throw std::invalid_argument("slicing_oracle supports at most 8 areas");
    }
    std::vector<std::size_t> order = descending_order(areas);
    std::vector<double> a(areas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = areas.areas[order[i]];
    }
    std::vector<double> pre = prefix_sums(a);
    SplitCtx ctx{a, pre};
    OraclePiece piece =
        oracle_solve(ctx, 0, static_cast<int>(a.size()) - 1, container.w, container.h);
    std::vector<Rect> placed(a.size());
    for (std::size_t i = 0; i < placed.size(); ++i) {
        placed[i] = Rect{piece.rects[i].x + container.x, piece.rects[i].y + container.y,
                         piece.rects[i].w, piece.rects[i].h};
    }
    return assemble(container, areas, order, placed);
}

}  // namespace treemaplab
