#pragma once

#include <cstdint>
#include <unordered_map>

#include "treemaplab/geometry.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

// Shared behaviour of the container-filling algorithms in this header:
// areas are laid out largest-first (ties keep input order), every cell area
// equals the requested area up to floating-point rounding, and the cells of
// the returned layout tile the container. Cells are sorted by id.

// Strip-packing heuristic: greedily fills rows along the container's shorter
// side, closing a row as soon as adding the next area would worsen the row's
// worst aspect ratio.
Layout squarified(const Rect& container, const AreaList& areas);

// Recursive binary partition. Splits the sorted sequence at the most
// area-balanced prefix, divides the container proportionally (vertical cut
// when w >= h, prefix block on the left or top), and recurses.
Layout dc_baseline(const Rect& container, const AreaList& areas);

// dc_baseline with a local repair step: when the area step at the balanced
// cut is steep (parameter c), the element next to the cut is moved across it
// and the better of the two resulting partitions is kept.
Layout modified_dc(const Rect& container, const AreaList& areas, double c = 2.0);

// Memo table used by dynamic_prog. Keys quantize block dimensions to 12
// significant digits so shapes that agree to that precision share one entry.
// Entries record the winning cut and orientation; layouts are reconstructed
// by replaying those decisions, which keeps the table small while still
// tiling each block exactly. States abandoned under a cost ceiling do not
// get an entry; they record the cost floor proven so far, which lets a later
// visit with a higher ceiling skip the probe when the floor already rules
// the state out.
class MemoTable {
public:
    struct Key {
        std::int32_t start = 0;
        std::int32_t stop = 0;
        std::int64_t qw = 0;
        std::int64_t qh = 0;

        bool operator==(const Key&) const = default;
    };

    struct Entry {
        double half_perimeter = 0.0;  // sum of w + h over the block's cells
        std::int32_t cut = 0;         // last index of the prefix block
        bool vertical = false;
    };

    static std::int64_t quantize(double v);

    const Entry* find(const Key& key) const;
    void put(const Key& key, const Entry& entry);
    // Cost floors scale across shapes of one block: a fixed cut tree costs
    // A*w + B*h with constant A, B > 0, so a floor f proven at width w0
    // implies a floor of f * min(w/w0, w0/w) at width w (the block's area
    // fixes the height ratio to the inverse of the width ratio), and a pair
    // of floors pins (A, B) down to a half-plane whose cheapest member
    // bounds every other shape more tightly still. floor_at returns the
    // strongest implication among the recorded shapes; `area` is the block's
    // area, which relates each recorded width to its height.
    double floor_at(std::int32_t start, std::int32_t stop, double area, double w) const;
    void record_floor(std::int32_t start, std::int32_t stop, double w, double value);
    std::size_t size() const { return map_.size(); }

private:
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    struct Anchor {
        double width = 0.0;
        double value = 0.0;
    };

    std::unordered_map<Key, Entry, KeyHash> map_;
    std::unordered_map<std::int64_t, std::vector<Anchor>> anchors_;
};

// Optimal guillotine partition of the sorted sequence by dynamic programming
// over (block, shape) states. Minimizes total cell perimeter among layouts
// reachable by recursive straight cuts of contiguous blocks.
Layout dynamic_prog(const Rect& container, const AreaList& areas,
                    MemoTable* table = nullptr);

// Unmemoized exhaustive search over the same cut space as dynamic_prog.
// Reference implementation for tests; throws std::invalid_argument for more
// than 8 areas.
Layout slicing_oracle(const Rect& container, const AreaList& areas);

}  // namespace treemaplab
