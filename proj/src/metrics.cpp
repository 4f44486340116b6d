#include "treemaplab/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace treemaplab {

LayoutMetrics compute_metrics(const Layout& layout) {
    if (layout.cells.empty()) {
        throw std::invalid_argument("cannot compute metrics of an empty layout");
    }
    LayoutMetrics m;
    double weighted = 0.0;
    double total_area = 0.0;
    for (const Cell& cell : layout.cells) {
        double ar = aspect_ratio(cell.rect);
        double area = cell.rect.area();
        m.perimeter += full_perimeter(cell.rect);
        m.max_ar = std::max(m.max_ar, ar);
        m.avg_ar += ar;
        weighted += area * ar;
        total_area += area;
    }
    m.avg_ar /= static_cast<double>(layout.cells.size());
    m.awar = weighted / total_area;
    return m;
}

AreaList perturb_areas(const AreaList& areas, double level, Rng& rng) {
    if (level < 0.0) {
        throw std::invalid_argument("perturbation level must be non-negative");
    }
    AreaList out = areas;
    double before = 0.0;
    double after = 0.0;
    for (double& a : out.areas) {
        before += a;
        a += rng.uniform01() * level;
        after += a;
    }
    double scale = before / after;
    for (double& a : out.areas) {
        a *= scale;
    }
    return out;
}

StabilityPair stability_between(const Layout& a, const Layout& b, bool align) {
    if (a.cells.size() != b.cells.size()) {
        throw std::invalid_argument("layouts have different cell counts");
    }
    if (a.cells.empty()) {
        throw std::invalid_argument("cannot compare empty layouts");
    }
    Layout la = a;
    Layout lb = b;
    if (align) {
        translate(la, Vec2{-la.container.x, -la.container.y});
        translate(lb, Vec2{-lb.container.x, -lb.container.y});
    }
    std::unordered_map<int, const Rect*> by_id;
    by_id.reserve(lb.cells.size());
    for (const Cell& cell : lb.cells) {
        by_id.emplace(cell.id, &cell.rect);
    }
    StabilityPair out;
    for (const Cell& cell : la.cells) {
        auto it = by_id.find(cell.id);
        if (it == by_id.end()) {
            throw std::invalid_argument("cell id " + std::to_string(cell.id) +
                                        " missing from second layout");
        }
        double hd = hausdorff_distance(cell.rect, *it->second);
        out.max_hd = std::max(out.max_hd, hd);
        out.avg_hd += hd;
    }
    out.avg_hd /= static_cast<double>(la.cells.size());
    return out;
}

std::vector<LevelStability> stability_study(
    const std::function<Layout(const AreaList&)>& layout_fn,
    const AreaList& base_areas, const std::vector<double>& levels, int rounds,
    std::uint64_t seed, int threads, bool cumulative) {
    if (rounds <= 0) {
        throw std::invalid_argument("rounds must be positive");
    }
    Layout base = layout_fn(base_areas);

    struct Job {
        std::size_t level_idx;
        int round;
    };
    std::vector<Job> jobs;
    jobs.reserve(levels.size() * static_cast<std::size_t>(rounds));
    for (std::size_t li = 0; li < levels.size(); ++li) {
        for (int r = 0; r < rounds; ++r) {
            jobs.push_back(Job{li, r});
        }
    }
    std::vector<StabilityPair> slots(jobs.size());

    // In cumulative mode each round shakes the previous round's areas, so the
    // chains have to be derived up front; the layout work below still runs
    // per-round in parallel. Round seeds are the same in both modes.
    std::vector<std::vector<AreaList>> chains;
    if (cumulative) {
        chains.resize(levels.size());
        for (std::size_t li = 0; li < levels.size(); ++li) {
            chains[li].reserve(static_cast<std::size_t>(rounds));
            const AreaList* prev = &base_areas;
            for (int r = 0; r < rounds; ++r) {
                Rng rng(derive_seed(seed, li, static_cast<std::uint64_t>(r)));
                chains[li].push_back(perturb_areas(*prev, levels[li], rng));
                prev = &chains[li].back();
            }
        }
    }

    auto run_job = [&](std::size_t k) {
        const Job& job = jobs[k];
        AreaList shaken;
        if (cumulative) {
            shaken = chains[job.level_idx][static_cast<std::size_t>(job.round)];
        } else {
            Rng rng(derive_seed(seed, job.level_idx, static_cast<std::uint64_t>(job.round)));
            shaken = perturb_areas(base_areas, levels[job.level_idx], rng);
        }
        slots[k] = stability_between(base, layout_fn(shaken));
    };

    int workers = std::max(1, threads);
    if (workers == 1) {
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            run_job(k);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t k = next.fetch_add(1); k < jobs.size();
                         k = next.fetch_add(1)) {
                        run_job(k);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<LevelStability> out(levels.size());
    for (std::size_t li = 0; li < levels.size(); ++li) {
        out[li].level = levels[li];
        out[li].rounds = rounds;
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        LevelStability& agg = out[jobs[k].level_idx];
        agg.max_hd = std::max(agg.max_hd, slots[k].max_hd);
        agg.avg_hd += slots[k].avg_hd;
    }
    for (LevelStability& agg : out) {
        agg.avg_hd /= static_cast<double>(rounds);
    }
    return out;
}

}  // namespace treemaplab
