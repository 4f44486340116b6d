#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subproblem.hpp"
#include "treemaplab/optimizer.hpp"
#include "treemaplab/subdivision.hpp"

namespace treemaplab {

namespace {

using opt::IpmResult;
using opt::ReducedProblem;
using opt::solve_reduced;

constexpr int max_dag_cells = 31;

// Transitive closure maintained incrementally; bit j of reach[i] means a
// directed path i -> j exists.
struct Dag {
    int n = 0;
    std::array<std::uint32_t, max_dag_cells> reach{};

    bool has(int i, int j) const { return (reach[i] >> j) & 1u; }

    bool would_cycle(int i, int j) const { return i == j || has(j, i); }

    void add(int i, int j) {
        std::uint32_t post = reach[j] | (1u << j);
        for (int u = 0; u < n; ++u) {
            if (u == i || has(u, i)) {
                reach[u] |= post;
            }
        }
    }

    // Heaviest chain weight in the partial order, node weights in w.
    double heaviest_chain(const std::vector<double>& w) const {
        std::vector<double> best(n, -1.0);
        double top = 0.0;
        for (int i = 0; i < n; ++i) {
            top = std::max(top, chain_from(i, w, best));
        }
        return top;
    }

private:
    double chain_from(int i, const std::vector<double>& w,
                      std::vector<double>& best) const {
        if (best[i] >= 0.0) {
            return best[i];
        }
        double deepest = 0.0;
        for (int j = 0; j < n; ++j) {
            if (has(i, j)) {
                deepest = std::max(deepest, chain_from(j, w, best));
            }
        }
        best[i] = w[i] + deepest;
        return best[i];
    }
};

struct NodeData {
    Dag x;
    Dag y;
    std::vector<std::pair<int, int>> xedges;
    std::vector<std::pair<int, int>> yedges;
    std::vector<int> zfix;
    std::size_t pair_idx = 0;
    int z_idx = 0;
    double bound = -std::numeric_limits<double>::infinity();
    bool first_branch = true;
};

struct Search {
    const OptModel& m;
    SolveConfig cfg;
    int n;
    std::vector<double> c;
    std::vector<double> min_w;  // A_i / H
    std::vector<double> min_h;  // A_i / W
    double c_total_beta = 0.0;  // beta * sum c_i
    std::vector<std::pair<int, int>> pairs;
    ReducedProblem base;
    std::chrono::steady_clock::time_point t0;

    double inc_obj = std::numeric_limits<double>::infinity();
    OptSolution best;
    long nodes = 0;
    long ipm_iters = 0;
    bool hit_nodes = false;
    bool hit_time = false;
    double frontier = std::numeric_limits<double>::infinity();

    bool out_of_budget() {
        if (nodes >= cfg.node_limit) {
            hit_nodes = true;
            return true;
        }
        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count() > cfg.time_limit) {
            hit_time = true;
            return true;
        }
        return false;
    }

    double prune_threshold() const {
        return inc_obj - cfg.gap_tol * std::max(1.0, std::abs(inc_obj));
    }

    void dfs(NodeData& nd);
    void leaf(NodeData& nd);
    void branch_pairs(NodeData& nd);
    void branch_z(NodeData& nd);
    IpmResult run_ipm(const NodeData& nd, double tol, int maxit);
    double node_bound(const NodeData& nd, const IpmResult& r) const;
    void offer_incumbent(const NodeData& nd, const IpmResult& r);
};

IpmResult Search::run_ipm(const NodeData& nd, double tol, int maxit) {
    ReducedProblem p = base;
    p.xedges.insert(p.xedges.end(), nd.xedges.begin(), nd.xedges.end());
    p.yedges.insert(p.yedges.end(), nd.yedges.begin(), nd.yedges.end());
    p.zfix = nd.zfix;
    IpmResult r = solve_reduced(p, tol, maxit);
    ipm_iters += r.iters;
    return r;
}

// Lower bound on the full objective over the node's subtree: the certified
// relaxation bound minus the orientation reward that unfixed cells could
// still collect, never below the shape-independent bound.
double Search::node_bound(const NodeData& nd, const IpmResult& r) const {
    double beta = m.params.beta;
    double slack = 0.0;
    if (beta > 0.0) {
        for (int i = 0; i < n; ++i) {
            slack += nd.zfix[i] == 1 || nd.zfix[i] == -1 ? beta * c[i] : 0.0;
        }
    }
    double amgm = 0.0;
    for (int i = 0; i < n; ++i) {
        amgm += c[i] * 2.0 * std::sqrt(m.areas[i]);
    }
    return std::max(r.safe_bound - slack, amgm - c_total_beta);
}

void Search::offer_incumbent(const NodeData& nd, const IpmResult& r) {
    OptSolution cand;
    cand.rects.resize(n);
    for (int i = 0; i < n; ++i) {
        double w = r.u[i];
        double h = m.areas[i] / w;
        cand.rects[i] = Rect{m.container.x + r.u[n + i], m.container.y + r.u[2 * n + i],
                             w, h};
    }
    cand.z.resize(n);
    for (int i = 0; i < n; ++i) {
        if (m.params.beta > 0.0) {
            cand.z[i] = nd.zfix[i] == 1;
        } else {
            cand.z[i] = cand.rects[i].w >= cand.rects[i].h;
        }
    }
    double obj = evaluate_objective(m, cand);
    if (obj < inc_obj) {
        inc_obj = obj;
        cand.objective = obj;
        best.rects = cand.rects;
        best.z = cand.z;
        best.objective = obj;
    }
}

void Search::leaf(NodeData& nd) {
    IpmResult r = run_ipm(nd, 1e-9, 160);
    if (r.converged) {
        offer_incumbent(nd, r);
    }
}

void Search::branch_z(NodeData& nd) {
    int i = nd.z_idx;
    ++nd.z_idx;
    for (int zv : {1, 0}) {
        if (zv == 1 && std::sqrt(m.areas[i]) > m.container.w * (1.0 + 1e-12)) {
            continue;  // forced width would not fit
        }
        if (zv == 0 && std::sqrt(m.areas[i]) > m.container.h * (1.0 + 1e-12)) {
            continue;  // forced height would not fit
        }
        NodeData child = nd;
        child.zfix[i] = zv;
        dfs(child);
    }
}

void Search::branch_pairs(NodeData& nd) {
    auto [i, j] = pairs[nd.pair_idx];
    ++nd.pair_idx;
    bool restrict_first = cfg.symmetry_break && nd.first_branch;
    nd.first_branch = false;
    for (Relation rel :
         {Relation::left_of, Relation::right_of, Relation::below, Relation::above}) {
        if (restrict_first && (rel == Relation::right_of || rel == Relation::above)) {
            continue;
        }
        bool is_x = rel == Relation::left_of || rel == Relation::right_of;
        int from = (rel == Relation::left_of || rel == Relation::below) ? i : j;
        int to = from == i ? j : i;
        Dag& dag = is_x ? nd.x : nd.y;
        if (dag.would_cycle(from, to)) {
            continue;
        }
        NodeData child = nd;
        Dag& cd = is_x ? child.x : child.y;
        cd.add(from, to);
        if (is_x) {
            child.xedges.emplace_back(from, to);
            if (cd.heaviest_chain(min_w) > m.container.w * (1.0 + 1e-9)) {
                continue;
            }
        } else {
            child.yedges.emplace_back(from, to);
            if (cd.heaviest_chain(min_h) > m.container.h * (1.0 + 1e-9)) {
                continue;
            }
        }
        dfs(child);
    }
}

void Search::dfs(NodeData& nd) {
    if (out_of_budget()) {
        frontier = std::min(frontier, nd.bound);
        return;
    }
    ++nodes;
    while (nd.pair_idx < pairs.size()) {
        auto [i, j] = pairs[nd.pair_idx];
        bool related = nd.x.has(i, j) || nd.x.has(j, i) || nd.y.has(i, j) ||
                       nd.y.has(j, i);
        if (!related) {
            break;
        }
        ++nd.pair_idx;
    }
    bool pairs_done = nd.pair_idx >= pairs.size();
    bool z_done = m.params.beta == 0.0 || nd.z_idx >= n;
    if (pairs_done && z_done) {
        leaf(nd);
        return;
    }
    // The dual bound is certified at any interior iterate, so the interior
    // node relaxations run loose; only leaf evaluations demand full accuracy.
    IpmResult r = run_ipm(nd, 1e-7, 60);
    nd.bound = std::max(nd.bound, node_bound(nd, r));
    if (nd.bound >= prune_threshold()) {
        return;
    }
    if (!pairs_done) {
        branch_pairs(nd);
    } else {
        branch_z(nd);
    }
}

std::vector<std::pair<int, int>> ordered_pairs(const OptModel& m) {
    int n = static_cast<int>(m.areas.size());
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                         return m.areas[a.first] * m.areas[a.second] >
                                m.areas[b.first] * m.areas[b.second];
                     });
    return pairs;
}

int pref(const std::vector<int>& mat, int n, int i, int j) {
    return mat.empty() ? 0 : mat[i * n + j];
}

// Shared template: cost weights, closeness pairs, preferences. Branch edges
// and zfix are appended per node.
ReducedProblem make_base(const OptModel& m) {
    int n = static_cast<int>(m.areas.size());
    ReducedProblem p;
    p.n = n;
    p.W = m.container.w;
    p.H = m.container.h;
    p.A = m.areas;
    p.c.resize(n);
    for (int i = 0; i < n; ++i) {
        p.c[i] = 1.0 - m.params.alpha + m.params.alpha * m.areas[i];
    }
    p.zfix.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!m.params.delta.empty() && m.params.delta[i] == 1) {
            p.pinned.push_back(i);
        }
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (pref(m.params.eta, n, i, j) == 1) {
                p.xflush.emplace_back(i, j);
            }
            if (pref(m.params.theta, n, i, j) == 1) {
                p.yflush.emplace_back(i, j);
            }
        }
    }
    if (!m.params.gamma.empty()) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double wgt = m.params.gamma[i * n + j] + m.params.gamma[j * n + i];
                if (wgt > 0.0) {
                    p.gpairs.push_back({{i, j}, wgt});
                }
            }
        }
        p.gamma_sigma = 1e-6 * std::max(p.W, p.H);
    }
    return p;
}

// Pairs already separated by a flush preference need no branching; their
// separation is enforced by the equality rows.
bool pair_preset(const OptModel& m, int i, int j) {
    int n = static_cast<int>(m.areas.size());
    return pref(m.params.eta, n, i, j) || pref(m.params.eta, n, j, i) ||
           pref(m.params.theta, n, i, j) || pref(m.params.theta, n, j, i);
}

double reported_perimeter_of(const std::vector<Rect>& rects) {
    double total = 0.0;
    for (const Rect& r : rects) {
        total += full_perimeter(r);
    }
    return total;
}

OptSolution warm_start_solution(const OptModel& m, const SolveConfig& cfg) {
    Layout layout;
    if (cfg.warm_start != nullptr) {
        layout = *cfg.warm_start;
    } else {
        AreaList areas;
        areas.areas = m.areas;
        areas.ids.resize(m.areas.size());
        for (std::size_t i = 0; i < m.areas.size(); ++i) {
            areas.ids[i] = static_cast<int>(i);
        }
        areas.names = m.names;
        areas.names.resize(m.areas.size());
        layout = dynamic_prog(m.container, areas);
    }
    if (layout.cells.size() != m.areas.size()) {
        throw std::invalid_argument("warm start layout does not match model size");
    }
    OptSolution sol;
    sol.rects.resize(m.areas.size());
    sol.z.resize(m.areas.size());
    // Cells are sorted by id and ids are dense, so cell k belongs to area k.
    for (std::size_t i = 0; i < layout.cells.size(); ++i) {
        sol.rects[i] = layout.cells[i].rect;
        sol.z[i] = layout.cells[i].rect.w >= layout.cells[i].rect.h;
    }
    sol.objective = evaluate_objective(m, sol);
    return sol;
}

}  // namespace

OptSolution solve(const OptModel& m, const SolveConfig& config) {
    int n = static_cast<int>(m.areas.size());
    if (n > config.max_n) {
        throw std::invalid_argument(
            "instance exceeds the configured solver size cap (max_n)");
    }
    if (n > max_dag_cells) {
        throw std::invalid_argument("solver supports at most 31 cells");
    }
    if (config.symmetry_break) {
        bool has_pref = false;
        for (int d : m.params.delta) {
            has_pref |= d != 0;
        }
        for (int e : m.params.eta) {
            has_pref |= e != 0;
        }
        for (int t : m.params.theta) {
            has_pref |= t != 0;
        }
        if (has_pref) {
            throw std::invalid_argument(
                "symmetry breaking requires delta, eta, and theta to be zero");
        }
    }

    Search st{m, config, n, {}, {}, {}, 0.0, {}, make_base(m), {}};
    st.c = st.base.c;
    st.min_w.resize(n);
    st.min_h.resize(n);
    for (int i = 0; i < n; ++i) {
        st.min_w[i] = m.areas[i] / m.container.h;
        st.min_h[i] = m.areas[i] / m.container.w;
        st.c_total_beta += m.params.beta * st.c[i];
    }
    for (auto [i, j] : ordered_pairs(m)) {
        if (!pair_preset(m, i, j)) {
            st.pairs.emplace_back(i, j);
        }
    }
    st.t0 = std::chrono::steady_clock::now();

    OptSolution warm = warm_start_solution(m, config);
    st.inc_obj = warm.objective;
    st.best = warm;

    NodeData root;
    root.x.n = n;
    root.y.n = n;
    root.zfix.assign(n, -1);
    root.bound = lower_bound(m);
    // Flush preferences order their pair in the matching direction; seeding
    // the closures keeps branching and chain tests consistent with them.
    for (auto [i, j] : st.base.xflush) {
        if (!root.x.would_cycle(i, j)) {
            root.x.add(i, j);
        }
    }
    for (auto [i, j] : st.base.yflush) {
        if (!root.y.would_cycle(i, j)) {
            root.y.add(i, j);
        }
    }
    st.dfs(root);

    OptSolution out = st.best;
    out.status = st.hit_nodes   ? SolveStatus::node_limit
                 : st.hit_time  ? SolveStatus::time_limit
                                : SolveStatus::optimal;
    double proven = st.inc_obj - config.gap_tol * std::max(1.0, std::abs(st.inc_obj));
    if (out.status != SolveStatus::optimal) {
        proven = std::min(proven, st.frontier);
    }
    out.bound = std::max(proven, lower_bound(m));
    out.objective = st.inc_obj;
    out.reported_perimeter = reported_perimeter_of(out.rects);
    out.nodes = st.nodes;
    out.ipm_iterations = st.ipm_iters;
    return out;
}

OptSolution solve_subproblem(const OptModel& m,
                             const std::vector<PairAssign>& relations,
                             const std::vector<int>& fixed_z) {
    int n = static_cast<int>(m.areas.size());
    if (n > max_dag_cells) {
        throw std::invalid_argument("solver supports at most 31 cells");
    }
    if (m.params.beta > 0.0 && fixed_z.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("beta > 0 requires fixed_z for every cell");
    }
    if (!fixed_z.empty() && fixed_z.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("fixed_z must have one entry per cell");
    }
    std::vector<int> covered(n * n, 0);
    ReducedProblem p = make_base(m);
    if (!fixed_z.empty()) {
        for (int i = 0; i < n; ++i) {
            if (fixed_z[i] != 0 && fixed_z[i] != 1) {
                throw std::invalid_argument("fixed_z entries must be 0 or 1");
            }
            p.zfix[i] = fixed_z[i];
        }
    }
    for (const PairAssign& pa : relations) {
        if (pa.i < 0 || pa.j < 0 || pa.i >= n || pa.j >= n || pa.i >= pa.j) {
            throw std::invalid_argument("pair assignments must satisfy 0 <= i < j < n");
        }
        covered[pa.i * n + pa.j] = 1;
        bool is_x = pa.rel == Relation::left_of || pa.rel == Relation::right_of;
        int from = (pa.rel == Relation::left_of || pa.rel == Relation::below) ? pa.i
                                                                              : pa.j;
        int to = from == pa.i ? pa.j : pa.i;
        if (is_x) {
            p.xedges.emplace_back(from, to);
        } else {
            p.yedges.emplace_back(from, to);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!covered[i * n + j] && !pair_preset(m, i, j)) {
                throw std::invalid_argument("pair (" + std::to_string(i) + "," +
                                            std::to_string(j) +
                                            ") has no assigned relation");
            }
        }
    }
    IpmResult r = solve_reduced(p, 1e-9);
    OptSolution sol;
    sol.rects.resize(n);
    sol.z.resize(n);
    for (int i = 0; i < n; ++i) {
        double w = r.u[i];
        sol.rects[i] = Rect{m.container.x + r.u[n + i], m.container.y + r.u[2 * n + i],
                            w, m.areas[i] / w};
        sol.z[i] = fixed_z.empty() ? (sol.rects[i].w >= sol.rects[i].h ? 1 : 0)
                                   : fixed_z[i];
    }
    sol.objective = evaluate_objective(m, sol);
    if (r.bound_is_certified) {
        double reward = 0.0;
        if (m.params.beta > 0.0) {
            for (int i = 0; i < n; ++i) {
                reward += m.params.beta * p.c[i] * p.zfix[i];
            }
        }
        sol.bound = r.safe_bound - reward;
    } else {
        sol.bound = lower_bound(m);
    }
    sol.status = r.converged ? SolveStatus::optimal : SolveStatus::infeasible;
    sol.nodes = 1;
    sol.ipm_iterations = r.iters;
    sol.reported_perimeter = reported_perimeter_of(sol.rects);
    return sol;
}

}  // namespace treemaplab
