#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "treemaplab/optimizer.hpp"

namespace treemaplab {

namespace {

std::string pair_label(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void validate_params(const ModelParams& p, std::size_t n) {
    if (p.alpha != 0 && p.alpha != 1) {
        throw std::invalid_argument("alpha must be 0 or 1");
    }
    if (!std::isfinite(p.beta) || p.beta < 0.0) {
        throw std::invalid_argument("beta must be non-negative and finite");
    }
    if (!p.gamma.empty()) {
        if (p.gamma.size() != n * n) {
            throw std::invalid_argument("gamma must be an n x n matrix");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double v = p.gamma[i * n + j];
                if (!std::isfinite(v) || v < 0.0) {
                    throw std::invalid_argument(
                        "gamma" + pair_label(static_cast<int>(i), static_cast<int>(j)) +
                        " must be non-negative and finite");
                }
                if (i == j && v != 0.0) {
                    throw std::invalid_argument("gamma diagonal must be zero");
                }
            }
        }
    }
    if (!p.delta.empty()) {
        if (p.delta.size() != n) {
            throw std::invalid_argument("delta must have one entry per cell");
        }
        int pinned = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (p.delta[i] != 0 && p.delta[i] != 1) {
                throw std::invalid_argument("delta[" + std::to_string(i) +
                                            "] must be 0 or 1");
            }
            pinned += p.delta[i];
        }
        if (pinned > 1) {
            throw std::invalid_argument("at most one cell may be pinned to the corner");
        }
    }
    for (const auto* mat : {&p.eta, &p.theta}) {
        const char* label = mat == &p.eta ? "eta" : "theta";
        if (mat->empty()) {
            continue;
        }
        if (mat->size() != n * n) {
            throw std::invalid_argument(std::string(label) + " must be an n x n matrix");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                int v = (*mat)[i * n + j];
                if (v != 0 && v != 1) {
                    throw std::invalid_argument(
                        std::string(label) +
                        pair_label(static_cast<int>(i), static_cast<int>(j)) +
                        " must be 0 or 1");
                }
                if (i == j && v != 0) {
                    throw std::invalid_argument(std::string(label) +
                                                " diagonal must be zero");
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((*mat)[i * n + j] + (*mat)[j * n + i] > 1) {
                    throw std::invalid_argument(
                        std::string(label) + " set in both directions for pair " +
                        pair_label(static_cast<int>(i), static_cast<int>(j)));
                }
            }
        }
    }
}

double cost_weight(const OptModel& m, std::size_t i) {
    return 1.0 - m.params.alpha + m.params.alpha * m.areas[i];
}

double gamma_at(const OptModel& m, std::size_t i, std::size_t j) {
    if (m.params.gamma.empty()) {
        return 0.0;
    }
    return m.params.gamma[i * m.areas.size() + j];
}

int pref_at(const std::vector<int>& mat, std::size_t n, std::size_t i, std::size_t j) {
    return mat.empty() ? 0 : mat[i * n + j];
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

OptModel build_model(const Rect& container, const AreaList& areas,
                     const ModelParams& params) {
    if (areas.size() == 0) {
        throw std::invalid_argument("model requires at least one area");
    }
    if (container.w <= 0.0 || container.h <= 0.0) {
        throw std::invalid_argument("container must have positive extent");
    }
    for (double a : areas.areas) {
        if (!std::isfinite(a) || a <= 0.0) {
            throw std::invalid_argument("areas must be positive and finite");
        }
    }
    validate_params(params, areas.size());
    OptModel m;
    m.container = container;
    m.areas = areas.areas;
    m.ids = areas.ids;
    m.names = areas.names;
    m.params = params;
    m.epsilon = 1e-6 * std::max(container.w, container.h);
    int n = static_cast<int>(areas.size());
    m.num_continuous = 4 * n;
    m.num_binary = 2 * n * (n - 1) + n;
    return m;
}

double lower_bound(const OptModel& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < m.areas.size(); ++i) {
        total += cost_weight(m, i) * (2.0 * std::sqrt(m.areas[i]) - m.params.beta);
    }
    return total;
}

double evaluate_objective(const OptModel& m, const OptSolution& candidate) {
    std::size_t n = m.areas.size();
    if (candidate.rects.size() != n) {
        throw std::invalid_argument("solution size does not match model");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rect& r = candidate.rects[i];
        double z = i < candidate.z.size() ? candidate.z[i] : 0.0;
        total += cost_weight(m, i) * ((r.w + r.h) - m.params.beta * z);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double g = gamma_at(m, i, j);
            if (g > 0.0) {
                total += g * std::hypot(candidate.rects[i].x - candidate.rects[j].x,
                                        candidate.rects[i].y - candidate.rects[j].y);
            }
        }
    }
    return total;
}

std::vector<ConstraintViolation> check_feasibility(const OptModel& m,
                                                   const OptSolution& candidate,
                                                   double tol) {
    std::size_t n = m.areas.size();
    if (candidate.rects.size() != n) {
        throw std::invalid_argument("solution size does not match model");
    }
    const double W = m.container.w;
    const double H = m.container.h;
    std::vector<ConstraintViolation> out;
    auto report = [&](int family, int i, int j, double amount) {
        if (amount > tol) {
            out.push_back(ConstraintViolation{family, i, j, amount});
        }
    };
    // Anchors are container-relative in the model.
    auto rx = [&](std::size_t i) { return candidate.rects[i].x - m.container.x; };
    auto ry = [&](std::size_t i) { return candidate.rects[i].y - m.container.y; };

    std::vector<int> z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = i < candidate.z.size() ? candidate.z[i]
                                      : (candidate.rects[i].w >= candidate.rects[i].h);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Rect& r = candidate.rects[i];
        if (r.w <= 0.0 || r.h <= 0.0) {
            report(1, static_cast<int>(i), -1,
                   std::numeric_limits<double>::infinity());
            continue;
        }
        report(1, static_cast<int>(i), -1,
               std::log(m.areas[i]) - std::log(r.w) - std::log(r.h));
        report(2, static_cast<int>(i), -1, rx(i) + r.w - W);
        report(2, static_cast<int>(i), -1, -rx(i));
        report(3, static_cast<int>(i), -1, ry(i) + r.h - H);
        report(3, static_cast<int>(i), -1, -ry(i));
        if (!m.params.delta.empty() && m.params.delta[i] == 1) {
            report(4, static_cast<int>(i), -1, rx(i) + ry(i));
        }
        report(12, static_cast<int>(i), -1, (r.h - H * (1 - z[i])) - r.w);
        report(13, static_cast<int>(i), -1, (r.w - W * z[i]) - r.h);
    }

    // Relation indicators inferred from the geometry: the half-epsilon
    // threshold keeps both sides of each indicator's pair of constraints
    // within epsilon/2 of feasibility for any honest layout.
    auto x_rel = [&](std::size_t i, std::size_t j) {
        if (pref_at(m.params.eta, n, i, j) == 1) {
            return 0;
        }
        return rx(i) + candidate.rects[i].w - rx(j) <= 0.5 * m.epsilon ? 0 : 1;
    };
    auto y_rel = [&](std::size_t i, std::size_t j) {
        if (pref_at(m.params.theta, n, i, j) == 1) {
            return 0;
        }
        return ry(i) + candidate.rects[i].h - ry(j) <= 0.5 * m.epsilon ? 0 : 1;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            int xij = x_rel(i, j);
            int yij = y_rel(i, j);
            int eij = pref_at(m.params.eta, n, i, j);
            int tij = pref_at(m.params.theta, n, i, j);
            double xlhs = rx(i) - rx(j) + candidate.rects[i].w;
            double ylhs = ry(i) - ry(j) + candidate.rects[i].h;
            report(5, static_cast<int>(i), static_cast<int>(j), xlhs - W * xij);
            report(6, static_cast<int>(i), static_cast<int>(j),
                   (m.epsilon - W * (1 - xij)) * (1 - eij) - xlhs);
            report(7, static_cast<int>(i), static_cast<int>(j), xij - (1 - eij));
            report(8, static_cast<int>(i), static_cast<int>(j), ylhs - H * yij);
            report(9, static_cast<int>(i), static_cast<int>(j),
                   (m.epsilon - H * (1 - yij)) * (1 - tij) - ylhs);
            report(10, static_cast<int>(i), static_cast<int>(j), yij - (1 - tij));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int total = x_rel(i, j) + x_rel(j, i) + y_rel(i, j) + y_rel(j, i);
            report(11, static_cast<int>(i), static_cast<int>(j),
                   static_cast<double>(total - 3));
        }
    }
    return out;
}

std::string export_model(const OptModel& m) {
    std::size_t n = m.areas.size();
    std::string out;
    out += "# cells: " + std::to_string(n) + ", container W=" + fmt(m.container.w) +
           " H=" + fmt(m.container.h) + "\n";
    out += "# continuous variables (" + std::to_string(m.num_continuous) +
           "): w[i], h[i], x[i], y[i]\n";
    out += "# binary variables (" + std::to_string(m.num_binary) +
           "): xrel[i,j], yrel[i,j] for i != j, z[i]\n";
    out += "# epsilon = " + fmt(m.epsilon) + "\n";
    out += "minimize sum_i (1 - " + std::to_string(m.params.alpha) + " + " +
           std::to_string(m.params.alpha) + "*A[i]) * (w[i] + h[i] - " +
           fmt(m.params.beta) + "*z[i]) + sum_{i!=j} gamma[i,j] * "
           "norm((x[i],y[i]) - (x[j],y[j]))\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "(1) area[" + std::to_string(i) + "]: log(" + fmt(m.areas[i]) +
               ") - log(w[" + std::to_string(i) + "]) - log(h[" + std::to_string(i) +
               "]) <= 0\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        out += "(2) xspan[" + std::to_string(i) + "]: x[" + std::to_string(i) +
               "] + w[" + std::to_string(i) + "] <= " + fmt(m.container.w) + "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        out += "(3) yspan[" + std::to_string(i) + "]: y[" + std::to_string(i) +
               "] + h[" + std::to_string(i) + "] <= " + fmt(m.container.h) + "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        int d = m.params.delta.empty() ? 0 : m.params.delta[i];
        out += "(4) corner[" + std::to_string(i) + "]: x[" + std::to_string(i) +
               "] + y[" + std::to_string(i) +
               "] <= " + fmt((m.container.w + m.container.h) * (1 - d)) + "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            std::string ij = std::to_string(i) + "," + std::to_string(j);
            int eij = pref_at(m.params.eta, n, i, j);
            int tij = pref_at(m.params.theta, n, i, j);
            out += "(5) xsep[" + ij + "]: x[" + std::to_string(i) + "] - x[" +
                   std::to_string(j) + "] + w[" + std::to_string(i) + "] <= " +
                   fmt(m.container.w) + "*xrel[" + ij + "]\n";
            out += "(6) xgap[" + ij + "]: x[" + std::to_string(i) + "] - x[" +
                   std::to_string(j) + "] + w[" + std::to_string(i) + "] >= (" +
                   fmt(m.epsilon) + " - " + fmt(m.container.w) + "*(1 - xrel[" + ij +
                   "])) * " + std::to_string(1 - eij) + "\n";
            out += "(7) xpin[" + ij + "]: xrel[" + ij +
                   "] <= " + std::to_string(1 - eij) + "\n";
            out += "(8) ysep[" + ij + "]: y[" + std::to_string(i) + "] - y[" +
                   std::to_string(j) + "] + h[" + std::to_string(i) + "] <= " +
                   fmt(m.container.h) + "*yrel[" + ij + "]\n";
            out += "(9) ygap[" + ij + "]: y[" + std::to_string(i) + "] - y[" +
                   std::to_string(j) + "] + h[" + std::to_string(i) + "] >= (" +
                   fmt(m.epsilon) + " - " + fmt(m.container.h) + "*(1 - yrel[" + ij +
                   "])) * " + std::to_string(1 - tij) + "\n";
            out += "(10) ypin[" + ij + "]: yrel[" + ij +
                   "] <= " + std::to_string(1 - tij) + "\n";
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::string ij = std::to_string(i) + "," + std::to_string(j);
            std::string ji = std::to_string(j) + "," + std::to_string(i);
            out += "(11) cover[" + ij + "]: xrel[" + ij + "] + xrel[" + ji +
                   "] + yrel[" + ij + "] + yrel[" + ji + "] <= 3\n";
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        out += "(12) wide[" + std::to_string(i) + "]: w[" + std::to_string(i) +
               "] >= h[" + std::to_string(i) + "] - " + fmt(m.container.h) +
               "*(1 - z[" + std::to_string(i) + "])\n";
        out += "(13) tall[" + std::to_string(i) + "]: h[" + std::to_string(i) +
               "] >= w[" + std::to_string(i) + "] - " + fmt(m.container.w) + "*z[" +
               std::to_string(i) + "]\n";
    }
    return out;
}

Layout solution_to_layout(const OptModel& m, const OptSolution& solution) {
    if (solution.rects.size() != m.areas.size()) {
        throw std::invalid_argument("solution size does not match model");
    }
    Layout layout;
    layout.container = m.container;
    layout.cells.resize(m.areas.size());
    for (std::size_t i = 0; i < m.areas.size(); ++i) {
        Cell& cell = layout.cells[i];
        cell.id = i < m.ids.size() ? m.ids[i] : static_cast<int>(i);
        cell.name = i < m.names.size() ? m.names[i] : std::string{};
        cell.rect = solution.rects[i];
    }
    std::stable_sort(layout.cells.begin(), layout.cells.end(),
                     [](const Cell& a, const Cell& b) { return a.id < b.id; });
    return layout;
}

}  // namespace treemaplab
