#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "treemaplab/geometry.hpp"
#include "treemaplab/treemodel.hpp"

namespace treemaplab {

// Exact layout as a mixed-integer model: place one rectangle per area inside
// the container, no overlaps, minimizing total weighted perimeter plus
// optional closeness penalties. Solved by branch and bound over pairwise
// placement relations with a convex interior-point relaxation at each node.

struct ModelParams {
    // 0 weighs every cell equally, 1 weighs each cell by its area.
    int alpha = 0;
    // Reward (per unit of cost weight) for cells at least as wide as tall.
    double beta = 0.0;
    // n x n row-major, non-negative, zero diagonal: gamma[i*n+j] penalizes
    // the distance between the anchors of cells i and j.
    std::vector<double> gamma;
    // At most one entry set: pins that cell's anchor to the container's
    // lower-left corner.
    std::vector<int> delta;
    // n x n row-major 0/1: eta[i*n+j] forces cell j flush against cell i's
    // right edge; theta[i*n+j] forces cell j flush on top of cell i. At most
    // one direction per unordered pair.
    std::vector<int> eta;
    std::vector<int> theta;
};

struct OptModel {
    Rect container;
    std::vector<double> areas;
    std::vector<int> ids;
    std::vector<std::string> names;
    ModelParams params;
    // Minimum strict-separation distance used when inferring the binary
    // relation variables from a candidate layout.
    double epsilon = 0.0;
    int num_continuous = 0;  // w, h, x, y per cell
    int num_binary = 0;      // two relation indicators per ordered pair plus z per cell
};

// Validates parameter shapes and values; throws std::invalid_argument naming
// the offending entry.
OptModel build_model(const Rect& container, const AreaList& areas,
                     const ModelParams& params = {});

enum class SolveStatus { optimal, node_limit, time_limit, infeasible };

struct OptSolution {
    std::vector<Rect> rects;  // parallel to OptModel::areas
    std::vector<int> z;       // 1 when the cell is at least as wide as tall
    double objective = 0.0;   // model objective at the returned point
    double bound = 0.0;       // proven lower bound on the optimal objective
    double reported_perimeter = 0.0;  // sum over cells of 2 (w + h)
    SolveStatus status = SolveStatus::optimal;
    long nodes = 0;
    long ipm_iterations = 0;
};

// Relation of the ordered pair (i, j), i < j.
enum class Relation : std::uint8_t { left_of, right_of, below, above };

struct PairAssign {
    int i = 0;
    int j = 0;
    Relation rel = Relation::left_of;
};

// Solves the continuous placement problem once every unordered pair carries
// a relation. fixed_z may be empty only when beta is zero; otherwise it
// fixes each cell's orientation indicator. The KKT residuals of the returned
// point are at most 1e-7 when status is optimal.
OptSolution solve_subproblem(const OptModel& m,
                             const std::vector<PairAssign>& relations,
                             const std::vector<int>& fixed_z = {});

// Shape-independent bound: each cell's weighted perimeter is at least
// c_i * (2 sqrt(A_i) - beta).
double lower_bound(const OptModel& m);

struct SolveConfig {
    long node_limit = 1000000;
    double time_limit = std::numeric_limits<double>::infinity();
    // Guard against accidental huge instances; raise explicitly if needed.
    int max_n = 9;
    // Terminate once the incumbent is proven within this relative gap.
    double gap_tol = 1e-5;
    // Restricts the first branched pair to two of its four relations. Only
    // valid without placement preferences (delta, eta, theta all zero).
    bool symmetry_break = false;
    // Initial incumbent; defaults to the dynamic programming layout.
    const Layout* warm_start = nullptr;
};

OptSolution solve(const OptModel& m, const SolveConfig& config = {});

struct ConstraintViolation {
    int family = 0;  // constraint family number as listed by export_model
    int i = 0;
    int j = -1;      // -1 for single-cell constraints
    double amount = 0.0;
};

// Evaluates every model constraint at the candidate point, inferring the
// relation indicators from the geometry. Returns violations above tol.
std::vector<ConstraintViolation> check_feasibility(const OptModel& m,
                                                   const OptSolution& candidate,
                                                   double tol = 1e-6);

// Objective value at the candidate point, exact closeness distances.
double evaluate_objective(const OptModel& m, const OptSolution& candidate);

// Plain-text listing of the instantiated model: objective, then one
// constraint per line, grouped into numbered families.
std::string export_model(const OptModel& m);

Layout solution_to_layout(const OptModel& m, const OptSolution& solution);

}  // namespace treemaplab
