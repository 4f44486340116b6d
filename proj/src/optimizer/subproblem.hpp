#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace treemaplab::opt {

// Continuous placement problem with heights eliminated: variables are
// u = (w, x, y) and every height appears as A_i / w_i. All constraints are
// convex in u (x-adjacency equalities are affine; y-adjacency equalities are
// not, see solve_reduced).
struct ReducedProblem {
    int n = 0;
    double W = 0.0;
    double H = 0.0;
    std::vector<double> A;
    std::vector<double> c;  // per-cell cost weights

    // Separations: (i, j) meaning i left of j / i below j.
    std::vector<std::pair<int, int>> xedges;
    std::vector<std::pair<int, int>> yedges;
    // Flush adjacencies replacing the corresponding separation.
    std::vector<std::pair<int, int>> xflush;
    std::vector<std::pair<int, int>> yflush;
    // Cells pinned to the container's lower-left corner.
    std::vector<int> pinned;
    // Orientation: -1 free, 0 forces w <= sqrt(A), 1 forces w >= sqrt(A).
    std::vector<int> zfix;
    // Closeness terms (i, j, weight) with i < j, weight > 0.
    std::vector<std::pair<std::pair<int, int>, double>> gpairs;
    // Smoothing width for the closeness distance terms.
    double gamma_sigma = 0.0;
};

struct IpmResult {
    Eigen::VectorXd u;    // (w, x, y)
    double value = 0.0;   // objective at u, smoothed closeness terms
    // Valid lower bound on the problem's optimum at any returned point:
    // f + max(lambda,0).g - |r_dual|_1 * max(W,H), minus the smoothing
    // overshoot when closeness terms are present. Meaningless (and left very
    // low) when nonlinear flush equalities make the problem nonconvex.
    double safe_bound = 0.0;
    bool converged = false;
    bool bound_is_certified = true;
    int iters = 0;
    double kkt_residual = 0.0;
};

IpmResult solve_reduced(const ReducedProblem& p, double tol = 1e-9, int maxit = 160);

}  // namespace treemaplab::opt
