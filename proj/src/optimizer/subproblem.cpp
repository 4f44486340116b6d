#include "subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treemaplab::opt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Row layout of the inequality system g(u) + s = 0, s > 0:
//   [0, n)    -x_i <= 0            (skipped for pinned cells)
//   [n, 2n)   x_i + w_i - W <= 0
//   [2n, 3n)  -y_i <= 0            (skipped for pinned cells)
//   [3n, 4n)  y_i + A_i/w_i - H <= 0
//   then one row per x-separation, y-separation, and orientation bound.
// Pinned cells keep their box rows (x = 0 leaves them interior) but lose the
// sign rows, whose slack would be stuck at zero.
//
// Equality rows e(u) = 0 cover pins (x_i = 0, y_i = 0) and flush
// adjacencies (x_j = x_i + w_i, y_j = y_i + A_i/w_i).
struct Assembled {
    int n3 = 0;
    int m = 0;       // inequality rows
    int me = 0;      // equality rows
    std::vector<int> skip_sign;  // 1 for pinned cells
    // Row indices for the Hessian contributions of A/w terms.
    int ybox_base = 0;
    int xsep_base = 0;
    int ysep_base = 0;
    int zrow_base = 0;
};

class System {
public:
    explicit System(const ReducedProblem& p) : p_(p) {
        n_ = p.n;
        lay_.n3 = 3 * n_;
        lay_.skip_sign.assign(n_, 0);
        for (int i : p.pinned) {
            lay_.skip_sign[i] = 1;
        }
        int sign_rows = 0;
        for (int i = 0; i < n_; ++i) {
            sign_rows += lay_.skip_sign[i] ? 0 : 2;
        }
        lay_.ybox_base = sign_rows + n_;
        int rows = sign_rows + 2 * n_;
        lay_.xsep_base = rows;
        rows += static_cast<int>(p.xedges.size());
        lay_.ysep_base = rows;
        rows += static_cast<int>(p.yedges.size());
        lay_.zrow_base = rows;
        for (int zi : p.zfix) {
            rows += zi >= 0 ? 1 : 0;
        }
        lay_.m = rows;
        lay_.me = 2 * static_cast<int>(p.pinned.size()) +
                  static_cast<int>(p.xflush.size() + p.yflush.size());
        row_of_ybox_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            row_of_ybox_[i] = lay_.ybox_base + i;
        }
    }

    int n3() const { return lay_.n3; }
    int m() const { return lay_.m; }
    int me() const { return lay_.me; }

    double f(const VectorXd& u) const {
        double total = 0.0;
        for (int i = 0; i < n_; ++i) {
            total += p_.c[i] * (u[i] + p_.A[i] / u[i]);
        }
        for (const auto& [pair, wgt] : p_.gpairs) {
            total += wgt * smooth_dist(u, pair.first, pair.second);
        }
        return total;
    }

    VectorXd grad(const VectorXd& u) const {
        VectorXd g = VectorXd::Zero(lay_.n3);
        for (int i = 0; i < n_; ++i) {
            g[i] = p_.c[i] * (1.0 - p_.A[i] / (u[i] * u[i]));
        }
        for (const auto& [pair, wgt] : p_.gpairs) {
            add_smooth_grad(u, pair.first, pair.second, wgt, g);
        }
        return g;
    }

    VectorXd g(const VectorXd& u) const {
        VectorXd out(lay_.m);
        int r = 0;
        for (int i = 0; i < n_; ++i) {
            if (!lay_.skip_sign[i]) {
                out[r++] = -u[n_ + i];
            }
        }
        for (int i = 0; i < n_; ++i) {
            out[r++] = u[n_ + i] + u[i] - p_.W;
        }
        for (int i = 0; i < n_; ++i) {
            if (!lay_.skip_sign[i]) {
                out[r++] = -u[2 * n_ + i];
            }
        }
        for (int i = 0; i < n_; ++i) {
            out[r++] = u[2 * n_ + i] + p_.A[i] / u[i] - p_.H;
        }
        for (auto [i, j] : p_.xedges) {
            out[r++] = u[n_ + i] + u[i] - u[n_ + j];
        }
        for (auto [i, j] : p_.yedges) {
            out[r++] = u[2 * n_ + i] + p_.A[i] / u[i] - u[2 * n_ + j];
        }
        for (int i = 0; i < n_; ++i) {
            if (p_.zfix[i] == 1) {
                out[r++] = std::sqrt(p_.A[i]) - u[i];
            } else if (p_.zfix[i] == 0) {
                out[r++] = u[i] - std::sqrt(p_.A[i]);
            }
        }
        return out;
    }

    MatrixXd jac(const VectorXd& u) const {
        MatrixXd J = MatrixXd::Zero(lay_.m, lay_.n3);
        int r = 0;
        for (int i = 0; i < n_; ++i) {
            if (!lay_.skip_sign[i]) {
                J(r++, n_ + i) = -1.0;
            }
        }
        for (int i = 0; i < n_; ++i) {
            J(r, n_ + i) = 1.0;
            J(r, i) = 1.0;
            ++r;
        }
        for (int i = 0; i < n_; ++i) {
            if (!lay_.skip_sign[i]) {
                J(r++, 2 * n_ + i) = -1.0;
            }
        }
        for (int i = 0; i < n_; ++i) {
            J(r, 2 * n_ + i) = 1.0;
            J(r, i) = -p_.A[i] / (u[i] * u[i]);
            ++r;
        }
        for (auto [i, j] : p_.xedges) {
            J(r, n_ + i) = 1.0;
            J(r, i) = 1.0;
            J(r, n_ + j) = -1.0;
            ++r;
        }
        for (auto [i, j] : p_.yedges) {
            J(r, 2 * n_ + i) = 1.0;
            J(r, i) = -p_.A[i] / (u[i] * u[i]);
            J(r, 2 * n_ + j) = -1.0;
            ++r;
        }
        for (int i = 0; i < n_; ++i) {
            if (p_.zfix[i] == 1) {
                J(r++, i) = -1.0;
            } else if (p_.zfix[i] == 0) {
                J(r++, i) = 1.0;
            }
        }
        return J;
    }

    VectorXd e(const VectorXd& u) const {
        VectorXd out(lay_.me);
        int r = 0;
        for (int i : p_.pinned) {
            out[r++] = u[n_ + i];
            out[r++] = u[2 * n_ + i];
        }
        for (auto [i, j] : p_.xflush) {
            out[r++] = u[n_ + i] + u[i] - u[n_ + j];
        }
        for (auto [i, j] : p_.yflush) {
            out[r++] = u[2 * n_ + i] + p_.A[i] / u[i] - u[2 * n_ + j];
        }
        return out;
    }

    MatrixXd ejac(const VectorXd& u) const {
        MatrixXd E = MatrixXd::Zero(lay_.me, lay_.n3);
        int r = 0;
        for (int i : p_.pinned) {
            E(r++, n_ + i) = 1.0;
            E(r++, 2 * n_ + i) = 1.0;
        }
        for (auto [i, j] : p_.xflush) {
            E(r, n_ + i) = 1.0;
            E(r, i) = 1.0;
            E(r, n_ + j) = -1.0;
            ++r;
        }
        for (auto [i, j] : p_.yflush) {
            E(r, 2 * n_ + i) = 1.0;
            E(r, i) = -p_.A[i] / (u[i] * u[i]);
            E(r, 2 * n_ + j) = -1.0;
            ++r;
        }
        return E;
    }

    // Hessian of the Lagrangian. The w-block is diagonal (2A/w^3 terms from
    // the objective and every row containing A_i/w_i); closeness terms add a
    // dense block over the x/y coordinates.
    MatrixXd hess(const VectorXd& u, const VectorXd& lam, const VectorXd& nu) const {
        MatrixXd Hm = MatrixXd::Zero(lay_.n3, lay_.n3);
        for (int i = 0; i < n_; ++i) {
            double cube = u[i] * u[i] * u[i];
            double d = 2.0 * p_.c[i] * p_.A[i] / cube;
            d += lam[row_of_ybox_[i]] * 2.0 * p_.A[i] / cube;
            Hm(i, i) = d;
        }
        for (std::size_t r = 0; r < p_.yedges.size(); ++r) {
            int i = p_.yedges[r].first;
            double cube = u[i] * u[i] * u[i];
            Hm(i, i) += lam[lay_.ysep_base + static_cast<int>(r)] * 2.0 * p_.A[i] / cube;
        }
        int eq_row = 2 * static_cast<int>(p_.pinned.size()) +
                     static_cast<int>(p_.xflush.size());
        for (auto [i, j] : p_.yflush) {
            (void)j;
            double cube = u[i] * u[i] * u[i];
            Hm(i, i) += nu[eq_row] * 2.0 * p_.A[i] / cube;
            ++eq_row;
        }
        for (const auto& [pair, wgt] : p_.gpairs) {
            add_smooth_hess(u, pair.first, pair.second, wgt, Hm);
        }
        return Hm;
    }

    VectorXd start() const {
        VectorXd u(lay_.n3);
        for (int i = 0; i < n_; ++i) {
            double w0 = std::sqrt(p_.A[i]);
            if (p_.zfix[i] == 1) {
                w0 *= 1.02;
            } else if (p_.zfix[i] == 0) {
                w0 *= 0.98;
            }
            // Keep the start interior to the box rows; the upper cap wins
            // when the two collide (near-exact-fit instances).
            w0 = std::min(std::max(w0, p_.A[i] / p_.H * 1.05), p_.W * 0.95);
            u[i] = w0;
            u[n_ + i] = lay_.skip_sign[i] ? 0.0 : 0.02 * p_.W;
            u[2 * n_ + i] = lay_.skip_sign[i] ? 0.0 : 0.02 * p_.H;
        }
        return u;
    }

    double smoothing_overshoot() const {
        double total = 0.0;
        for (const auto& [pair, wgt] : p_.gpairs) {
            (void)pair;
            total += wgt * p_.gamma_sigma;
        }
        return total;
    }

private:
    double smooth_dist(const VectorXd& u, int i, int j) const {
        double dx = u[n_ + i] - u[n_ + j];
        double dy = u[2 * n_ + i] - u[2 * n_ + j];
        double s = p_.gamma_sigma;
        return std::sqrt(dx * dx + dy * dy + s * s);
    }

    void add_smooth_grad(const VectorXd& u, int i, int j, double wgt,
                         VectorXd& g) const {
        double dx = u[n_ + i] - u[n_ + j];
        double dy = u[2 * n_ + i] - u[2 * n_ + j];
        double d = smooth_dist(u, i, j);
        double gx = wgt * dx / d;
        double gy = wgt * dy / d;
        g[n_ + i] += gx;
        g[n_ + j] -= gx;
        g[2 * n_ + i] += gy;
        g[2 * n_ + j] -= gy;
    }

    void add_smooth_hess(const VectorXd& u, int i, int j, double wgt,
                         MatrixXd& Hm) const {
        double dx = u[n_ + i] - u[n_ + j];
        double dy = u[2 * n_ + i] - u[2 * n_ + j];
        double d = smooth_dist(u, i, j);
        double d3 = d * d * d;
        // 2x2 block of the smoothed norm; positive semidefinite.
        double hxx = wgt * (1.0 / d - dx * dx / d3);
        double hyy = wgt * (1.0 / d - dy * dy / d3);
        double hxy = wgt * (-dx * dy / d3);
        int xi = n_ + i;
        int xj = n_ + j;
        int yi = 2 * n_ + i;
        int yj = 2 * n_ + j;
        Hm(xi, xi) += hxx;
        Hm(xj, xj) += hxx;
        Hm(xi, xj) -= hxx;
        Hm(xj, xi) -= hxx;
        Hm(yi, yi) += hyy;
        Hm(yj, yj) += hyy;
        Hm(yi, yj) -= hyy;
        Hm(yj, yi) -= hyy;
        Hm(xi, yi) += hxy;
        Hm(yi, xi) += hxy;
        Hm(xj, yj) += hxy;
        Hm(yj, xj) += hxy;
        Hm(xi, yj) -= hxy;
        Hm(yj, xi) -= hxy;
        Hm(xj, yi) -= hxy;
        Hm(yi, xj) -= hxy;
    }

    const ReducedProblem& p_;
    int n_ = 0;
    Assembled lay_;
    std::vector<int> row_of_ybox_;
};

}  // namespace

IpmResult solve_reduced(const ReducedProblem& p, double tol, int maxit) {
    System sys(p);
    const int n3 = sys.n3();
    const int m = sys.m();
    const int me = sys.me();
    const double D = std::max(p.W, p.H);

    VectorXd u = sys.start();
    VectorXd g0 = sys.g(u);
    VectorXd s(m);
    for (int k = 0; k < m; ++k) {
        s[k] = std::max(1e-2 * D, -g0[k] + 1e-2 * D);
    }
    VectorXd lam = VectorXd::Ones(m);
    VectorXd nu = VectorXd::Zero(me);

    int it = 0;
    double res = std::numeric_limits<double>::infinity();
    for (; it < maxit; ++it) {
        VectorXd gi = sys.g(u);
        MatrixXd J = sys.jac(u);
        VectorXd gr = sys.grad(u);
        VectorXd rd = gr + J.transpose() * lam;
        VectorXd re;
        MatrixXd E;
        if (me > 0) {
            E = sys.ejac(u);
            rd += E.transpose() * nu;
            re = sys.e(u);
        }
        VectorXd rp = gi + s;
        double mu = s.dot(lam) / m;
        res = std::max(rd.lpNorm<Eigen::Infinity>(), rp.lpNorm<Eigen::Infinity>());
        if (me > 0) {
            res = std::max(res, re.lpNorm<Eigen::Infinity>());
        }
        res = std::max(res, mu);
        if (res < tol) {
            break;
        }
        double sigma = res > 1e-6 ? 0.1 : 0.05;
        double mut = sigma * mu;
        VectorXd rc = (s.cwiseProduct(lam).array() - mut).matrix();

        MatrixXd H = sys.hess(u, lam, nu);
        VectorXd d_scale = lam.cwiseQuotient(s);
        MatrixXd M = H + J.transpose() * d_scale.asDiagonal() * J;
        VectorXd rhs =
            -(rd + J.transpose() * ((lam.cwiseProduct(rp) - rc).cwiseQuotient(s)));

        VectorXd du(n3);
        VectorXd dnu(me);
        double delta = 1e-12;
        bool solved = false;
        while (delta < 1e6) {
            if (me == 0) {
                MatrixXd Mr = M + delta * MatrixXd::Identity(n3, n3);
                Eigen::LLT<MatrixXd> llt(Mr);
                if (llt.info() == Eigen::Success) {
                    du = llt.solve(rhs);
                    if (du.allFinite()) {
                        solved = true;
                        break;
                    }
                }
            } else {
                MatrixXd K = MatrixXd::Zero(n3 + me, n3 + me);
                K.topLeftCorner(n3, n3) = M + delta * MatrixXd::Identity(n3, n3);
                K.topRightCorner(n3, me) = E.transpose();
                K.bottomLeftCorner(me, n3) = E;
                K.bottomRightCorner(me, me) = -delta * MatrixXd::Identity(me, me);
                VectorXd rhs_full(n3 + me);
                rhs_full.head(n3) = rhs;
                rhs_full.tail(me) = -re;
                Eigen::PartialPivLU<MatrixXd> lu(K);
                VectorXd step = lu.solve(rhs_full);
                if (step.allFinite()) {
                    du = step.head(n3);
                    dnu = step.tail(me);
                    solved = true;
                    break;
                }
            }
            delta *= 100.0;
        }
        if (!solved) {
            break;
        }

        VectorXd dlam =
            (lam.cwiseProduct(J * du + rp) - rc).cwiseQuotient(s);
        VectorXd ds = -(rc + s.cwiseProduct(dlam)).cwiseQuotient(lam);

        const double tau = 0.995;
        double alpha = 1.0;
        for (int k = 0; k < m; ++k) {
            if (ds[k] < 0.0) {
                alpha = std::min(alpha, -tau * s[k] / ds[k]);
            }
            if (dlam[k] < 0.0) {
                alpha = std::min(alpha, -tau * lam[k] / dlam[k]);
            }
        }
        for (int i = 0; i < p.n; ++i) {
            if (du[i] < 0.0) {
                alpha = std::min(alpha, -0.99 * u[i] / du[i]);
            }
        }
        u += alpha * du;
        s += alpha * ds;
        lam += alpha * dlam;
        if (me > 0) {
            nu += alpha * dnu;
        }
    }

    VectorXd gi = sys.g(u);
    MatrixXd J = sys.jac(u);
    VectorXd rd = sys.grad(u) + J.transpose() * lam;
    if (me > 0) {
        rd += sys.ejac(u).transpose() * nu;
    }
    IpmResult out;
    out.u = u;
    out.value = sys.f(u);
    double lag = out.value;
    for (int k = 0; k < m; ++k) {
        lag += std::max(lam[k], 0.0) * gi[k];
    }
    if (me > 0) {
        VectorXd re = sys.e(u);
        lag += nu.dot(re);
    }
    out.safe_bound = lag - rd.lpNorm<1>() * D - sys.smoothing_overshoot();
    out.bound_is_certified = p.yflush.empty();
    if (!out.bound_is_certified) {
        out.safe_bound = -std::numeric_limits<double>::infinity();
    }
    double rp_inf = (gi + s).lpNorm<Eigen::Infinity>();
    double comp = m > 0 ? s.dot(lam) / m : 0.0;
    out.kkt_residual = std::max({rp_inf, rd.lpNorm<Eigen::Infinity>(), comp});
    if (me > 0) {
        out.kkt_residual = std::max(out.kkt_residual,
                                    sys.e(u).lpNorm<Eigen::Infinity>());
    }
    out.converged = out.kkt_residual < 1e-7;
    out.iters = it;
    return out;
}

}  // namespace treemaplab::opt
