#include "liouville/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liouville {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shortley-Weller coefficients for one axis with leg fractions a (toward the
// lower index) and b (toward the higher index):
//   f'' ~ 2/(h^2) [ f_lo/(a(a+b)) - f_c/(ab) + f_hi/(b(a+b)) ]
struct Stencil {
    // per interior unknown: flat grid index, unknown indices of neighbors
    // (-1 if boundary), leg fractions, boundary values
    std::vector<size_t> node;
    std::vector<std::array<int32_t, 4>> nbr;   // E, W, N, S unknown index or -1
    std::vector<std::array<double, 4>> frac;   // leg fractions
    std::vector<std::array<double, 4>> bval;   // boundary values where nbr = -1
    std::vector<int32_t> unknown_of_node;      // grid index -> unknown index or -1
};

Stencil build_stencil(const DirichletProblem& problem) {
    const Grid& g = *problem.grid;
    Stencil st;
    st.unknown_of_node.assign(g.size(), -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const size_t k = g.idx(i, j);
            if (!g.mask[k]) continue;
            st.unknown_of_node[k] = static_cast<int32_t>(st.node.size());
            st.node.push_back(k);
        }
    static const int di[4] = {1, -1, 0, 0};
    static const int dj[4] = {0, 0, 1, -1};
    const std::vector<double>& bvals = problem.boundary_values();
    st.nbr.resize(st.node.size());
    st.frac.resize(st.node.size());
    st.bval.resize(st.node.size());
    for (size_t r = 0; r < st.node.size(); ++r) {
        const size_t k = st.node[r];
        const int i = static_cast<int>(k % g.nx);
        const int j = static_cast<int>(k / g.nx);
        for (int dir = 0; dir < 4; ++dir) {
            const int32_t legid = g.leg[k][dir];
            if (legid >= 0) {
                st.nbr[r][dir] = -1;
                st.frac[r][dir] = g.cut_legs[legid].frac;
                st.bval[r][dir] = bvals[legid];
            } else {
                const size_t kn = g.idx(i + di[dir], j + dj[dir]);
                st.nbr[r][dir] = st.unknown_of_node[kn];
                st.frac[r][dir] = 1.0;
                st.bval[r][dir] = 0.0;
            }
        }
    }
    return st;
}

// -Delta_h u at each unknown, with boundary values folded in.
void apply_neg_laplacian(const Stencil& st, double h, const std::vector<double>& u,
                         std::vector<double>& out) {
    const size_t n = st.node.size();
    out.resize(n);
    const double h2 = h * h;
    for (size_t r = 0; r < n; ++r) {
        const double aE = st.frac[r][0], aW = st.frac[r][1];
        const double aN = st.frac[r][2], aS = st.frac[r][3];
        auto nb = [&](int dir) {
            return st.nbr[r][dir] >= 0 ? u[st.nbr[r][dir]] : st.bval[r][dir];
        };
        const double lap = 2.0 / h2 *
                           (nb(0) / (aE * (aE + aW)) + nb(1) / (aW * (aE + aW)) +
                            nb(2) / (aN * (aN + aS)) + nb(3) / (aS * (aN + aS)) -
                            u[r] * (1.0 / (aE * aW) + 1.0 / (aN * aS)));
        out[r] = -lap;
    }
}

CsrMatrix jacobian(const Stencil& st, double h, const std::vector<double>& u) {
    const int n = static_cast<int>(st.node.size());
    CsrMatrix A;
    A.n = n;
    A.row_ptr.assign(n + 1, 0);
    const double h2 = h * h;
    for (int r = 0; r < n; ++r) {
        int nnz = 1;
        for (int dir = 0; dir < 4; ++dir)
            if (st.nbr[r][dir] >= 0) ++nnz;
        A.row_ptr[r + 1] = A.row_ptr[r] + nnz;
    }
    A.col.resize(A.row_ptr[n]);
    A.val.resize(A.row_ptr[n]);
    for (int r = 0; r < n; ++r) {
        const double aE = st.frac[r][0], aW = st.frac[r][1];
        const double aN = st.frac[r][2], aS = st.frac[r][3];
        int32_t pos = A.row_ptr[r];
        // diagonal first, then neighbors in fixed direction order
        A.col[pos] = r;
        A.val[pos] = 2.0 / h2 * (1.0 / (aE * aW) + 1.0 / (aN * aS)) + 8.0 * std::exp(2.0 * u[r]);
        ++pos;
        const double cf[4] = {2.0 / (h2 * aE * (aE + aW)), 2.0 / (h2 * aW * (aE + aW)),
                              2.0 / (h2 * aN * (aN + aS)), 2.0 / (h2 * aS * (aN + aS))};
        for (int dir = 0; dir < 4; ++dir) {
            if (st.nbr[r][dir] < 0) continue;
            A.col[pos] = st.nbr[r][dir];
            A.val[pos] = -cf[dir];
            ++pos;
        }
    }
    return A;
}

void nonlinear_residual(const Stencil& st, double h, const std::vector<double>& u,
                        std::vector<double>& out) {
    apply_neg_laplacian(st, h, u, out);
    for (size_t r = 0; r < u.size(); ++r) {
        if (2.0 * u[r] > 700.0)
            throw std::range_error("residual: 2u > 700, unclipped blow-up data");
        out[r] += 4.0 * std::exp(2.0 * u[r]);
    }
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

DirichletProblem::DirichletProblem(std::shared_ptr<const Grid> g,
                                   std::function<double(const Grid::CutLeg&)> bd)
    : grid(std::move(g)), boundary_data(std::move(bd)) {
    bvals_.reserve(grid->cut_legs.size());
    for (const Grid::CutLeg& leg : grid->cut_legs) {
        const double v = boundary_data(leg);
        if (!std::isfinite(v))
            throw std::invalid_argument("boundary data not finite at a cut point");
        bvals_.push_back(v);
    }
}

GridField residual(const DirichletProblem& problem, const GridField& u) {
    const Stencil st = build_stencil(problem);
    std::vector<double> uv(st.node.size());
    for (size_t r = 0; r < st.node.size(); ++r) {
        uv[r] = u.values[st.node[r]];
        if (!std::isfinite(uv[r])) throw std::invalid_argument("residual: u undefined at an interior node");
    }
    std::vector<double> rv;
    nonlinear_residual(st, problem.grid->h, uv, rv);
    GridField out(problem.grid);
    for (size_t r = 0; r < st.node.size(); ++r) out.values[st.node[r]] = rv[r];
    return out;
}

std::pair<GridField, SolveReport> newton_solve(const DirichletProblem& problem,
                                               const GridField& u0, const NewtonOptions& opts) {
    const Stencil st = build_stencil(problem);
    const double h = problem.grid->h;
    const size_t n = st.node.size();
    std::vector<double> u(n);
    for (size_t r = 0; r < n; ++r) {
        u[r] = u0.values[st.node[r]];
        if (!std::isfinite(u[r])) throw std::invalid_argument("newton_solve: u0 not finite");
    }

    SolveReport rep;
    bool stagnated_converged = false;
    std::vector<double> F, Ftrial, rhs, delta(n, 0.0), utrial(n);
    nonlinear_residual(st, h, u, F);
    double fnorm = sup_norm(F);
    rep.residual_norms.push_back(fnorm);

    for (int it = 0; it < opts.max_iters; ++it) {
        if (fnorm <= opts.tol) {
            rep.converged = true;
            break;
        }
        const CsrMatrix J = jacobian(st, h, u);
        rhs.resize(n);
        for (size_t r = 0; r < n; ++r) rhs[r] = -F[r];
        std::fill(delta.begin(), delta.end(), 0.0);
        KrylovOptions kopts;
        kopts.rel_tol = opts.linear_rel_tol;
        const KrylovResult kr = solve_spd_like(J, rhs, delta, kopts);
        rep.linear_iters.push_back(kr.iterations);
        rep.linear_method.push_back(kr.method);
        if (!kr.converged) {
            rep.failure = "linear solver breakdown";
            break;
        }
        // backtracking line search on the residual sup norm
        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= 6; ++bt, lambda *= 0.5) {
            for (size_t r = 0; r < n; ++r) utrial[r] = u[r] + lambda * delta[r];
            bool ok = true;
            double fn = 0.0;
            try {
                nonlinear_residual(st, h, utrial, Ftrial);
                fn = sup_norm(Ftrial);
            } catch (const std::range_error&) {
                ok = false;
            }
            if (ok && fn < fnorm) {
                u.swap(utrial);
                F.swap(Ftrial);
                fnorm = fn;
                rep.damping_used.push_back(lambda);
                accepted = true;
                break;
            }
        }
        ++rep.iterations;
        rep.residual_norms.push_back(fnorm);
        if (!accepted) {
            // the evaluated residual has a rounding floor ~ eps/(h^2 frac)
            // at cut nodes, which can sit above the tolerance on fine grids;
            // if the Newton step is already at machine precision relative to
            // the iterate, the solve has converged to that floor
            if (sup_norm(delta) <= 1e-9 * (1.0 + sup_norm(u)))
                stagnated_converged = true;
            else
                rep.failure = "line search failed";
            break;
        }
    }
    if (fnorm <= opts.tol || stagnated_converged) rep.converged = true;

    GridField out(problem.grid);
    for (size_t r = 0; r < n; ++r) out.values[st.node[r]] = u[r];
    return {std::move(out), std::move(rep)};
}

GridField default_initial_guess(const std::shared_ptr<const Grid>& grid, double cap) {
    GridField u0(grid);
    for (size_t k = 0; k < grid->size(); ++k) {
        if (!grid->mask[k]) continue;
        const double d = std::max(grid->dist[k], grid->h);
        u0.values[k] = std::min(-std::log(2.0 * d), cap);
    }
    return u0;
}

std::vector<std::pair<GridField, SolveReport>> maximal_sequence(
    std::shared_ptr<const Domain2D> domain, const std::vector<double>& n_values, double h_grid,
    const NewtonOptions& opts) {
    for (size_t i = 1; i < n_values.size(); ++i)
        if (!(n_values[i] > n_values[i - 1]))
            throw std::invalid_argument("maximal_sequence: n_values must be increasing");
    auto grid = std::make_shared<const Grid>(build_grid(domain, h_grid, 0.0));
    std::vector<std::pair<GridField, SolveReport>> out;
    for (double nval : n_values) {
        DirichletProblem prob(grid, [nval](const Grid::CutLeg&) { return nval; });
        GridField u0 = default_initial_guess(grid, nval);
        out.push_back(newton_solve(prob, u0, opts));
    }
    return out;
}

std::pair<GridField, SolveReport> trimmed_solve(std::shared_ptr<const Domain2D> domain,
                                                double h_trim, int order, double h_grid,
                                                const NewtonOptions& opts,
                                                const GridField* warm_start) {
    if (!(h_trim > 0) || h_trim >= domain->reach() / 2)
        throw std::invalid_argument("trimmed_solve: need h_trim in (0, reach/2)");
    if (order != 1 && order != 2) throw std::invalid_argument("trimmed_solve: order must be 1 or 2");
    auto grid = std::make_shared<const Grid>(build_grid(domain, h_grid, h_trim));
    DirichletProblem prob(grid, [order, h_trim](const Grid::CutLeg& leg) {
        const double d = h_trim;  // cut points lie on the level set {d = h_trim}
        double v = 2 * d;
        if (order == 2) v = 2 * d - leg.kappa_q * d * d;
        if (!(v > 0))
            throw std::invalid_argument("trimmed_solve: 2d - kappa d^2 <= 0 (h_trim too large)");
        return -std::log(v);
    });
    GridField u0 = default_initial_guess(grid);
    if (warm_start) {
        for (int j = 0; j < grid->ny; ++j)
            for (int i = 0; i < grid->nx; ++i) {
                const size_t k = grid->idx(i, j);
                if (!grid->mask[k]) continue;
                if (const std::optional<double> w = interpolate(*warm_start, grid->node(i, j)))
                    u0.values[k] = *w;
            }
    }
    return newton_solve(prob, u0, opts);
}

MonotonicityReport domain_monotonicity(const GridField& u_outer, const GridField& u_inner) {
    MonotonicityReport rep;
    const Grid& gi = *u_inner.grid;
    for (int j = 0; j < gi.ny; ++j)
        for (int i = 0; i < gi.nx; ++i) {
            const size_t k = gi.idx(i, j);
            if (!gi.mask[k] || !std::isfinite(u_inner.values[k])) continue;
            const std::optional<double> uo = interpolate(u_outer, gi.node(i, j));
            if (!uo) continue;
            ++rep.compared_nodes;
            rep.max_violation = std::max(rep.max_violation, *uo - u_inner.values[k]);
        }
    return rep;
}

}  // namespace liouville
