#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liouville/grid.hpp"
#include "liouville/linalg.hpp"

namespace liouville {

/// Dirichlet problem for -Delta u + 4 e^{2u} = 0 on the interior mask of a
/// grid, with boundary data evaluated at the Shortley-Weller cut points.
struct DirichletProblem {
    std::shared_ptr<const Grid> grid;
    // boundary value at a cut point; the CutLeg carries the nearest boundary
    // parameter and curvature
    std::function<double(const Grid::CutLeg&)> boundary_data;

    DirichletProblem(std::shared_ptr<const Grid> g, std::function<double(const Grid::CutLeg&)> bd);

    const std::vector<double>& boundary_values() const { return bvals_; }

private:
    std::vector<double> bvals_;  // one per cut leg
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_norms;  // sup norms, including the initial one
    std::vector<int> linear_iters;
    std::vector<double> damping_used;
    std::vector<std::string> linear_method;
    bool converged = false;
    std::string failure;
};

struct NewtonOptions {
    double tol = 1e-10;        // sup-norm residual tolerance
    int max_iters = 50;
    double linear_rel_tol = 1e-12;
};

/// Nodewise -Delta_h u + 4 e^{2u} with the Shortley-Weller Laplacian; values
/// only at interior nodes.  Throws std::range_error if 2u > 700 anywhere.
GridField residual(const DirichletProblem& problem, const GridField& u);

/// Damped Newton iteration; the Jacobian -Delta_h + 8 e^{2u} is solved by
/// preconditioned CG with a BiCGStab fallback.
std::pair<GridField, SolveReport> newton_solve(const DirichletProblem& problem,
                                               const GridField& u0,
                                               const NewtonOptions& opts = {});

/// Default initial guess -ln(2 max(d, h)) clipped at cap.
GridField default_initial_guess(const std::shared_ptr<const Grid>& grid, double cap = 1e18);

/// Solutions with constant boundary data n for each n in n_values (increasing).
std::vector<std::pair<GridField, SolveReport>> maximal_sequence(
    std::shared_ptr<const Domain2D> domain, const std::vector<double>& n_values, double h_grid,
    const NewtonOptions& opts = {});

/// Dirichlet solve on {d > h_trim} with expansion boundary data:
/// order 1: u = -ln(2d); order 2: u = -ln(2d - kappa(q) d^2).
/// warm_start (optional): a solution on a coarser grid of the same problem,
/// interpolated onto the new grid as the initial Newton iterate.
std::pair<GridField, SolveReport> trimmed_solve(std::shared_ptr<const Domain2D> domain,
                                                double h_trim, int order, double h_grid,
                                                const NewtonOptions& opts = {},
                                                const GridField* warm_start = nullptr);

struct MonotonicityReport {
    double max_violation = 0.0;  // max over shared nodes of (u_outer - u_inner)
    int compared_nodes = 0;
    bool ok(double tol) const { return max_violation <= tol; }
};

/// Checks u_outer <= u_inner on the inner grid (interpolating u_outer).
MonotonicityReport domain_monotonicity(const GridField& u_outer, const GridField& u_inner);

}  // namespace liouville
