#pragma once

#include <functional>
#include <vector>

#include "liouville/grid.hpp"

namespace liouville {

/// One boundary probe of the near-boundary expansion v ~ c1 d + c2 d^2 (+ c3 d^3).
struct ProbeFit {
    double s = 0.0;  // boundary parameter (y-coordinate for strips)
    Vec2 q;          // boundary point
    double kappa = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double rms_residual = 0.0;
    double alpha_fit = 0.0;  // exponent in |v - 2d + kappa d^2| ~ C d^{2+alpha}
    int samples = 0;
};

struct ExpansionFit {
    double d_min = 0.0, d_max = 0.0;
    bool cubic = false;
    std::vector<ProbeFit> probes;
};

/// Least-squares fit of v along the inward normal of each probe, sampled by
/// tensor-cubic interpolation at spacing h/2 inside [d_min, d_max].
/// Defaults (negative arguments): d_min = 2h, d_max = min(0.1, reach/4).
/// Throws std::invalid_argument when a probe has fewer than 6 usable samples.
ExpansionFit fit_expansion(const GridField& v, const std::vector<double>& probe_params,
                           double d_min = -1.0, double d_max = -1.0, bool cubic = true);

struct GradientProbe {
    double s = 0.0;
    Vec2 q;
    double limit = 0.0;  // linear-fit intercept of |grad v| at d = 0
    double slope = 0.0;
    int samples = 0;
};

/// Extrapolation of |grad v| to the boundary along each probe normal.
std::vector<GradientProbe> gradient_limit(const GridField& v,
                                          const std::vector<double>& probe_params,
                                          double d_min = -1.0, double d_max = -1.0);

struct LogRatioProbe {
    double s = 0.0;
    double sup_ratio = 0.0;  // sup over the window of |u/ln(2d) + 1| / d
    int samples = 0;
};

/// Boundary-law check for u: |u/ln(2d) + 1| / d over [d_min, d_max].
/// Defaults keep 2d <= 0.4; throws std::invalid_argument if d_max >= 0.5.
std::vector<LogRatioProbe> log_ratio_check(const GridField& u,
                                           const std::vector<double>& probe_params,
                                           double d_min = -1.0, double d_max = -1.0);

struct ConvergenceRow {
    double h = 0.0;
    double error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<double> observed_orders;  // log2(e_i / e_{i+1})
    double min_order() const;
};

/// Runs error_of_h for each h (at least 3, decreasing) and tabulates the
/// observed orders.
ConvergenceTable convergence_study(const std::vector<double>& hs,
                                   const std::function<double(double)>& error_of_h);

struct IdentityReport {
    double max_residual = 0.0;           // max |v lap v - |grad v|^2 + 4|
    double max_weighted_residual = 0.0;  // max d * |...|
    int nodes = 0;
};

/// Discrete check of v lap v = |grad v|^2 - 4 on the window d > d_min
/// (default 10 h).
IdentityReport hyperbolic_identity(const GridField& v, double d_min = -1.0);

}  // namespace liouville
