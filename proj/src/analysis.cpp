#include "liouville/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liouville {

namespace {

struct NormalProbe {
    double s;
    Vec2 q, n;
    double kappa;
};

NormalProbe make_probe(const Domain2D& dom, double s) {
    if (dom.kind() == Domain2D::Kind::Strip)
        return {s, {0.0, s}, {1.0, 0.0}, 0.0};
    if (dom.kind() == Domain2D::Kind::Parametric) {
        const Curve& c = dom.curve();
        return {s, c.point(s), c.inward_normal(s), c.curvature(s)};
    }
    throw std::invalid_argument("probes need a parametric or strip domain");
}

void default_window(const Grid& g, double& d_min, double& d_max) {
    if (d_min < 0) d_min = 2 * g.h;
    if (d_max < 0) d_max = std::min(0.1, g.domain->kind() == Domain2D::Kind::Strip
                                             ? 0.1
                                             : g.domain->reach() / 4);
    if (!(d_max > d_min)) throw std::invalid_argument("probe window is empty");
}

/// samples (d, value) along the inward normal at spacing h/2
std::vector<std::pair<double, double>> normal_samples(const GridField& f, const NormalProbe& pr,
                                                      double d_min, double d_max) {
    const double step = f.grid->h / 2;
    std::vector<std::pair<double, double>> out;
    for (double d = d_min; d <= d_max + 1e-12; d += step) {
        const Vec2 p = pr.q + pr.n * d;
        if (const auto v = interpolate(f, p); v && std::isfinite(*v)) out.push_back({d, *v});
    }
    return out;
}

/// least squares for y ~ sum_k c_k x^{p_k}, tiny dense normal equations
std::vector<double> poly_lsq(const std::vector<std::pair<double, double>>& samples,
                             const std::vector<int>& powers) {
    const size_t m = powers.size();
    std::vector<double> A(m * m, 0.0), b(m, 0.0);
    for (const auto& [x, y] : samples)
        for (size_t r = 0; r < m; ++r) {
            b[r] += y * std::pow(x, powers[r]);
            for (size_t c = 0; c < m; ++c) A[r * m + c] += std::pow(x, powers[r] + powers[c]);
        }
    // Gaussian elimination with partial pivoting
    std::vector<double> sol = b;
    for (size_t k = 0; k < m; ++k) {
        size_t piv = k;
        for (size_t r = k + 1; r < m; ++r)
            if (std::abs(A[r * m + k]) > std::abs(A[piv * m + k])) piv = r;
        if (piv != k) {
            for (size_t c = 0; c < m; ++c) std::swap(A[k * m + c], A[piv * m + c]);
            std::swap(sol[k], sol[piv]);
        }
        if (A[k * m + k] == 0) throw std::runtime_error("probe fit: singular normal equations");
        for (size_t r = k + 1; r < m; ++r) {
            const double f = A[r * m + k] / A[k * m + k];
            for (size_t c = k; c < m; ++c) A[r * m + c] -= f * A[k * m + c];
            sol[r] -= f * sol[k];
        }
    }
    for (size_t k = m; k-- > 0;) {
        for (size_t c = k + 1; c < m; ++c) sol[k] -= A[k * m + c] * sol[c];
        sol[k] /= A[k * m + k];
    }
    return sol;
}

}  // namespace

ExpansionFit fit_expansion(const GridField& v, const std::vector<double>& probe_params,
                           double d_min, double d_max, bool cubic) {
    const Grid& g = *v.grid;
    default_window(g, d_min, d_max);
    ExpansionFit fit;
    fit.d_min = d_min;
    fit.d_max = d_max;
    fit.cubic = cubic;
    for (double s : probe_params) {
        const NormalProbe pr = make_probe(*g.domain, s);
        const auto samples = normal_samples(v, pr, d_min, d_max);
        if (samples.size() < 6)
            throw std::invalid_argument("fit_expansion: fewer than 6 samples in the window");
        const std::vector<int> powers = cubic ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
        const auto c = poly_lsq(samples, powers);
        ProbeFit p;
        p.s = s;
        p.q = pr.q;
        p.kappa = pr.kappa;
        p.c1 = c[0];
        p.c2 = c[1];
        p.c3 = cubic ? c[2] : 0.0;
        double ss = 0.0;
        for (const auto& [d, val] : samples) {
            const double model = p.c1 * d + p.c2 * d * d + p.c3 * d * d * d;
            ss += (val - model) * (val - model);
        }
        p.rms_residual = std::sqrt(ss / samples.size());
        p.samples = static_cast<int>(samples.size());
        // remainder exponent: |v - 2d + kappa d^2| ~ C d^{2+alpha}
        std::vector<std::pair<double, double>> lg;
        for (const auto& [d, val] : samples) {
            const double rem = std::abs(val - 2 * d + pr.kappa * d * d);
            if (rem > 1e-14) lg.push_back({std::log(d), std::log(rem)});
        }
        if (lg.size() >= 4) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (const auto& [x, y] : lg) sx += x, sy += y, sxx += x * x, sxy += x * y;
            const double n = static_cast<double>(lg.size());
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            p.alpha_fit = slope - 2.0;
        }
        fit.probes.push_back(p);
    }
    return fit;
}

std::vector<GradientProbe> gradient_limit(const GridField& v,
                                          const std::vector<double>& probe_params, double d_min,
                                          double d_max) {
    const Grid& g = *v.grid;
    default_window(g, d_min, d_max);
    GridField vx, vy;
    gradient(v, &vx, &vy);
    std::vector<GradientProbe> out;
    for (double s : probe_params) {
        const NormalProbe pr = make_probe(*g.domain, s);
        const auto sx = normal_samples(vx, pr, d_min, d_max);
        const auto sy = normal_samples(vy, pr, d_min, d_max);
        std::vector<std::pair<double, double>> mag;
        for (size_t k = 0; k < std::min(sx.size(), sy.size()); ++k)
            if (sx[k].first == sy[k].first)
                mag.push_back({sx[k].first, std::hypot(sx[k].second, sy[k].second)});
        if (mag.size() < 4)
            throw std::invalid_argument("gradient_limit: fewer than 4 samples in the window");
        const auto c = poly_lsq(mag, {0, 1});
        out.push_back({s, pr.q, c[0], c[1], static_cast<int>(mag.size())});
    }
    return out;
}

std::vector<LogRatioProbe> log_ratio_check(const GridField& u,
                                           const std::vector<double>& probe_params, double d_min,
                                           double d_max) {
    const Grid& g = *u.grid;
    if (d_min < 0) d_min = std::max(2 * g.h, 0.01);
    if (d_max < 0) d_max = 0.2;
    if (d_max >= 0.5) throw std::invalid_argument("log_ratio_check: window touches d = 1/2");
    if (!(d_max > d_min)) throw std::invalid_argument("log_ratio_check: window is empty");
    std::vector<LogRatioProbe> out;
    for (double s : probe_params) {
        const NormalProbe pr = make_probe(*g.domain, s);
        const auto samples = normal_samples(u, pr, d_min, d_max);
        LogRatioProbe lp;
        lp.s = s;
        for (const auto& [d, uv] : samples)
            lp.sup_ratio = std::max(lp.sup_ratio, std::abs(uv / std::log(2 * d) + 1.0) / d);
        lp.samples = static_cast<int>(samples.size());
        out.push_back(lp);
    }
    return out;
}

double ConvergenceTable::min_order() const {
    double m = std::numeric_limits<double>::infinity();
    for (double o : observed_orders) m = std::min(m, o);
    return m;
}

ConvergenceTable convergence_study(const std::vector<double>& hs,
                                   const std::function<double(double)>& error_of_h) {
    if (hs.size() < 3) throw std::invalid_argument("convergence_study: need at least 3 grids");
    ConvergenceTable t;
    for (double h : hs) t.rows.push_back({h, error_of_h(h)});
    for (size_t k = 0; k + 1 < t.rows.size(); ++k) {
        const double ratio = t.rows[k].error / t.rows[k + 1].error;
        const double hr = t.rows[k].h / t.rows[k + 1].h;
        t.observed_orders.push_back(std::log(ratio) / std::log(hr));
    }
    return t;
}

IdentityReport hyperbolic_identity(const GridField& v, double d_min) {
    const Grid& g = *v.grid;
    if (d_min < 0) d_min = 10 * g.h;
    GridField vx, vy;
    gradient(v, &vx, &vy);
    const GridField lap = laplacian5(v);
    IdentityReport rep;
    for (size_t k = 0; k < g.size(); ++k) {
        if (!g.mask[k] || g.dist[k] <= d_min) continue;
        if (!std::isfinite(lap.values[k]) || !std::isfinite(vx.values[k])) continue;
        const double grad2 = vx.values[k] * vx.values[k] + vy.values[k] * vy.values[k];
        const double r = std::abs(v.values[k] * lap.values[k] - grad2 + 4.0);
        rep.max_residual = std::max(rep.max_residual, r);
        rep.max_weighted_residual = std::max(rep.max_weighted_residual, g.dist[k] * r);
        ++rep.nodes;
    }
    return rep;
}

}  // namespace liouville
