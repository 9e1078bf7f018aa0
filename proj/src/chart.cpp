#include "liouville/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

CollarChart::CollarChart(std::shared_ptr<const Domain2D> domain, double s0, double theta, int nT,
                         int nY)
    : domain_(std::move(domain)), s0_(s0), theta_(theta), nT_(nT), nY_(nY) {
    if (!(theta > 0)) throw std::invalid_argument("collar chart: theta must be positive");
    if (domain_->kind() == Domain2D::Kind::Strip) {
        flat_ = true;
        P_ = {0.0, s0};
        e1_ = {1.0, 0.0};
        e2_ = {0.0, 1.0};
    } else if (domain_->kind() == Domain2D::Kind::Parametric) {
        if (theta >= domain_->reach())
            throw std::invalid_argument("collar chart: theta must be below the reach");
        const Curve& c = domain_->curve();
        P_ = c.point(s0);
        e1_ = c.inward_normal(s0);
        e2_ = {-e1_.y, e1_.x};
    } else {
        throw std::invalid_argument("collar chart: unsupported domain kind");
    }
    sample_fields();
}

CollarChart CollarChart::flat(std::shared_ptr<const Domain2D> strip_domain, double y0, double theta,
                              int nT, int nY) {
    return CollarChart(std::move(strip_domain), y0, theta, nT, nY);
}

double CollarChart::solve_foot(double T, double Y, double s_guess) const {
    // Find s with (gamma(s) + T n_in(s) - P) . e2 = Y.
    const Curve& c = domain_->curve();
    double s = s_guess;
    for (int it = 0; it < 80; ++it) {
        const Vec2 g = c.point(s);
        const Vec2 g1 = c.deriv(s);
        const Vec2 g2 = c.deriv2(s);
        const double sp = g1.norm();
        const Vec2 that{g1.x / sp, g1.y / sp};
        const Vec2 n{-that.y, that.x};
        const Vec2 p{g.x + T * n.x - P_.x, g.y + T * n.y - P_.y};
        const double f = p.dot(e2_) - Y;
        // d(n)/ds = rot90(d(that)/ds), d(that)/ds = (g2 - that (that.g2)) / sp
        const Vec2 tp{(g2.x - that.x * that.dot(g2)) / sp, (g2.y - that.y * that.dot(g2)) / sp};
        const Vec2 np{-tp.y, tp.x};
        const double fp = Vec2{g1.x + T * np.x, g1.y + T * np.y}.dot(e2_);
        if (std::abs(fp) < 1e-14) break;
        const double step = -f / fp;
        s += step;
        if (std::abs(step) < 1e-15) break;
    }
    return s;
}

Vec2 CollarChart::to_world(double T, double Y) const {
    if (flat_) return {T, P_.y + Y};
    const Curve& c = domain_->curve();
    const double s = solve_foot(T, Y, s0_);
    const Vec2 n = c.inward_normal(s);
    const Vec2 g = c.point(s);
    return {g.x + T * n.x, g.y + T * n.y};
}

std::pair<double, double> CollarChart::to_chart(Vec2 p) const {
    if (flat_) return {p.x, p.y - P_.y};
    const Projection pr = domain_->project(p);
    const Vec2 rel = p - P_;
    return {pr.d, rel.dot(e2_)};
}

void CollarChart::sample_fields() {
    const size_t n = static_cast<size_t>(nT_ + 1) * (nY_ + 1);
    dy_.assign(n, 0.0);
    lap_d_.assign(n, 0.0);
    kappa_.assign(nY_ + 1, 0.0);
    foot_s_.assign(n, s0_);
    if (flat_) return;

    const Curve& c = domain_->curve();
    const double jac_min = 0.05;
    for (int j = 0; j <= nY_; ++j) {
        const double Y = Y_of(j);
        double s_prev = (j == 0) ? s0_ : foot_s_[index(0, j - 1)];
        for (int i = 0; i <= nT_; ++i) {
            const double T = T_of(i);
            const double s = solve_foot(T, Y, (i == 0) ? s_prev : foot_s_[index(i - 1, j)]);
            foot_s_[index(i, j)] = s;
            const Vec2 nin = c.inward_normal(s);
            const double kap = c.curvature(s);
            const double den = 1.0 - T * kap;
            if (den <= 0.05)
                throw std::invalid_argument("collar chart: 1 - T kappa degenerate, theta too large");
            // grad d is constant along each normal segment
            dy_[index(i, j)] = nin.dot(e2_);
            lap_d_[index(i, j)] = -kap / den;
            const double jac = nin.dot(e1_);
            if (jac < jac_min)
                throw std::invalid_argument("collar chart: Jacobian d_x degenerate, theta too large");
            if (i == 0) kappa_[j] = kap;
        }
    }
}

}  // namespace liouville
