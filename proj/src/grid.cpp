#include "liouville/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liouville {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

int Grid::interior_count() const {
    int n = 0;
    for (uint8_t m : mask) n += m;
    return n;
}

GridField::GridField(std::shared_ptr<const Grid> g) : grid(std::move(g)) {
    values.assign(grid->size(), kNaN);
}

void GridField::fill(const std::function<double(Vec2)>& f, bool everywhere) {
    for (int j = 0; j < grid->ny; ++j)
        for (int i = 0; i < grid->nx; ++i) {
            const size_t k = grid->idx(i, j);
            if (everywhere || grid->mask[k]) values[k] = f(grid->node(i, j));
        }
}

namespace {

// Crossing of {d = trim} along the leg from an interior node in direction
// dir, as a fraction of h.  Bisection on the exact signed distance.
double leg_fraction(const Domain2D& dom, Vec2 p0, Vec2 dir, double h, double trim) {
    auto phi = [&](double t) { return dom.project({p0.x + t * h * dir.x, p0.y + t * h * dir.y}).d - trim; };
    double lo = 0.0, hi = 1.0;
    double flo = phi(0.0);
    if (flo <= 0) return 1e-300;  // caller guards; node essentially on the level set
    if (phi(1.0) > 0) return 1.0;  // neighbor outside mask for a different reason
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Grid build_grid(std::shared_ptr<const Domain2D> domain, double h, double trim, double margin) {
    if (h <= 0) throw std::invalid_argument("build_grid: h must be positive");
    if (trim < 0) throw std::invalid_argument("build_grid: trim must be nonnegative");
    Grid g;
    g.domain = domain;
    g.h = h;
    g.trim = trim;

    const bool strip = domain->kind() == Domain2D::Kind::Strip;
    const BBox bb = domain->bbox();
    if (strip) {
        // align grid lines with the rectangle edges
        g.origin = bb.lo;
        g.nx = static_cast<int>(std::lround((bb.hi.x - bb.lo.x) / h)) + 1;
        g.ny = static_cast<int>(std::lround((bb.hi.y - bb.lo.y) / h)) + 1;
    } else {
        if (margin <= 0) margin = 2 * h;
        g.origin = {bb.lo.x - margin, bb.lo.y - margin};
        g.nx = static_cast<int>(std::ceil((bb.hi.x - bb.lo.x + 2 * margin) / h)) + 1;
        g.ny = static_cast<int>(std::ceil((bb.hi.y - bb.lo.y + 2 * margin) / h)) + 1;
    }

    const size_t n = g.size();
    g.mask.assign(n, 0);
    g.dist.assign(n, kNaN);
    g.dist_grad.assign(n, Vec2{});
    g.s_near.assign(n, 0.0);
    g.kappa_near.assign(n, 0.0);
    g.leg.assign(n, {-1, -1, -1, -1});

    const double eps = 1e-12;
    const double xcut = strip ? std::max(bb.lo.x, trim) : 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const size_t k = g.idx(i, j);
            const Vec2 p = g.node(i, j);
            const Projection pr = domain->project(p);
            g.dist[k] = pr.d;
            g.s_near[k] = pr.s;
            if (domain->kind() == Domain2D::Kind::Parametric)
                g.kappa_near[k] = domain->curvature_at(pr.s);
            else if (domain->kind() == Domain2D::Kind::Annulus)
                g.kappa_near[k] = ((p - domain->center()).norm() - domain->annulus_r0() < pr.d + 1e-12)
                                      ? -domain->annulus_r0()
                                      : domain->annulus_r0();
            if (pr.d > eps) {
                const double dn = pr.d;
                Vec2 gd = (dn > 1e-10) ? (p - pr.q) * (1.0 / dn) : Vec2{};
                if (strip) gd = {1.0, 0.0};
                g.dist_grad[k] = gd;
            }
            bool inside;
            if (strip)
                inside = p.x > xcut + eps && p.x < bb.hi.x - eps && p.y > bb.lo.y + eps &&
                         p.y < bb.hi.y - eps;
            else
                inside = pr.d > trim + eps;
            g.mask[k] = inside ? 1 : 0;
        }
    }
    if (g.interior_count() == 0) throw std::invalid_argument("build_grid: grid too coarse, no interior node");

    // cut legs
    static const int di[4] = {1, -1, 0, 0};
    static const int dj[4] = {0, 0, 1, -1};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const size_t k = g.idx(i, j);
            if (!g.mask[k]) continue;
            for (int dir = 0; dir < 4; ++dir) {
                const int in = i + di[dir], jn = j + dj[dir];
                if (g.interior(in, jn)) continue;
                const Vec2 p0 = g.node(i, j);
                const Vec2 d2{static_cast<double>(di[dir]), static_cast<double>(dj[dir])};
                double frac;
                Vec2 cp;
                if (strip) {
                    // crossing with the rectangle (or the trim line on the left)
                    double t = 1.0;
                    if (dir == 0) t = (bb.hi.x - p0.x) / h;
                    if (dir == 1) t = (p0.x - xcut) / h;
                    if (dir == 2) t = (bb.hi.y - p0.y) / h;
                    if (dir == 3) t = (p0.y - bb.lo.y) / h;
                    frac = std::clamp(t, 1e-12, 1.0);
                } else {
                    frac = leg_fraction(*domain, p0, d2, h, trim);
                    if (frac < 1e-12) frac = 1e-12;
                }
                cp = {p0.x + frac * h * d2.x, p0.y + frac * h * d2.y};
                Grid::CutLeg cl;
                cl.frac = frac;
                cl.cut_point = cp;
                if (domain->kind() == Domain2D::Kind::Parametric) {
                    const Projection prc = domain->project(cp);
                    cl.s_q = prc.s;
                    cl.kappa_q = domain->curvature_at(prc.s);
                } else if (strip) {
                    cl.s_q = cp.y;
                    cl.kappa_q = 0.0;
                }
                g.leg[k][dir] = static_cast<int32_t>(g.cut_legs.size());
                g.cut_legs.push_back(cl);
            }
        }
    }
    return g;
}

std::optional<double> interpolate(const GridField& f, Vec2 p) {
    const Grid& g = *f.grid;
    const double fx = (p.x - g.origin.x) / g.h;
    const double fy = (p.y - g.origin.y) / g.h;
    const int i0 = static_cast<int>(std::floor(fx));
    const int j0 = static_cast<int>(std::floor(fy));
    const double tx = fx - i0, ty = fy - j0;

    auto ok = [&](int i, int j) {
        return i >= 0 && j >= 0 && i < g.nx && j < g.ny && std::isfinite(f.at(i, j));
    };

    // cubic Lagrange weights at offsets -1, 0, 1, 2
    auto wts = [](double t, double w[4]) {
        w[0] = -t * (t - 1) * (t - 2) / 6.0;
        w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
        w[2] = -(t + 1) * t * (t - 2) / 2.0;
        w[3] = (t + 1) * t * (t - 1) / 6.0;
    };

    bool cubic = true;
    for (int a = -1; a <= 2 && cubic; ++a)
        for (int b = -1; b <= 2; ++b)
            if (!ok(i0 + a, j0 + b)) {
                cubic = false;
                break;
            }
    if (cubic) {
        double wx[4], wy[4];
        wts(tx, wx);
        wts(ty, wy);
        double v = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) v += wx[a] * wy[b] * f.at(i0 + a - 1, j0 + b - 1);
        return v;
    }
    if (ok(i0, j0) && ok(i0 + 1, j0) && ok(i0, j0 + 1) && ok(i0 + 1, j0 + 1)) {
        return (1 - tx) * (1 - ty) * f.at(i0, j0) + tx * (1 - ty) * f.at(i0 + 1, j0) +
               (1 - tx) * ty * f.at(i0, j0 + 1) + tx * ty * f.at(i0 + 1, j0 + 1);
    }
    return std::nullopt;
}

void gradient(const GridField& f, GridField* fx, GridField* fy) {
    const Grid& g = *f.grid;
    *fx = GridField(f.grid);
    *fy = GridField(f.grid);
    for (int j = 1; j + 1 < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i) {
            if (!g.mask[g.idx(i, j)]) continue;
            const double e = f.at(i + 1, j), w = f.at(i - 1, j);
            const double nn = f.at(i, j + 1), ss = f.at(i, j - 1);
            if (std::isfinite(e) && std::isfinite(w)) fx->at(i, j) = (e - w) / (2 * g.h);
            if (std::isfinite(nn) && std::isfinite(ss)) fy->at(i, j) = (nn - ss) / (2 * g.h);
        }
}

GridField laplacian5(const GridField& f) {
    const Grid& g = *f.grid;
    GridField out(f.grid);
    for (int j = 1; j + 1 < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i) {
            if (!g.mask[g.idx(i, j)]) continue;
            const double c = f.at(i, j);
            const double e = f.at(i + 1, j), w = f.at(i - 1, j);
            const double nn = f.at(i, j + 1), ss = f.at(i, j - 1);
            if (std::isfinite(e) && std::isfinite(w) && std::isfinite(nn) && std::isfinite(ss))
                out.at(i, j) = (e + w + nn + ss - 4 * c) / (g.h * g.h);
        }
    return out;
}

GridField laplacian_of_distance(const std::shared_ptr<const Grid>& grid) {
    GridField out(grid);
    for (size_t k = 0; k < grid->size(); ++k) {
        if (!grid->mask[k]) continue;
        const double kap = grid->kappa_near[k];
        out.values[k] = -kap / (1.0 - grid->dist[k] * kap);
    }
    return out;
}

}  // namespace liouville
