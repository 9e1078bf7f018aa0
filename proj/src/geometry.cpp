#include "liouville/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <stdexcept>

namespace liouville {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kSeedSamples = 1024;
}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

// ---------------------------------------------------------------------------
// Curve

Curve Curve::fourier(FourierCoeffs c) {
    if (c.ax.empty() || c.ay.empty())
        throw std::invalid_argument("fourier curve: empty coefficient arrays");
    c.bx.resize(std::max(c.bx.size(), c.ax.size()), 0.0);
    c.by.resize(std::max(c.by.size(), c.ay.size()), 0.0);
    c.ax.resize(std::max(c.ax.size(), c.bx.size()), 0.0);
    c.ay.resize(std::max(c.ay.size(), c.by.size()), 0.0);
    Curve out;
    out.rep_ = Rep::Fourier;
    out.fc_ = std::move(c);
    return out;
}

Curve Curve::circle(Vec2 center, double radius) {
    FourierCoeffs c;
    c.ax = {center.x, radius};
    c.bx = {0.0, 0.0};
    c.ay = {center.y, 0.0};
    c.by = {0.0, radius};
    return fourier(std::move(c));
}

Curve Curve::ellipse(Vec2 center, double a, double b) {
    FourierCoeffs c;
    c.ax = {center.x, a};
    c.bx = {0.0, 0.0};
    c.ay = {center.y, 0.0};
    c.by = {0.0, b};
    return fourier(std::move(c));
}

Curve Curve::spline(std::vector<Vec2> control_points) {
    const size_t n = control_points.size();
    if (n < 4) throw std::invalid_argument("spline curve: need at least 4 control points");
    Curve out;
    out.rep_ = Rep::Spline;
    out.pts_ = std::move(control_points);

    // Periodic cubic spline with uniform knots t_i = i/n.  Solve the cyclic
    // tridiagonal system for the second derivatives m_i (per coordinate).
    const double hk = 1.0 / static_cast<double>(n);
    out.m_.assign(n, Vec2{});
    for (int coord = 0; coord < 2; ++coord) {
        auto val = [&](size_t i) {
            const Vec2& p = out.pts_[i % n];
            return coord == 0 ? p.x : p.y;
        };
        std::vector<double> rhs(n);
        for (size_t i = 0; i < n; ++i)
            rhs[i] = 6.0 * (val(i + 1) - 2.0 * val(i) + val(i + n - 1)) / (hk * hk);
        // Cyclic tridiagonal (sub = super = 1, diag = 4, corner entries 1)
        // via Sherman-Morrison around a plain Thomas sweep.
        const double diag = 4.0, off = 1.0;
        const double gamma = -diag;
        std::vector<double> b(n, diag);
        b[0] = diag - gamma;
        b[n - 1] = diag - off * off / gamma;
        auto solve_tri = [&](std::vector<double> d) {
            std::vector<double> cp(n);
            cp[0] = off / b[0];
            d[0] /= b[0];
            for (size_t i = 1; i < n; ++i) {
                const double m = b[i] - off * cp[i - 1];
                cp[i] = off / m;
                d[i] = (d[i] - off * d[i - 1]) / m;
            }
            for (size_t i = n - 1; i-- > 0;) d[i] -= cp[i] * d[i + 1];
            return d;
        };
        std::vector<double> u(n, 0.0);
        u[0] = gamma;
        u[n - 1] = off;
        std::vector<double> y = solve_tri(rhs);
        std::vector<double> z = solve_tri(u);
        const double vy = y[0] + off / gamma * y[n - 1];
        const double vz = 1.0 + z[0] + off / gamma * z[n - 1];
        for (size_t i = 0; i < n; ++i) {
            const double mi = y[i] - vy / vz * z[i];
            if (coord == 0)
                out.m_[i].x = mi;
            else
                out.m_[i].y = mi;
        }
    }
    return out;
}

void Curve::eval(double s, Vec2* p, Vec2* d1, Vec2* d2) const {
    s -= std::floor(s);
    if (rep_ == Rep::Fourier) {
        Vec2 pp{fc_.ax[0], fc_.ay[0]}, v1{}, v2{};
        const size_t K = fc_.ax.size();
        for (size_t k = 1; k < K; ++k) {
            const double w = kTwoPi * static_cast<double>(k);
            const double c = std::cos(w * s), sn = std::sin(w * s);
            pp.x += fc_.ax[k] * c + fc_.bx[k] * sn;
            pp.y += fc_.ay[k] * c + fc_.by[k] * sn;
            v1.x += w * (-fc_.ax[k] * sn + fc_.bx[k] * c);
            v1.y += w * (-fc_.ay[k] * sn + fc_.by[k] * c);
            v2.x += w * w * (-fc_.ax[k] * c - fc_.bx[k] * sn);
            v2.y += w * w * (-fc_.ay[k] * c - fc_.by[k] * sn);
        }
        if (p) *p = pp;
        if (d1) *d1 = v1;
        if (d2) *d2 = v2;
        return;
    }
    const size_t n = pts_.size();
    const double hk = 1.0 / static_cast<double>(n);
    const double t = s * static_cast<double>(n);
    size_t i = std::min(static_cast<size_t>(t), n - 1);
    const double u = (t - static_cast<double>(i)) * hk;  // local coordinate in [0, hk)
    const size_t j = (i + 1) % n;
    const Vec2 &p0 = pts_[i], &p1 = pts_[j], &m0 = m_[i], &m1 = m_[j];
    auto comp = [&](double a0, double a1, double mm0, double mm1, double* f, double* f1,
                    double* f2) {
        const double A = (hk - u), B = u;
        *f = mm0 * A * A * A / (6 * hk) + mm1 * B * B * B / (6 * hk) +
             (a0 / hk - mm0 * hk / 6) * A + (a1 / hk - mm1 * hk / 6) * B;
        *f1 = -mm0 * A * A / (2 * hk) + mm1 * B * B / (2 * hk) + (a1 - a0) / hk -
              (mm1 - mm0) * hk / 6;
        *f2 = mm0 * A / hk + mm1 * B / hk;
    };
    Vec2 pp, v1, v2;
    comp(p0.x, p1.x, m0.x, m1.x, &pp.x, &v1.x, &v2.x);
    comp(p0.y, p1.y, m0.y, m1.y, &pp.y, &v1.y, &v2.y);
    if (p) *p = pp;
    if (d1) *d1 = v1;
    if (d2) *d2 = v2;
}

Vec2 Curve::point(double s) const {
    Vec2 p;
    eval(s, &p, nullptr, nullptr);
    return p;
}

Vec2 Curve::deriv(double s) const {
    Vec2 d;
    eval(s, nullptr, &d, nullptr);
    return d;
}

Vec2 Curve::deriv2(double s) const {
    Vec2 d;
    eval(s, nullptr, nullptr, &d);
    return d;
}

double Curve::curvature(double s) const {
    Vec2 d1, d2;
    eval(s, nullptr, &d1, &d2);
    const double sp = d1.norm();
    if (sp < 1e-12) throw std::invalid_argument("curvature: degenerate tangent");
    return (d1.x * d2.y - d1.y * d2.x) / (sp * sp * sp);
}

Vec2 Curve::tangent(double s) const {
    Vec2 d1 = deriv(s);
    const double sp = d1.norm();
    if (sp < 1e-12) throw std::invalid_argument("tangent: degenerate tangent");
    return d1 * (1.0 / sp);
}

Vec2 Curve::inward_normal(double s) const {
    Vec2 t = tangent(s);
    return {-t.y, t.x};  // domain on the left for CCW orientation
}

// ---------------------------------------------------------------------------
// Domain2D

Domain2D Domain2D::from_curve(Curve c, std::optional<double> reach_override) {
    Domain2D d;
    d.kind_ = Kind::Parametric;
    d.curve_ = std::move(c);
    d.finalize(reach_override);
    return d;
}

Domain2D Domain2D::circle(double radius, Vec2 center) {
    if (radius <= 0) throw std::invalid_argument("circle: radius must be positive");
    Domain2D d = from_curve(Curve::circle(center, radius), radius);
    d.center_ = center;
    return d;
}

Domain2D Domain2D::ellipse(double a, double b, Vec2 center) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("ellipse: semi-axes must be positive");
    Domain2D d = from_curve(Curve::ellipse(center, a, b));
    d.center_ = center;
    return d;
}

Domain2D Domain2D::strip(double xmin, double xmax, double height) {
    if (!(0 <= xmin && xmin < xmax) || height <= 0)
        throw std::invalid_argument("strip: need 0 <= xmin < xmax and height > 0");
    Domain2D d;
    d.kind_ = Kind::Strip;
    d.strip_xmin_ = xmin;
    d.strip_xmax_ = xmax;
    d.strip_height_ = height;
    d.reach_ = std::numeric_limits<double>::infinity();
    d.bbox_ = {{xmin, 0.0}, {xmax, height}};
    return d;
}

Domain2D Domain2D::annulus(double r0, Vec2 center) {
    if (!(0 < r0 && r0 < 1)) throw std::invalid_argument("annulus: need 0 < r0 < 1");
    Domain2D d;
    d.kind_ = Kind::Annulus;
    d.annulus_r0_ = r0;
    d.center_ = center;
    const double R = 1.0 / r0;
    d.reach_ = 0.5 * (R - r0);
    d.bbox_ = {{center.x - R, center.y - R}, {center.x + R, center.y + R}};
    return d;
}

const Curve& Domain2D::curve() const {
    if (!curve_) throw std::logic_error("domain has no boundary curve");
    return *curve_;
}

void Domain2D::finalize(std::optional<double> reach_override) {
    samples_.resize(kSeedSamples);
    sample_s_.resize(kSeedSamples);
    bbox_.lo = {1e300, 1e300};
    bbox_.hi = {-1e300, -1e300};
    double area2 = 0.0;
    for (int i = 0; i < kSeedSamples; ++i) {
        const double s = static_cast<double>(i) / kSeedSamples;
        sample_s_[i] = s;
        Vec2 p = curve_->point(s);
        Vec2 t = curve_->deriv(s);
        if (t.norm() < 1e-12) throw std::invalid_argument("domain curve: degenerate tangent");
        samples_[i] = p;
        bbox_.lo.x = std::min(bbox_.lo.x, p.x);
        bbox_.lo.y = std::min(bbox_.lo.y, p.y);
        bbox_.hi.x = std::max(bbox_.hi.x, p.x);
        bbox_.hi.y = std::max(bbox_.hi.y, p.y);
        area2 += p.x * t.y - p.y * t.x;
    }
    if (area2 <= 0)
        throw std::invalid_argument("domain curve must be counterclockwise (signed area <= 0)");
    // closure check
    const Vec2 gap = curve_->point(0.0) - curve_->point(1.0 - 1e-12);
    if (gap.norm() > 1e-6) throw std::invalid_argument("domain curve is not closed");
    reach_ = reach_override ? *reach_override : estimate_reach();
    if (reach_ <= 0) throw std::invalid_argument("domain reach must be positive");
}

double Domain2D::estimate_reach() const {
    const int n = kSeedSamples;
    double max_kappa = 0.0;
    std::vector<Vec2> normals(n);
    for (int i = 0; i < n; ++i) {
        max_kappa = std::max(max_kappa, std::abs(curve_->curvature(sample_s_[i])));
        normals[i] = curve_->inward_normal(sample_s_[i]);
    }
    // Largest tangent ball radius: for each sample i, the ball tangent at
    // gamma_i touching gamma_j has radius |gamma_j - gamma_i|^2 / (2 (gamma_j - gamma_i).n_i).
    double t_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 c = samples_[j] - samples_[i];
            const double dn = c.dot(normals[i]);
            if (dn <= 1e-14) continue;
            t_min = std::min(t_min, c.dot(c) / (2.0 * dn));
        }
    }
    double reach = t_min;
    if (max_kappa > 0) reach = std::min(reach, 1.0 / max_kappa);
    return reach;
}

Projection Domain2D::project(Vec2 p) const {
    Projection out;
    if (kind_ == Kind::Strip) {
        out.d = p.x;
        out.q = {0.0, p.y};
        out.s = p.y;
        return out;
    }
    if (kind_ == Kind::Annulus) {
        const Vec2 rel = p - center_;
        const double r = rel.norm();
        const double R = 1.0 / annulus_r0_;
        const double di = r - annulus_r0_, de = R - r;
        Vec2 dir = (r > 1e-300) ? rel * (1.0 / r) : Vec2{1, 0};
        if (di <= de) {
            out.d = di;
            out.q = center_ + dir * annulus_r0_;
        } else {
            out.d = de;
            out.q = center_ + dir * R;
        }
        out.s = std::atan2(dir.y, dir.x);
        out.ambiguous = (r <= 1e-300) || std::abs(di - de) < 1e-12;
        return out;
    }

    // seed: dense sampling
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::vector<double> d2(kSeedSamples);
    for (int i = 0; i < kSeedSamples; ++i) {
        const Vec2 r = p - samples_[i];
        d2[i] = r.dot(r);
        if (d2[i] < best_d2) {
            best_d2 = d2[i];
            best = i;
        }
    }

    // Newton refinement of the stationarity condition g(s) = -(p - gamma).gamma' = 0
    auto refine = [&](double s0) {
        double s = s0;
        for (int it = 0; it < 60; ++it) {
            const Vec2 g0 = curve_->point(s);
            const Vec2 g1 = curve_->deriv(s);
            const Vec2 g2 = curve_->deriv2(s);
            const Vec2 r = p - g0;
            const double g = -r.dot(g1);
            double gp = g1.dot(g1) - r.dot(g2);
            if (gp <= 1e-14 * g1.dot(g1)) gp = g1.dot(g1);  // fall back to Gauss-Newton
            double step = -g / gp;
            const double max_step = 2.0 / kSeedSamples;
            step = std::clamp(step, -max_step, max_step);
            s += step;
            if (std::abs(step) < 1e-16) break;
        }
        return s - std::floor(s);
    };
    const double s_best = refine(sample_s_[best]);
    Vec2 q = curve_->point(s_best);
    double dist = (p - q).norm();
    out.q = q;
    out.s = s_best;

    // sign: inside iff p lies on the inward-normal side of the nearest point
    const double side = (p - q).dot(curve_->inward_normal(s_best));
    double sd = (side >= 0) ? dist : -dist;
    if (dist < 1e-14) sd = 0.0;
    out.d = sd;

    // ambiguity: a second, parametrically distant local minimum at nearly the
    // same distance, with p beyond the reach
    if (std::abs(sd) > reach_) {
        const double tol = std::max(1e-9, 1e-9 * dist);
        for (int i = 0; i < kSeedSamples; ++i) {
            const int prev = (i + kSeedSamples - 1) % kSeedSamples;
            const int next = (i + 1) % kSeedSamples;
            if (!(d2[i] <= d2[prev] && d2[i] <= d2[next])) continue;
            double ds = std::abs(sample_s_[i] - s_best);
            ds = std::min(ds, 1.0 - ds);
            if (ds < 8.0 / kSeedSamples) continue;
            const double cand = refine(sample_s_[i]);
            const double dist2 = (p - curve_->point(cand)).norm();
            if (std::abs(dist2 - dist) < tol) {
                out.ambiguous = true;
                break;
            }
        }
    }
    return out;
}

double Domain2D::curvature_at(double s) const {
    if (kind_ == Kind::Strip) return 0.0;
    if (kind_ == Kind::Annulus) throw std::logic_error("annulus: curvature_at not parameterized");
    return curve_->curvature(s);
}

std::string Domain2D::hash() const {
    // FNV-1a over the defining numbers, hex-printed
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<double>(static_cast<int>(kind_)));
    if (kind_ == Kind::Strip) {
        mix(strip_xmin_);
        mix(strip_xmax_);
        mix(strip_height_);
    } else if (kind_ == Kind::Annulus) {
        mix(annulus_r0_);
        mix(center_.x);
        mix(center_.y);
    } else {
        for (const Vec2& p : samples_) {
            mix(p.x);
            mix(p.y);
        }
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace liouville
