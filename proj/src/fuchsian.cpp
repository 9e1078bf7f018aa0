#include "liouville/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include "liouville/linalg.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// CollarField

CollarField::CollarField(std::shared_ptr<const CollarChart> c, int nT_, int nY_)
    : chart(std::move(c)), nT(nT_), nY(nY_) {
    values.assign(static_cast<size_t>(nT) * nY, 0.0);
}

double CollarField::sup() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double CollarField::trace_or_extrapolate(int j) const {
    if (has_trace()) return trace[mod(j)];
    // quadratic extrapolation through rows 1..3
    return 3 * at(1, j) - 3 * at(2, j) + at(3, j);
}

double CollarField::sample(double T, double Y) const {
    const double ht = hT(), hy = hY();
    const double theta = chart->theta();
    T = std::clamp(T, 0.0, theta);
    const double fy = (Y + theta) / hy;
    int j0 = static_cast<int>(std::floor(fy));
    const double ty = fy - j0;
    auto row_val = [&](int i, int j) {
        return (i == 0) ? trace_or_extrapolate(j) : at(std::min(i, nT), j);
    };
    const double fi = T / ht;
    int i0 = static_cast<int>(std::floor(fi));
    i0 = std::min(i0, nT - 1);
    const double tx = fi - i0;
    const double v00 = row_val(i0, j0), v10 = row_val(i0 + 1, j0);
    const double v01 = row_val(i0, j0 + 1), v11 = row_val(i0 + 1, j0 + 1);
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
}

CollarField collar_field_from_chart(const std::shared_ptr<const CollarChart>& chart,
                                    const std::vector<double>& chart_values, double period_tol) {
    const int nT = chart->nT(), nY = chart->nY();
    if (chart_values.size() != static_cast<size_t>(nT + 1) * (nY + 1))
        throw std::invalid_argument("collar_field_from_chart: size mismatch");
    auto cv = [&](int i, int j) { return chart_values[static_cast<size_t>(i) * (nY + 1) + j]; };
    double mismatch = 0.0;
    for (int i = 0; i <= nT; ++i) mismatch = std::max(mismatch, std::abs(cv(i, 0) - cv(i, nY)));
    if (mismatch > period_tol)
        throw std::invalid_argument("collar_field_from_chart: Y-period mismatch at the chart ends");
    CollarField f(chart, nT, nY);
    for (int i = 1; i <= nT; ++i)
        for (int j = 0; j < nY; ++j) f.at(i, j) = cv(i, j);
    f.trace.resize(nY);
    for (int j = 0; j < nY; ++j) f.trace[j] = cv(0, j);
    return f;
}

CollarField minus_two_laplacian_d(const std::shared_ptr<const CollarChart>& chart) {
    const int nT = chart->nT(), nY = chart->nY();
    std::vector<double> vals(static_cast<size_t>(nT + 1) * (nY + 1));
    for (int i = 0; i <= nT; ++i)
        for (int j = 0; j <= nY; ++j)
            vals[static_cast<size_t>(i) * (nY + 1) + j] = -2.0 * chart->laplacian_d(i, j);
    return collar_field_from_chart(chart, vals);
}

// ---------------------------------------------------------------------------
// derivative helpers (index into flat row-major arrays sized nT x nY)

namespace {

struct Deriv {
    std::vector<double> fT, fTT, fY, fYY, fTY;
};

Deriv derivatives(const CollarField& f) {
    const int nT = f.nT, nY = f.nY;
    const double h = f.hT(), hy = f.hY();
    Deriv d;
    const size_t n = static_cast<size_t>(nT) * nY;
    d.fT.resize(n);
    d.fTT.resize(n);
    d.fY.resize(n);
    d.fYY.resize(n);
    d.fTY.resize(n);
    auto id = [&](int i, int j) { return static_cast<size_t>(i - 1) * nY + f.mod(j); };
    for (int j = 0; j < nY; ++j) {
        const double f0 = f.trace_or_extrapolate(j);
        for (int i = 1; i <= nT; ++i) {
            const double fi = f.at(i, j);
            double ft, ftt;
            if (i == 1) {
                ft = (f.at(2, j) - f0) / (2 * h);
                ftt = (f.at(2, j) - 2 * fi + f0) / (h * h);
            } else if (i == nT) {
                ft = (3 * fi - 4 * f.at(i - 1, j) + f.at(i - 2, j)) / (2 * h);
                ftt = (2 * fi - 5 * f.at(i - 1, j) + 4 * f.at(i - 2, j) - f.at(i - 3, j)) / (h * h);
            } else {
                ft = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * h);
                ftt = (f.at(i + 1, j) - 2 * fi + f.at(i - 1, j)) / (h * h);
            }
            d.fT[id(i, j)] = ft;
            d.fTT[id(i, j)] = ftt;
            d.fY[id(i, j)] = (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * hy);
            d.fYY[id(i, j)] = (f.at(i, j + 1) - 2 * fi + f.at(i, j - 1)) / (hy * hy);
        }
    }
    // fTY: T-differencing of fY columns
    for (int j = 0; j < nY; ++j) {
        // trace of fY: differentiate the trace row if available
        double fy0;
        if (f.has_trace())
            fy0 = (f.trace[f.mod(j + 1)] - f.trace[f.mod(j - 1)]) / (2 * hy);
        else
            fy0 = 3 * d.fY[id(1, j)] - 3 * d.fY[id(2, j)] + d.fY[id(3, j)];
        for (int i = 1; i <= nT; ++i) {
            double v;
            if (i == 1)
                v = (d.fY[id(2, j)] - fy0) / (2 * h);
            else if (i == nT)
                v = (3 * d.fY[id(i, j)] - 4 * d.fY[id(i - 1, j)] + d.fY[id(i - 2, j)]) / (2 * h);
            else
                v = (d.fY[id(i + 1, j)] - d.fY[id(i - 1, j)]) / (2 * h);
            d.fTY[id(i, j)] = v;
        }
    }
    return d;
}

}  // namespace

CollarField apply_L0(const CollarField& f) {
    const Deriv d = derivatives(f);
    CollarField out(f.chart, f.nT, f.nY);
    for (int i = 1; i <= f.nT; ++i) {
        const double T = f.T_of(i);
        for (int j = 0; j < f.nY; ++j) {
            const size_t k = static_cast<size_t>(i - 1) * f.nY + j;
            out.at(i, j) = T * T * (d.fTT[k] + d.fYY[k]) + 2 * T * d.fT[k] - 2 * f.at(i, j);
        }
    }
    if (f.has_trace()) {
        out.trace.resize(f.nY);
        for (int j = 0; j < f.nY; ++j) out.trace[j] = -2.0 * f.trace[j];
    }
    return out;
}

CollarField apply_L1(const CollarField& f) {
    const Deriv d = derivatives(f);
    const CollarChart& ch = *f.chart;
    if (ch.nT() != f.nT || ch.nY() != f.nY)
        throw std::invalid_argument("apply_L1: field resolution must match the chart");
    CollarField out(f.chart, f.nT, f.nY);
    for (int i = 1; i <= f.nT; ++i) {
        const double T = f.T_of(i);
        for (int j = 0; j < f.nY; ++j) {
            const size_t k = static_cast<size_t>(i - 1) * f.nY + j;
            const double dy = ch.d_y(i, j);
            const double ldd = ch.laplacian_d(i, j);
            out.at(i, j) = 2 * T * dy * (T * d.fTY[k] + d.fY[k]) + T * ldd * T * d.fT[k];
        }
    }
    out.trace.assign(f.nY, 0.0);  // both terms carry a factor T
    return out;
}

// ---------------------------------------------------------------------------
// F1 / F2

ExtensionF1::ExtensionF1(const CollarField& k) : k_(&k) {
    k0_.resize(k.nY);
    for (int j = 0; j < k.nY; ++j) k0_[j] = k.trace_or_extrapolate(j);
}

double ExtensionF1::interp_column(double T, int column) const {
    const CollarField& k = *k_;
    const double h = k.hT();
    // cubic Lagrange over rows m-1..m+2 of the virtual column (row 0 = k0)
    int m = static_cast<int>(std::floor(T / h));
    m = std::clamp(m, 1, k.nT - 2);  // keep 4 rows in [0, nT]
    const double t = T / h - m;
    auto rv = [&](int i) { return (i == 0) ? k0_[k.mod(column)] : k.at(i, column); };
    const double w0 = -t * (t - 1) * (t - 2) / 6.0;
    const double w1 = (t + 1) * (t - 1) * (t - 2) / 2.0;
    const double w2 = -(t + 1) * t * (t - 2) / 2.0;
    const double w3 = (t + 1) * t * (t - 1) / 6.0;
    return w0 * rv(m - 1) + w1 * rv(m) + w2 * rv(m + 1) + w3 * rv(m + 2);
}

double ExtensionF1::operator()(double T, int column) const {
    const double theta = k_->chart->theta();
    if (T <= 0) return k0_[k_->mod(column)];
    if (T <= theta) return interp_column(T, column);
    if (T >= 2 * theta) return 0.0;
    const double t = (T - theta) / theta;
    const double cut = 1.0 - (10 * t * t * t - 15 * t * t * t * t + 6 * t * t * t * t * t);
    return interp_column(2 * theta - T, column) * cut;
}

CollarField tilde_F2(const CollarField& k) {
    const int nT = k.nT, nY = k.nY;
    const double h = k.hT(), theta = k.chart->theta();
    const ExtensionF1 ext(k);
    const AdaptiveSimpson quad(1e-10 / (nT + 1));
    CollarField out(k.chart, nT, nY);
    out.trace.resize(nY);
    for (int j = 0; j < nY; ++j) {
        auto f = [&](double s) { return ext(s, j) / (s * s); };
        // I(T) = int_T^{2 theta} F1[k](s) / s^2 ds, accumulated cell by cell
        double I = quad.integrate(f, theta, 2 * theta);
        std::vector<double> Ivals(nT + 1);
        Ivals[nT] = I;
        for (int i = nT - 1; i >= 1; --i) {
            I += quad.integrate(f, i * h, (i + 1) * h);
            Ivals[i] = I;
        }
        for (int i = 1; i <= nT; ++i) {
            const double v = k.T_of(i) * Ivals[i];
            if (!std::isfinite(v)) throw std::runtime_error("tilde_F2: quadrature produced non-finite value");
            out.at(i, j) = v;
        }
        out.trace[j] = ext.trace(j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// mixed-BC Poisson solve

std::vector<double> solve_h(const CollarField& k_tilde) {
    const int nT = k_tilde.nT, nY = k_tilde.nY;
    const double hT = k_tilde.hT(), hY = k_tilde.hY();
    using cplx = std::complex<double>;
    const double two_pi = 6.283185307179586476925286766559;

    // forward DFT of the right-hand side -k~ along Y, per T row
    std::vector<cplx> rhs(static_cast<size_t>(nT) * nY);
    for (int i = 1; i <= nT; ++i)
        for (int m = 0; m < nY; ++m) {
            cplx s{0, 0};
            for (int j = 0; j < nY; ++j) {
                const double ang = -two_pi * m * j / nY;
                s += cplx{std::cos(ang), std::sin(ang)} * (-k_tilde.at(i, j));
            }
            rhs[static_cast<size_t>(i - 1) * nY + m] = s;
        }

    // per mode: tridiagonal in T with h(0) = 0 and ghost Neumann at T = theta
    std::vector<cplx> hm(static_cast<size_t>(nT) * nY);
    const double ih2 = 1.0 / (hT * hT);
    for (int m = 0; m < nY; ++m) {
        const double lam = (2.0 - 2.0 * std::cos(two_pi * m / nY)) / (hY * hY);
        std::vector<double> sub(nT - 1, ih2), diag(nT, -2.0 * ih2 - lam), sup(nT - 1, ih2);
        sub[nT - 2] = 2.0 * ih2;  // ghost h_{nT+1} = h_{nT-1}
        for (int part = 0; part < 2; ++part) {
            std::vector<double> r(nT);
            for (int i = 1; i <= nT; ++i) {
                const cplx v = rhs[static_cast<size_t>(i - 1) * nY + m];
                r[i - 1] = part == 0 ? v.real() : v.imag();
            }
            std::vector<double> x = solve_tridiag(sub, diag, sup, r);
            for (int i = 1; i <= nT; ++i) {
                cplx& out = hm[static_cast<size_t>(i - 1) * nY + m];
                if (part == 0)
                    out = cplx{x[i - 1], out.imag()};
                else
                    out = cplx{out.real(), x[i - 1]};
            }
        }
    }

    // inverse DFT
    std::vector<double> h(static_cast<size_t>(nT + 1) * nY, 0.0);
    for (int i = 1; i <= nT; ++i)
        for (int j = 0; j < nY; ++j) {
            cplx s{0, 0};
            for (int m = 0; m < nY; ++m) {
                const double ang = two_pi * m * j / nY;
                s += cplx{std::cos(ang), std::sin(ang)} * hm[static_cast<size_t>(i - 1) * nY + m];
            }
            h[static_cast<size_t>(i) * nY + j] = s.real() / nY;
        }
    return h;
}

// ---------------------------------------------------------------------------
// w1

namespace {

// h_TT on rows 0..nT, recovered through the equation h_TT = -k~ - h_YY rather
// than by one-sided differencing: this keeps the discretization error smooth
// up to the edge rows, so later second differences do not lose an order there.
// Row 0 is zero by construction, hence h_YY(0, .) = 0 there.
std::vector<double> second_T_derivative(const CollarField& kt, const std::vector<double>& h,
                                        int nT, int nY) {
    std::vector<double> htt(static_cast<size_t>(nT + 1) * nY);
    auto H = [&](int i, int j) { return h[static_cast<size_t>(i) * nY + ((j % nY) + nY) % nY]; };
    const double ihy2 = 1.0 / (kt.hY() * kt.hY());
    for (int j = 0; j < nY; ++j) {
        htt[j] = -(kt.has_trace() ? kt.trace[j] : kt.trace_or_extrapolate(j));
        for (int i = 1; i <= nT; ++i) {
            const double hyy = (H(i, j + 1) - 2 * H(i, j) + H(i, j - 1)) * ihy2;
            htt[static_cast<size_t>(i) * nY + j] = -kt.at(i, j) - hyy;
        }
    }
    return htt;
}

// cubic Lagrange interpolation of a column of row values at T in [0, theta]
double interp_rows(const std::vector<double>& rows, int nT, int nY, int j, double hT, double T) {
    int m = static_cast<int>(std::floor(T / hT));
    m = std::clamp(m, 1, nT - 2);
    const double t = T / hT - m;
    auto rv = [&](int i) { return rows[static_cast<size_t>(i) * nY + j]; };
    const double w0 = -t * (t - 1) * (t - 2) / 6.0;
    const double w1 = (t + 1) * (t - 1) * (t - 2) / 2.0;
    const double w2 = -(t + 1) * t * (t - 2) / 2.0;
    const double w3 = (t + 1) * t * (t - 1) / 6.0;
    return w0 * rv(m - 1) + w1 * rv(m) + w2 * rv(m + 1) + w3 * rv(m + 2);
}

}  // namespace

CollarField w1_from_h(const CollarField& k_tilde_like, const std::vector<double>& h) {
    const int nT = k_tilde_like.nT, nY = k_tilde_like.nY;
    const double hT = k_tilde_like.hT();
    const std::vector<double> htt = second_T_derivative(k_tilde_like, h, nT, nY);
    CollarField out(k_tilde_like.chart, nT, nY);
    out.trace.resize(nY);
    // 3-point Gauss-Legendre nodes on [0, 1]
    static const double gx[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
    static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (int j = 0; j < nY; ++j) {
        double J = 0.0;  // int_0^{T_i} s h_TT(s) ds, accumulated over cells
        for (int i = 1; i <= nT; ++i) {
            const double a = (i - 1) * hT, b = i * hT;
            double cell = 0.0;
            for (int q = 0; q < 3; ++q) {
                const double s = a + gx[q] * (b - a);
                cell += gw[q] * s * interp_rows(htt, nT, nY, j, hT, s);
            }
            J += cell * (b - a);
            const double T = i * hT;
            out.at(i, j) = J / (T * T);
        }
        out.trace[j] = 0.5 * htt[j];
    }
    return out;
}

CollarField w1_direct(const CollarField& k_tilde_like, const std::vector<double>& h) {
    const int nT = k_tilde_like.nT, nY = k_tilde_like.nY;
    const double hT = k_tilde_like.hT();
    auto H = [&](int i, int j) { return h[static_cast<size_t>(i) * nY + j]; };
    CollarField out(k_tilde_like.chart, nT, nY);
    for (int j = 0; j < nY; ++j)
        for (int i = 1; i <= nT; ++i) {
            double ht;
            if (i == nT)
                ht = (3 * H(i, j) - 4 * H(i - 1, j) + H(i - 2, j)) / (2 * hT);
            else
                ht = (H(i + 1, j) - H(i - 1, j)) / (2 * hT);
            const double T = i * hT;
            out.at(i, j) = (T * ht - H(i, j)) / (T * T);
        }
    return out;
}

CollarField right_inverse_G(const CollarField& k) {
    const CollarField kt = tilde_F2(k);
    const std::vector<double> h = solve_h(kt);
    return w1_from_h(kt, h);
}

// ---------------------------------------------------------------------------
// fixed point for w0

namespace {

CollarField axpy(const CollarField& a, double alpha, const CollarField& b) {
    CollarField out = a;
    for (size_t k = 0; k < out.values.size(); ++k) out.values[k] += alpha * b.values[k];
    if (a.has_trace() && b.has_trace())
        for (size_t k = 0; k < out.trace.size(); ++k) out.trace[k] += alpha * b.trace[k];
    else
        out.trace.clear();
    return out;
}

double sup_diff(const CollarField& a, const CollarField& b) {
    double m = 0.0;
    for (size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

}  // namespace

FixedPointResult w0_fixed_point(const std::shared_ptr<const CollarChart>& chart, double tol,
                                int max_iters) {
    FixedPointResult res;
    const CollarField k_dd = minus_two_laplacian_d(chart);
    const CollarField b = right_inverse_G(k_dd);

    CollarField w(chart, chart->nT(), chart->nY());
    w.trace.assign(chart->nY(), 0.0);
    double prev_step = -1.0;
    for (int it = 1; it <= max_iters; ++it) {
        const CollarField gl = right_inverse_G(apply_L1(w));
        CollarField w_next = axpy(b, -1.0, gl);
        const double step = sup_diff(w_next, w);
        res.step_norms.push_back(step);
        w = std::move(w_next);
        res.iterations = it;
        if (it == 2 && prev_step > 0) {
            res.contraction_estimate = step / prev_step;
            if (res.contraction_estimate >= 0.9)
                throw std::runtime_error("w0_fixed_point: contraction factor >= 0.9, shrink theta");
        }
        if (step < tol) break;
        prev_step = step;
    }
    res.w0 = std::move(w);
    return res;
}

// ---------------------------------------------------------------------------
// grid-side operators

GridField renormalize(const GridField& v) {
    const Grid& g = *v.grid;
    GridField out(v.grid);
    for (size_t k = 0; k < g.size(); ++k) {
        if (!g.mask[k] || !std::isfinite(v.values[k])) continue;
        const double d = g.dist[k];
        if (d < g.h) continue;  // amplified noise below one cell
        out.values[k] = (v.values[k] - 2 * d) / (d * d);
    }
    return out;
}

GridField apply_L_grid(const GridField& f) {
    const Grid& g = *f.grid;
    GridField fx, fy;
    gradient(f, &fx, &fy);
    const GridField lap = laplacian5(f);
    GridField out(f.grid);
    for (size_t k = 0; k < g.size(); ++k) {
        if (!g.mask[k]) continue;
        if (!std::isfinite(lap.values[k]) || !std::isfinite(fx.values[k])) continue;
        const double d = g.dist[k];
        const Vec2 gd = g.dist_grad[k];
        out.values[k] = d * d * lap.values[k] +
                        2 * d * (gd.x * fx.values[k] + gd.y * fy.values[k]) - 2 * f.values[k];
    }
    return out;
}

GridField apply_Mw_grid(const GridField& w, const GridField& f) {
    const Grid& g = *w.grid;
    GridField wx, wy, fx, fy;
    gradient(w, &wx, &wy);
    gradient(f, &fx, &fy);
    const GridField ldd = laplacian_of_distance(w.grid);
    GridField out(w.grid);
    for (size_t k = 0; k < g.size(); ++k) {
        if (!g.mask[k]) continue;
        if (!std::isfinite(w.values[k]) || !std::isfinite(f.values[k])) continue;
        if (!std::isfinite(wx.values[k]) || !std::isfinite(fx.values[k])) continue;
        const double d = g.dist[k];
        const double den = 2.0 + d * w.values[k];
        if (den <= 0) throw std::domain_error("apply_Mw: 2 + d w <= 0 (v nonpositive)");
        const Vec2 gd = g.dist_grad[k];
        const double gw_gd = wx.values[k] * gd.x + wy.values[k] * gd.y;
        const double gw_gf = wx.values[k] * fx.values[k] + wy.values[k] * fy.values[k];
        out.values[k] = d * d / den * (2 * f.values[k] * gw_gd + d * gw_gf) -
                        2 * d * f.values[k] * ldd.values[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// sub/super solutions

SubSuperFields sub_super(const CollarField& w0, double A, const std::shared_ptr<const Grid>& grid) {
    const CollarChart& ch = *w0.chart;
    const double theta = ch.theta();
    SubSuperFields out{GridField(grid), GridField(grid), GridField(grid), GridField(), GridField()};
    for (int j = 0; j < grid->ny; ++j)
        for (int i = 0; i < grid->nx; ++i) {
            const size_t k = grid->idx(i, j);
            if (!grid->mask[k]) continue;
            const auto [T, Y] = ch.to_chart(grid->node(i, j));
            if (!(T > 0) || T > theta || std::abs(Y) >= theta) continue;
            const double w0v = w0.sample(T, Y);
            out.w0_on_grid.values[k] = w0v;
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                const double wA = w0v + sgn * A * T * std::log(T);
                const double arg = 2 * T + T * T * wA;
                if (!(2.0 + T * wA > 0))
                    throw std::domain_error("sub_super: 2 + d w_A <= 0, shrink A or the collar");
                (sgn > 0 ? out.u_plus : out.u_minus).values[k] = -std::log(arg);
            }
        }
    return out;
}

std::pair<CollarField, CollarField> sub_super_diagnostic(const CollarField& w0, double A) {
    const CollarChart& ch = *w0.chart;
    CollarField wp = w0, wm = w0;
    for (int i = 1; i <= w0.nT; ++i) {
        const double T = w0.T_of(i);
        const double corr = A * T * std::log(T);
        for (int j = 0; j < w0.nY; ++j) {
            wp.at(i, j) += corr;
            wm.at(i, j) -= corr;
        }
    }
    // traces unchanged: T ln T -> 0
    auto diag_of = [&](const CollarField& wA) {
        CollarField Lw = axpy(apply_L0(wA), 1.0, apply_L1(wA));
        CollarField out = Lw;
        for (int i = 1; i <= w0.nT; ++i) {
            const double T = w0.T_of(i);
            for (int j = 0; j < w0.nY; ++j)
                out.at(i, j) += (2.0 + T * wA.at(i, j)) * ch.laplacian_d(i, j);
        }
        return out;
    };
    return {diag_of(wp), diag_of(wm)};
}

// ---------------------------------------------------------------------------
// Holder seminorms

HolderReport holder_seminorm_points(const std::vector<Vec2>& pts,
                                    const std::vector<std::vector<double>>& vals, double alpha,
                                    int weight, uint64_t seed) {
    if (pts.size() != vals.size() || pts.empty())
        throw std::invalid_argument("holder_seminorm_points: empty or mismatched samples");
    HolderReport rep;
    rep.alpha = alpha;
    rep.weight = weight;

    Vec2 lo = pts[0], hi = pts[0];
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    const double R = std::max((hi - lo).norm(), 1e-300);
    constexpr int kClasses = 16;
    rep.class_max.assign(kClasses, 0.0);

    auto consider = [&](size_t a, size_t b) {
        const double dist = (pts[a] - pts[b]).norm();
        if (dist <= 0) return;
        double dv2 = 0.0;
        for (size_t c = 0; c < vals[a].size(); ++c) {
            const double d = vals[a][c] - vals[b][c];
            dv2 += d * d;
        }
        const double q = std::sqrt(dv2) / std::pow(dist, alpha);
        int cls = static_cast<int>(std::floor(std::log2(R / dist)));
        cls = std::clamp(cls, 0, kClasses - 1);
        rep.class_max[cls] = std::max(rep.class_max[cls], q);
        if (q > rep.seminorm) {
            rep.seminorm = q;
            rep.witness_p = pts[a];
            rep.witness_q = pts[b];
        }
        ++rep.pairs_sampled;
    };

    if (pts.size() <= 10000) {
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b) consider(a, b);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
        for (size_t t = 0; t < 1000000; ++t) {
            const size_t a = pick(rng), b = pick(rng);
            if (a != b) consider(a, b);
        }
    }
    return rep;
}

HolderReport holder_seminorm(const CollarField& f, double alpha, int weight, uint64_t seed) {
    if (weight < 0 || weight > 2) throw std::invalid_argument("holder_seminorm: weight must be 0, 1 or 2");
    const Deriv d = derivatives(f);
    std::vector<Vec2> pts;
    std::vector<std::vector<double>> vals;
    pts.reserve(static_cast<size_t>(f.nT) * f.nY);
    for (int i = 1; i <= f.nT; ++i) {
        const double T = f.T_of(i);
        for (int j = 0; j < f.nY; ++j) {
            const size_t k = static_cast<size_t>(i - 1) * f.nY + j;
            pts.push_back({T, f.Y_of(j)});
            if (weight == 0)
                vals.push_back({f.at(i, j)});
            else if (weight == 1)
                vals.push_back({T * d.fT[k], T * d.fY[k]});
            else
                vals.push_back({T * T * d.fTT[k], T * T * d.fTY[k], T * T * d.fYY[k]});
        }
    }
    return holder_seminorm_points(pts, vals, alpha, weight, seed);
}

}  // namespace liouville
