#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "liouville/chart.hpp"
#include "liouville/grid.hpp"

namespace liouville {

/// Scalar field on the collar rectangle (0, theta] x [-theta, theta),
/// periodic in Y.  Rows i = 1..nT at T_i = i theta/nT (no T = 0 samples);
/// the T = 0 trace is stored separately when known.
struct CollarField {
    std::shared_ptr<const CollarChart> chart;
    int nT = 0, nY = 0;  // nY distinct periodic columns
    std::vector<double> values;          // (nT) x (nY), row-major, row r = T index i = r+1
    std::vector<double> trace;           // optional T = 0 trace, size nY
    bool periodic_in_Y = true;

    CollarField() = default;
    CollarField(std::shared_ptr<const CollarChart> c, int nT, int nY);

    double hT() const { return chart->theta() / nT; }
    double hY() const { return 2 * chart->theta() / nY; }
    double T_of(int i) const { return i * hT(); }        // i in [1, nT]
    double Y_of(int j) const { return -chart->theta() + j * hY(); }
    double& at(int i, int j) { return values[static_cast<size_t>(i - 1) * nY + mod(j)]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i - 1) * nY + mod(j)]; }
    bool has_trace() const { return !trace.empty(); }

    int mod(int j) const {
        j %= nY;
        return j < 0 ? j + nY : j;
    }

    /// max |value|, excluding the trace
    double sup() const;
    /// value at T = 0 for column j: stored trace, or quadratic extrapolation
    double trace_or_extrapolate(int j) const;
    /// bilinear (T) x periodic-cubic (Y) sample; T in [0, theta], uses the
    /// trace row below T_1
    double sample(double T, double Y) const;
};

/// Sample a function given on the chart nodes into a periodic collar field.
/// Checks that the Y = -theta and Y = +theta columns agree (period mismatch
/// is rejected), and records the T = 0 row as the trace.
CollarField collar_field_from_chart(const std::shared_ptr<const CollarChart>& chart,
                                    const std::vector<double>& chart_values,
                                    double period_tol = 1e-9);

/// -2 Delta d on the chart, the right-hand side of the w0 equation.
CollarField minus_two_laplacian_d(const std::shared_ptr<const CollarChart>& chart);

// --- renormalized unknown -------------------------------------------------

/// w = (v - 2d)/d^2; nodes with d < h are masked out (amplified noise).
GridField renormalize(const GridField& v);

/// L f = d^2 Delta f + 2 d grad d . grad f - 2 f on the grid (central
/// differences; NaN where the stencil is incomplete).
GridField apply_L_grid(const GridField& f);

/// M_w(f) = d^2/(2 + d w) [2 f grad w . grad d + d grad w . grad f] - 2 d f Delta d.
/// Throws std::domain_error where 2 + d w <= 0.
GridField apply_Mw_grid(const GridField& w, const GridField& f);

// --- collar operators -----------------------------------------------------

/// L0 f = (D+2)(D-1) f + T^2 f_YY  =  T^2 f_TT + 2 T f_T - 2 f + T^2 f_YY
CollarField apply_L0(const CollarField& f);

/// L1 f = 2 T d_y (D+1) dY f + T (Delta d) D f
CollarField apply_L1(const CollarField& f);

/// Extension F1[k]: coincides with k for T <= theta, even reflection about
/// T = theta damped by a C^2 cutoff, zero for T >= 2 theta (hence for T >= 2).
/// Evaluates continuously in T for a fixed column.
class ExtensionF1 {
public:
    explicit ExtensionF1(const CollarField& k);
    double operator()(double T, int column) const;
    double trace(int column) const { return k0_[column]; }

private:
    const CollarField* k_;
    std::vector<double> k0_;  // T = 0 values per column
    double interp_column(double T, int column) const;
};

/// Mellin-type smoothing: k~ = int_1^inf F1[k](T sigma, Y) dsigma / sigma^2.
/// Satisfies (D-1)k~ = -k on the chart and k~(0, Y) = k(0, Y).
CollarField tilde_F2(const CollarField& k);

/// Mixed-BC Poisson solve: Delta' h = -k~, h(0, Y) = 0, h_T(theta, Y) = 0,
/// periodic in Y.  Returns h on rows 0..nT (row 0 identically zero).
/// Direct solve by Fourier transform in Y and tridiagonal solves in T.
std::vector<double> solve_h(const CollarField& k_tilde);  // (nT + 1) x nY row-major

/// w1 = T^{-2} (D-1) h via the stable integral form
/// w1(T, Y) = int_0^1 sigma h_TT(T sigma, Y) dsigma; trace w1(0,Y) = h_TT(0,Y)/2.
CollarField w1_from_h(const CollarField& k_tilde_like, const std::vector<double>& h);

/// Direct evaluation T^{-2}(T h_T - h), for cross-validation away from T = 0.
CollarField w1_direct(const CollarField& k_tilde_like, const std::vector<double>& h);

/// Right inverse of L0: G = w1_from_h . solve_h . tilde_F2.
CollarField right_inverse_G(const CollarField& k);

struct FixedPointResult {
    CollarField w0;
    int iterations = 0;
    double contraction_estimate = 0.0;  // ||w2 - w1|| / ||w1 - w0||
    std::vector<double> step_norms;
};

/// Contraction iteration w0 = G[-2 Delta d] - G[L1 w0].  Throws
/// std::runtime_error if the measured contraction factor reaches 0.9
/// (theta too large).
FixedPointResult w0_fixed_point(const std::shared_ptr<const CollarChart>& chart, double tol = 1e-11,
                                int max_iters = 200);

// --- sub/super solutions --------------------------------------------------

struct SubSuperFields {
    GridField u_plus;   // u_A  (super-solution candidate)
    GridField u_minus;  // u_{-A} (sub-solution candidate)
    GridField w0_on_grid;
    GridField diag_plus;   // L w_A + (2 + d w_A) Delta d on the chart grid
    GridField diag_minus;
};

/// u_{+-A} = -ln[2d + d^2 (w0 +- A d ln d)] on grid nodes inside the chart.
/// Throws std::domain_error if 2 + d w_A <= 0 somewhere.
SubSuperFields sub_super(const CollarField& w0, double A,
                         const std::shared_ptr<const Grid>& grid);

/// Diagnostic sign fields on the collar grid: L w_{+-A} + (2 + d w_{+-A}) Delta d.
std::pair<CollarField, CollarField> sub_super_diagnostic(const CollarField& w0, double A);

// --- weighted Holder seminorms -------------------------------------------

struct HolderReport {
    double alpha = 0.5;
    int weight = 0;  // j in {0, 1, 2}
    double seminorm = 0.0;
    Vec2 witness_p, witness_q;
    std::vector<double> class_max;  // max quotient per dyadic distance class
    size_t pairs_sampled = 0;
};

/// max over point pairs of |g(p) - g(q)| / |p - q|^alpha for a (possibly
/// vector-valued) sample set g; pairs are exhaustive up to 10^4 points,
/// otherwise 10^6 seeded random pairs grouped into dyadic distance classes.
HolderReport holder_seminorm_points(const std::vector<Vec2>& pts,
                                    const std::vector<std::vector<double>>& vals, double alpha,
                                    int weight, uint64_t seed = 12345);

/// T^j grad^j f on a collar field, returned as point samples for the
/// seminorm; j in {0, 1, 2}.
HolderReport holder_seminorm(const CollarField& f, double alpha, int weight,
                             uint64_t seed = 12345);

}  // namespace liouville
