#pragma once

#include <memory>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

/// Boundary-fitted collar chart at a boundary point P: coordinates
/// (T, Y) with T = d(x, y) and Y the tangential coordinate, after the rigid
/// motion that sends P to the origin and grad d to (1, 0).
/// The chart covers (0, theta) x (-theta, theta), sampled on a uniform grid
/// with nT rows in T (plus the T = 0 row) and nY + 1 columns in Y (both ends
/// stored so Y-periodicity can be checked).
class CollarChart {
public:
    /// For parametric domains; throws if the chart Jacobian d_x degenerates
    /// inside the chart (theta too large).
    CollarChart(std::shared_ptr<const Domain2D> domain, double s0, double theta, int nT = 48,
                int nY = 96);

    /// Flat chart of a strip domain (d_y = 0, Delta d = 0); y0 is the base
    /// point height on the wall x = 0.
    static CollarChart flat(std::shared_ptr<const Domain2D> strip_domain, double y0, double theta,
                            int nT = 48, int nY = 96);

    double theta() const { return theta_; }
    int nT() const { return nT_; }
    int nY() const { return nY_; }
    double hT() const { return theta_ / nT_; }
    double hY() const { return 2 * theta_ / nY_; }
    Vec2 base_point() const { return P_; }
    double base_parameter() const { return s0_; }
    const std::shared_ptr<const Domain2D>& domain() const { return domain_; }

    /// chart frame: e1 = grad d at P (inward normal), e2 = rot90(e1)
    Vec2 e1() const { return e1_; }
    Vec2 e2() const { return e2_; }

    /// (T, Y) -> world point; exact inverse of to_chart on the chart.
    Vec2 to_world(double T, double Y) const;
    /// world -> (T, Y); T from the nearest-point projection.
    std::pair<double, double> to_chart(Vec2 p) const;

    /// sampled coefficient fields; i in [0, nT], j in [0, nY]
    double d_y(int i, int j) const { return dy_[index(i, j)]; }
    double laplacian_d(int i, int j) const { return lap_d_[index(i, j)]; }
    /// curvature at the boundary foot below chart node (0, Y_j)
    double kappa_trace(int j) const { return kappa_[j]; }

    double T_of(int i) const { return i * hT(); }
    double Y_of(int j) const { return -theta_ + j * hY(); }

    /// true if the domain is a strip (flat model)
    bool flat_model() const { return flat_; }

private:
    std::shared_ptr<const Domain2D> domain_;
    double s0_ = 0.0, theta_ = 0.0;
    int nT_ = 0, nY_ = 0;
    Vec2 P_, e1_, e2_;
    bool flat_ = false;
    std::vector<double> dy_, lap_d_, kappa_;
    std::vector<double> foot_s_;  // boundary parameter under each chart node

    size_t index(int i, int j) const { return static_cast<size_t>(i) * (nY_ + 1) + j; }
    double solve_foot(double T, double Y, double s_guess) const;
    void sample_fields();
};

}  // namespace liouville
