#pragma once

#include "liouville/geometry.hpp"
#include "liouville/grid.hpp"

namespace liouville {

/// Closed-form maximal solutions (hyperbolic radius) on disks and annuli.
/// Used as ground truth for the solver and the asymptotics checks.
struct RadialOracle {
    enum class Kind { Disk, Annulus };
    Kind kind = Kind::Disk;
    double r0 = 1.0;  // disk radius, or inner annulus radius (0 < r0 < 1)
    Vec2 center;

    static RadialOracle disk(double r0, Vec2 center = {0, 0});
    static RadialOracle annulus(double r0, Vec2 center = {0, 0});

    /// Hyperbolic radius v at p.  Throws std::domain_error outside the domain.
    double v(Vec2 p) const;
    /// v as a function of the radial coordinate alone (no domain check);
    /// useful for analytic continuation when sampling grids.
    double v_radial(double r) const;
    /// Maximal solution u = -ln v.
    double u(Vec2 p) const;

    /// Residual of -u'' - u'/r + 4 e^{2u} at radius r, with u = -ln(v_radial)
    /// differenced radially at the given step.  Brute-force PDE oracle.
    double radial_residual(double r, double step = 1e-4) const;

    /// Sample v on a grid.  With analytic continuation the formula is
    /// evaluated at every node of the bounding box, which keeps interpolation
    /// stencils complete near the boundary.
    GridField sample_v(const std::shared_ptr<const Grid>& grid, bool continuation = true) const;
    GridField sample_u(const std::shared_ptr<const Grid>& grid) const;
};

}  // namespace liouville
