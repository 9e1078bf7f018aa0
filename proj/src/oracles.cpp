#include "liouville/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

RadialOracle RadialOracle::disk(double r0, Vec2 center) {
    if (r0 <= 0) throw std::invalid_argument("disk oracle: r0 must be positive");
    return {Kind::Disk, r0, center};
}

RadialOracle RadialOracle::annulus(double r0, Vec2 center) {
    if (!(0 < r0 && r0 < 1)) throw std::invalid_argument("annulus oracle: need 0 < r0 < 1");
    return {Kind::Annulus, r0, center};
}

double RadialOracle::v_radial(double r) const {
    if (kind == Kind::Disk) return r0 - r * r / r0;
    // The sign convention uses |ln r0| so that v > 0 on the open annulus;
    // validated by the radial residual oracle and the boundary zeros.
    const double L = std::abs(std::log(r0));
    return 4.0 / M_PI * L * std::cos(M_PI / (2.0 * std::log(r0)) * std::log(r)) * r;
}

double RadialOracle::v(Vec2 p) const {
    const double r = (p - center).norm();
    if (kind == Kind::Disk) {
        if (r >= r0) throw std::domain_error("disk oracle: point outside the disk");
    } else {
        if (!(r > r0 && r < 1.0 / r0))
            throw std::domain_error("annulus oracle: point outside the open annulus");
    }
    return v_radial(r);
}

double RadialOracle::u(Vec2 p) const {
    const double vv = v(p);
    if (!(vv > 0)) throw std::domain_error("oracle u: v must be positive");
    return -std::log(vv);
}

double RadialOracle::radial_residual(double r, double /*step*/) const {
    // use the closed-form radial derivatives of v: differencing u = -ln v is
    // badly conditioned near the boundary circles
    const double v0 = v_radial(r);
    double dv, ddv;
    if (kind == Kind::Disk) {
        dv = -2.0 * r / r0;
        ddv = -2.0 / r0;
    } else {
        const double L = std::abs(std::log(r0));
        const double a = M_PI / (2.0 * std::log(r0));
        const double C = 4.0 / M_PI * L;
        const double c = std::cos(a * std::log(r)), s = std::sin(a * std::log(r));
        dv = C * (c - a * s);
        ddv = -C * a * (s + a * c) / r;
    }
    const double up = -dv / v0;
    const double upp = -ddv / v0 + (dv / v0) * (dv / v0);
    return -(upp + up / r) + 4.0 / (v0 * v0);
}

GridField RadialOracle::sample_v(const std::shared_ptr<const Grid>& grid, bool continuation) const {
    GridField out(grid);
    out.fill([&](Vec2 p) { return v_radial((p - center).norm()); }, continuation);
    return out;
}

GridField RadialOracle::sample_u(const std::shared_ptr<const Grid>& grid) const {
    GridField out(grid);
    out.fill([&](Vec2 p) { return -std::log(v_radial((p - center).norm())); }, false);
    return out;
}

}  // namespace liouville
