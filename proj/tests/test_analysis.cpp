#include <doctest.h>

#include <cmath>
#include <memory>

#include "liouville/analysis.hpp"
#include "liouville/oracles.hpp"

using namespace liouville;

namespace {

GridField disk_oracle_v(double h) {
    auto dom = std::make_shared<const Domain2D>(Domain2D::circle(1.0));
    auto grid = std::make_shared<Grid>(build_grid(dom, h));
    return RadialOracle::disk(1.0).sample_v(grid, true);
}

GridField strip_v(double h) {
    auto dom = std::make_shared<const Domain2D>(Domain2D::strip(0.0, 1.0, 1.0));
    auto grid = std::make_shared<Grid>(build_grid(dom, h));
    GridField v(grid);
    v.fill([](Vec2 p) { return 2 * p.x; }, true);
    return v;
}

}  // namespace

TEST_CASE("expansion fit on the closed-form disk field is exact") {
    const GridField v = disk_oracle_v(1.0 / 64);
    const ExpansionFit fit = fit_expansion(v, {0.0, 0.2, 0.45, 0.7});
    for (const auto& p : fit.probes) {
        CHECK(std::abs(p.c1 - 2.0) < 1e-6);
        CHECK(std::abs(p.c2 + 1.0) < 1e-6);
        CHECK(p.kappa == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("expansion fit on the flat strip field") {
    const GridField v = strip_v(1.0 / 32);
    const ExpansionFit fit = fit_expansion(v, {0.3, 0.5, 0.7}, 1.0 / 16, 0.4);
    for (const auto& p : fit.probes) {
        CHECK(std::abs(p.c1 - 2.0) < 1e-9);
        CHECK(std::abs(p.c2) < 1e-7);
    }
}

TEST_CASE("empty probe window is rejected") {
    const GridField v = disk_oracle_v(1.0 / 16);
    CHECK_THROWS_AS(fit_expansion(v, {0.0}, 0.09, 0.1), std::invalid_argument);
}

TEST_CASE("gradient extrapolation reaches the limiting slope 2") {
    const GridField v = disk_oracle_v(1.0 / 64);
    for (const auto& g : gradient_limit(v, {0.0, 0.25, 0.6}))
        CHECK(std::abs(g.limit - 2.0) < 1e-5);
}

TEST_CASE("logarithmic boundary law on the flat strip is near zero") {
    auto dom = std::make_shared<const Domain2D>(Domain2D::strip(0.0, 1.0, 1.0));
    auto grid = std::make_shared<Grid>(build_grid(dom, 1.0 / 64));
    GridField u(grid);
    u.fill([](Vec2 p) { return p.x > 0 ? -std::log(2 * p.x) : 0.0; }, true);
    // only off-node interpolation error remains
    for (const auto& r : log_ratio_check(u, {0.5}, 0.1, 0.2))
        CHECK(r.sup_ratio < 5e-3);
}

TEST_CASE("logarithmic boundary law on the disk is bounded") {
    auto dom = std::make_shared<const Domain2D>(Domain2D::circle(1.0));
    auto grid = std::make_shared<Grid>(build_grid(dom, 1.0 / 64));
    const GridField u = RadialOracle::disk(1.0).sample_u(grid);
    for (const auto& r : log_ratio_check(u, {0.0, 0.5}, 0.01, 0.2)) {
        CHECK(r.sup_ratio > 0.0);
        CHECK(r.sup_ratio < 5.0);
    }
}

TEST_CASE("window touching one half is rejected") {
    const GridField v = disk_oracle_v(1.0 / 16);
    CHECK_THROWS_AS(log_ratio_check(v, {0.0}, 0.01, 0.5), std::invalid_argument);
}

TEST_CASE("convergence table reports observed orders") {
    const ConvergenceTable t =
        convergence_study({0.1, 0.05, 0.025}, [](double h) { return h * h; });
    REQUIRE(t.observed_orders.size() == 2);
    CHECK(t.observed_orders[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t.min_order() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(convergence_study({0.1, 0.05}, [](double h) { return h; }),
                    std::invalid_argument);
}

TEST_CASE("metric identity holds for the closed-form disk field") {
    const GridField v = disk_oracle_v(1.0 / 64);
    const IdentityReport rep = hyperbolic_identity(v);
    CHECK(rep.nodes > 0);
    // v is quadratic: the five-point stencil is exact, residual at rounding level
    CHECK(rep.max_residual < 1e-9);
}
