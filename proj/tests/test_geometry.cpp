#include <doctest.h>

#include <cmath>

#include "liouville/geometry.hpp"

using namespace liouville;

TEST_CASE("circle curve: point, curvature, inward normal") {
    const Curve c = Curve::circle({0, 0}, 2.0);
    const Vec2 p = c.point(0.25);
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(2.0));
    for (double s : {0.0, 0.1, 0.37, 0.5, 0.9}) {
        CHECK(c.curvature(s) == doctest::Approx(0.5).epsilon(1e-10));
        const Vec2 n = c.inward_normal(s);
        const Vec2 q = c.point(s);
        // inward normal points to the center
        CHECK(n.x == doctest::Approx(-q.x / 2).epsilon(1e-10));
        CHECK(n.y == doctest::Approx(-q.y / 2).epsilon(1e-10));
    }
}

TEST_CASE("ellipse curvature extremes") {
    const Curve c = Curve::ellipse({0, 0}, 2.0, 1.0);
    // at (a, 0): kappa = a/b^2; at (0, b): kappa = b/a^2
    CHECK(c.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c.curvature(0.25) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("disk projection and signed distance") {
    const Domain2D dom = Domain2D::circle(1.0);
    const Projection pr = dom.project({0.3, 0.4});
    CHECK(pr.d == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pr.q.x == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(pr.q.y == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(dom.project({2.0, 0.0}).d == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(dom.reach() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ellipse reach equals the minimal radius of curvature") {
    const Domain2D dom = Domain2D::ellipse(2.0, 1.0);
    CHECK(dom.reach() == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("spline through circle samples approximates the circle") {
    std::vector<Vec2> pts;
    const int n = 48;
    for (int k = 0; k < n; ++k) {
        const double t = 2 * M_PI * k / n;
        pts.push_back({std::cos(t), std::sin(t)});
    }
    const Domain2D dom = Domain2D::from_curve(Curve::spline(pts));
    CHECK(std::abs(dom.project({0.5, 0.0}).d - 0.5) < 1e-4);
    CHECK(std::abs(dom.curvature_at(0.1) - 1.0) < 1e-2);
}

TEST_CASE("clockwise control polygon is rejected") {
    std::vector<Vec2> pts;
    for (int k = 0; k < 16; ++k) {
        const double t = -2 * M_PI * k / 16;  // clockwise
        pts.push_back({std::cos(t), std::sin(t)});
    }
    CHECK_THROWS_AS(Domain2D::from_curve(Curve::spline(pts)), std::invalid_argument);
}

TEST_CASE("strip domain distance is x") {
    const Domain2D dom = Domain2D::strip(0.0, 1.0, 1.0);
    CHECK(dom.project({0.3, 0.5}).d == doctest::Approx(0.3));
    CHECK(dom.kind() == Domain2D::Kind::Strip);
}

TEST_CASE("domain hash is stable and discriminating") {
    const Domain2D a = Domain2D::circle(1.0);
    const Domain2D b = Domain2D::circle(1.0);
    const Domain2D c = Domain2D::circle(2.0);
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
    CHECK(!a.hash().empty());
}

TEST_CASE("projection ambiguity beyond the reach is flagged") {
    const Domain2D ell = Domain2D::ellipse(2.0, 1.0);
    CHECK(ell.project({0.0, 0.0}).ambiguous);  // (0, 1) and (0, -1) tie
    const Domain2D dom = Domain2D::circle(1.0);
    CHECK(!dom.project({0.5, 0.0}).ambiguous);
}
