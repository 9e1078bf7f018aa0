#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace liouville {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {x * a, y * a}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const;
};

struct BBox {
    Vec2 lo, hi;
};

/// Closed C2 parametric curve gamma(s), s in [0,1), counterclockwise.
/// Backed either by a truncated Fourier series per coordinate or by a
/// periodic cubic spline through control points.
class Curve {
public:
    struct FourierCoeffs {
        // x(s) = ax[0] + sum_k ax[k] cos(2 pi k s) + bx[k] sin(2 pi k s), same for y.
        std::vector<double> ax, bx, ay, by;  // bx[0], by[0] unused
    };

    static Curve fourier(FourierCoeffs c);
    static Curve circle(Vec2 center, double radius);
    static Curve ellipse(Vec2 center, double a, double b);
    static Curve spline(std::vector<Vec2> control_points);

    Vec2 point(double s) const;
    Vec2 deriv(double s) const;
    Vec2 deriv2(double s) const;

    /// Signed curvature; positive for a counterclockwise circle.
    /// Throws std::invalid_argument on a degenerate tangent.
    double curvature(double s) const;

    /// Unit tangent and inward unit normal (domain lies left of the tangent).
    Vec2 tangent(double s) const;
    Vec2 inward_normal(double s) const;

private:
    enum class Rep { Fourier, Spline };
    Rep rep_ = Rep::Fourier;
    FourierCoeffs fc_;
    // periodic cubic spline data: uniform knots, per-coordinate second derivatives
    std::vector<Vec2> pts_;
    std::vector<Vec2> m_;  // second derivatives at knots

    void eval(double s, Vec2* p, Vec2* d1, Vec2* d2) const;
};

struct Projection {
    double d = 0.0;    // signed distance: > 0 inside the domain
    Vec2 q;            // nearest boundary point
    double s = 0.0;    // parameter of q
    bool ambiguous = false;  // second minimum within tolerance beyond the reach
};

/// A smooth bounded planar domain.  Three kinds:
///   - parametric: closed CCW curve (Fourier or spline), simply connected
///   - strip: rectangle (xmin,xmax)x(0,height) whose "boundary" for distance
///     purposes is the line x = 0, so d = x and kappa = 0 (flat model)
///   - annulus: r0 < |p - center| < 1/r0 (used by the exact oracles)
class Domain2D {
public:
    enum class Kind { Parametric, Strip, Annulus };

    static Domain2D from_curve(Curve c, std::optional<double> reach_override = {});
    static Domain2D circle(double radius, Vec2 center = {0, 0});
    static Domain2D ellipse(double a, double b, Vec2 center = {0, 0});
    static Domain2D strip(double xmin, double xmax, double height);
    static Domain2D annulus(double r0, Vec2 center = {0, 0});

    Kind kind() const { return kind_; }
    const Curve& curve() const;
    double reach() const { return reach_; }
    BBox bbox() const { return bbox_; }

    /// Strip parameters (only valid for Kind::Strip).
    double strip_xmin() const { return strip_xmin_; }
    double strip_xmax() const { return strip_xmax_; }
    double strip_height() const { return strip_height_; }
    double annulus_r0() const { return annulus_r0_; }
    Vec2 center() const { return center_; }

    /// Nearest-point projection with signed distance (positive inside).
    /// Seeded by dense boundary sampling, refined by damped Newton on the
    /// stationarity condition (p - q) . gamma'(s) = 0.
    Projection project(Vec2 p) const;

    double curvature_at(double s) const;

    /// Short stable content hash of the defining data (for file headers).
    std::string hash() const;

private:
    Kind kind_ = Kind::Parametric;
    std::optional<Curve> curve_;
    double reach_ = 0.0;
    BBox bbox_;
    double strip_xmin_ = 0, strip_xmax_ = 0, strip_height_ = 0;
    double annulus_r0_ = 0;
    Vec2 center_;

    // dense boundary samples used to seed projections
    std::vector<Vec2> samples_;
    std::vector<double> sample_s_;

    void finalize(std::optional<double> reach_override);
    double estimate_reach() const;
};

}  // namespace liouville
