#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

/// Cartesian grid over the bounding box of a domain.  Interior nodes carry
/// the signed distance, its gradient, and the curvature at the nearest
/// boundary point.  Legs from an interior node to a masked-out neighbor store
/// the cut fraction to the level set {d = trim} (Shortley-Weller data).
struct Grid {
    Vec2 origin;
    double h = 0.0;
    int nx = 0, ny = 0;  // node counts
    double trim = 0.0;
    std::shared_ptr<const Domain2D> domain;

    std::vector<uint8_t> mask;       // 1 = interior (d > trim)
    std::vector<double> dist;        // signed distance to the true boundary
    std::vector<Vec2> dist_grad;     // grad d (unit, points inward)
    std::vector<double> s_near;      // parameter of the nearest boundary point
    std::vector<double> kappa_near;  // curvature at the nearest boundary point

    struct CutLeg {
        double frac = 1.0;  // fraction of h to the {d = trim} crossing, in (0, 1]
        Vec2 cut_point;     // crossing point on the level set
        double s_q = 0.0;   // nearest boundary parameter of cut_point
        double kappa_q = 0.0;
    };
    // per node, 4 directions: 0 = +x (E), 1 = -x (W), 2 = +y (N), 3 = -y (S)
    // index into cut_legs, or -1
    std::vector<std::array<int32_t, 4>> leg;
    std::vector<CutLeg> cut_legs;

    size_t size() const { return static_cast<size_t>(nx) * ny; }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx + i; }
    Vec2 node(int i, int j) const { return {origin.x + h * i, origin.y + h * j}; }
    bool interior(int i, int j) const {
        return i >= 0 && j >= 0 && i < nx && j < ny && mask[idx(i, j)];
    }

    int interior_count() const;
};

/// Scalar field on a grid; NaN at masked-out nodes.
struct GridField {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(std::shared_ptr<const Grid> g);

    double& at(int i, int j) { return values[grid->idx(i, j)]; }
    double at(int i, int j) const { return values[grid->idx(i, j)]; }

    /// Fill from a function of the node position (interior nodes only unless
    /// everywhere = true).
    void fill(const std::function<double(Vec2)>& f, bool everywhere = false);
};

/// Build a grid whose interior mask is {d > trim}.  Throws if no node is
/// interior (grid too coarse) or trim is not below the inradius.
Grid build_grid(std::shared_ptr<const Domain2D> domain, double h, double trim = 0.0,
                double margin = 0.0);

/// Tensor 4-point Lagrange interpolation of a field; falls back to bilinear
/// near the mask edge, empty if no complete low-order stencil exists.
std::optional<double> interpolate(const GridField& f, Vec2 p);

/// Central-difference gradient; NaN where the 4-neighbor stencil is incomplete.
void gradient(const GridField& f, GridField* fx, GridField* fy);

/// Plain 5-point Laplacian; NaN where the stencil is incomplete.
GridField laplacian5(const GridField& f);

/// Laplacian of the distance function from the collar identity
/// Delta d = -kappa / (1 - d kappa), evaluated per interior node.
GridField laplacian_of_distance(const std::shared_ptr<const Grid>& grid);

}  // namespace liouville
