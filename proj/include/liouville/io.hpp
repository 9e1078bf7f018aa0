#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liouville/fuchsian.hpp"
#include "liouville/grid.hpp"

namespace liouville {

/// Thrown by the parsers with a message carrying file, line, and field names.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Domain description files: plain "key = value" lines, '#' comments.
///   kind = circle | ellipse | annulus | strip | fourier | spline
///   circle:  radius, [center = x y]
///   ellipse: a, b, [center = x y]
///   annulus: r0, [center = x y]
///   strip:   xmin, xmax, height
///   fourier: ax, bx, ay, by  (space-separated coefficient arrays)
///   spline:  points = x0 y0 x1 y1 ...  (closed CCW control polygon)
///   optional: reach = r  (overrides the estimated reach)
std::shared_ptr<const Domain2D> parse_domain_text(const std::string& text,
                                                  const std::string& source_name);
std::shared_ptr<const Domain2D> read_domain_file(const std::string& path);

/// Grid field files: text header (nx, ny, origin, spacing, trim, margin,
/// domain hash) followed by row-major node values, one per line, full
/// precision.  Reading rebuilds the grid from the domain and verifies the
/// header.
void write_field(const std::string& path, const GridField& f);
GridField read_field(const std::string& path, const std::shared_ptr<const Domain2D>& domain);

/// Collar field files: same value layout with a chart header block
/// (base point, theta, rotation).  Values are written trace row first.
void write_collar_field(const std::string& path, const CollarField& f);

struct CollarFieldData {
    int nT = 0, nY = 0;
    double theta = 0.0, s0 = 0.0;
    Vec2 base_point, e1;
    std::string domain_hash;
    std::vector<double> trace;   // size nY (may be empty)
    std::vector<double> values;  // nT x nY row-major
};
CollarFieldData read_collar_field(const std::string& path);

}  // namespace liouville
