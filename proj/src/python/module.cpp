// Python bindings for the main operations: domains, exact radial solutions,
// the trimmed Dirichlet solver, near-boundary expansion fits, and the collar
// fixed point for w0.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liouville/analysis.hpp"
#include "liouville/fuchsian.hpp"
#include "liouville/io.hpp"
#include "liouville/oracles.hpp"
#include "liouville/solver.hpp"

namespace py = pybind11;
using namespace liouville;

namespace {

py::dict field_dict(const GridField& f) {
    py::dict d;
    d["nx"] = f.grid->nx;
    d["ny"] = f.grid->ny;
    d["origin"] = py::make_tuple(f.grid->origin.x, f.grid->origin.y);
    d["h"] = f.grid->h;
    d["trim"] = f.grid->trim;
    d["values"] = f.values;  // row-major, NaN outside the interior mask
    return d;
}

}  // namespace

PYBIND11_MODULE(_liouville, m) {
    m.doc() = "maximal boundary blow-up solutions of -lap u + 4 e^{2u} = 0";

    py::class_<Domain2D, std::shared_ptr<Domain2D>>(m, "Domain")
        .def_static("circle", [](double r) { return std::make_shared<Domain2D>(Domain2D::circle(r)); },
                    py::arg("radius"))
        .def_static("ellipse",
                    [](double a, double b) { return std::make_shared<Domain2D>(Domain2D::ellipse(a, b)); },
                    py::arg("a"), py::arg("b"))
        .def_static("strip",
                    [](double xmin, double xmax, double height) {
                        return std::make_shared<Domain2D>(Domain2D::strip(xmin, xmax, height));
                    })
        .def_static("from_file",
                    [](const std::string& path) {
                        return std::const_pointer_cast<Domain2D>(read_domain_file(path));
                    })
        .def_property_readonly("reach", &Domain2D::reach)
        .def_property_readonly("hash", &Domain2D::hash)
        .def("distance", [](const Domain2D& d, double x, double y) { return d.project({x, y}).d; })
        .def("curvature_at", &Domain2D::curvature_at);

    m.def(
        "exact_disk_v",
        [](double r0, double h) {
            auto dom = std::make_shared<Domain2D>(Domain2D::circle(r0));
            auto grid = std::make_shared<Grid>(build_grid(dom, h));
            return field_dict(RadialOracle::disk(r0).sample_v(grid, false));
        },
        py::arg("r0"), py::arg("h"), "closed-form hyperbolic radius v on a disk grid");

    m.def(
        "solve_trimmed",
        [](const std::shared_ptr<Domain2D>& dom, double h_trim, int order, double h) {
            auto [u, rep] = trimmed_solve(dom, h_trim, order, h);
            py::dict d = field_dict(u);
            d["converged"] = rep.converged;
            d["iterations"] = rep.iterations;
            return d;
        },
        py::arg("domain"), py::arg("h_trim"), py::arg("order"), py::arg("h"),
        "Dirichlet solve of the blow-up problem on {d > h_trim}");

    m.def(
        "fit_expansion",
        [](const std::shared_ptr<Domain2D>& dom, py::dict field, std::vector<double> probes) {
            auto grid = std::make_shared<Grid>(
                build_grid(dom, field["h"].cast<double>(), field["trim"].cast<double>()));
            GridField f(grid);
            f.values = field["values"].cast<std::vector<double>>();
            const ExpansionFit fit = fit_expansion(f, probes);
            py::list out;
            for (const auto& p : fit.probes) {
                py::dict e;
                e["s"] = p.s;
                e["kappa"] = p.kappa;
                e["c1"] = p.c1;
                e["c2"] = p.c2;
                e["rms_residual"] = p.rms_residual;
                out.append(e);
            }
            return out;
        },
        py::arg("domain"), py::arg("field"), py::arg("probes"),
        "least-squares fit of v ~ c1 d + c2 d^2 along boundary normals; expects a "
        "field dict for v = e^{-u}");

    m.def(
        "w0_trace",
        [](const std::shared_ptr<Domain2D>& dom, double s0, double theta) {
            auto chart = std::make_shared<const CollarChart>(dom, s0, theta);
            const FixedPointResult fp = w0_fixed_point(chart);
            py::dict d;
            d["trace"] = fp.w0.trace;
            std::vector<double> kappa(chart->nY());
            for (int j = 0; j < chart->nY(); ++j) kappa[j] = chart->kappa_trace(j);
            d["kappa"] = kappa;
            d["iterations"] = fp.iterations;
            d["contraction_estimate"] = fp.contraction_estimate;
            return d;
        },
        py::arg("domain"), py::arg("s0"), py::arg("theta"),
        "boundary trace of the leading collar correction w0 (expected ~ -kappa)");
}
