// Command-line front end: solve | exact | w0 | verify | convergence.
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical non-convergence / insufficient resolution.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "liouville/analysis.hpp"
#include "liouville/fuchsian.hpp"
#include "liouville/io.hpp"
#include "liouville/oracles.hpp"
#include "liouville/solver.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace liouville;

namespace {

constexpr int kExitOk = 0, kExitCheckFail = 1, kExitConfig = 2, kExitNumeric = 3;

struct CommonOpts {
    std::string domain_path;
    std::string out_dir = ".";
    double h = 1.0 / 64;
    uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--domain", c.domain_path, "domain description file")->required();
    cmd->add_option("--out", c.out_dir, "output directory");
    cmd->add_option("--h-grid", c.h, "grid spacing")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "seed for randomized samplers");
}

void write_json_file(const fs::path& p, const json& j) {
    std::ofstream out(p);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

// timestamps live in a separate file so the main reports are reproducible
void write_metadata(const fs::path& dir, const std::string& command) {
    const auto now = std::chrono::system_clock::now();
    json meta;
    meta["command"] = command;
    meta["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    write_json_file(dir / "metadata.json", meta);
}

json report_of(const SolveReport& r) {
    json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["residual_norms"] = r.residual_norms;
    j["linear_iters"] = r.linear_iters;
    j["damping_used"] = r.damping_used;
    j["linear_method"] = r.linear_method;
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

int cmd_solve(const CommonOpts& c, double h_trim, int order) {
    const auto dom = read_domain_file(c.domain_path);
    fs::create_directories(c.out_dir);
    auto [u, rep] = trimmed_solve(dom, h_trim, order, c.h);
    GridField v(u.grid), w(u.grid);
    for (size_t k = 0; k < u.values.size(); ++k)
        v.values[k] = std::isfinite(u.values[k]) ? std::exp(-u.values[k]) : u.values[k];
    w = renormalize(v);
    write_field(fs::path(c.out_dir) / "u.field", u);
    write_field(fs::path(c.out_dir) / "v.field", v);
    write_field(fs::path(c.out_dir) / "w.field", w);
    json j = report_of(rep);
    j["h"] = c.h;
    j["h_trim"] = h_trim;
    j["order"] = order;
    j["partial_outputs"] = !rep.converged;
    write_json_file(fs::path(c.out_dir) / "solve_report.json", j);
    write_metadata(c.out_dir, "solve");
    if (!rep.converged) {
        std::cerr << "solve: did not converge: " << rep.failure << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_exact(const CommonOpts& c) {
    const auto dom = read_domain_file(c.domain_path);
    if (dom->kind() != Domain2D::Kind::Parametric && dom->kind() != Domain2D::Kind::Annulus)
        throw CLI::ValidationError("exact", "domain kind must be circle or annulus");
    RadialOracle oracle;
    if (dom->kind() == Domain2D::Kind::Annulus) {
        oracle = RadialOracle::annulus(dom->annulus_r0(), dom->center());
    } else {
        // only circles have a closed form; reject other curves
        const double r = (dom->curve().point(0) - dom->center()).norm();
        for (double s : {0.17, 0.5, 0.77}) {
            if (std::abs((dom->curve().point(s) - dom->center()).norm() - r) > 1e-9)
                throw CLI::ValidationError("exact", "parametric domain is not a circle");
        }
        oracle = RadialOracle::disk(r, dom->center());
    }
    fs::create_directories(c.out_dir);
    auto grid = std::make_shared<Grid>(build_grid(dom, c.h));
    const GridField v = oracle.sample_v(grid);
    const GridField u = oracle.sample_u(grid);
    const GridField w = renormalize(v);
    write_field(fs::path(c.out_dir) / "v.field", v);
    write_field(fs::path(c.out_dir) / "u.field", u);
    write_field(fs::path(c.out_dir) / "w.field", w);
    write_metadata(c.out_dir, "exact");
    return kExitOk;
}

int cmd_w0(const CommonOpts& c, double theta, double s0) {
    const auto dom = read_domain_file(c.domain_path);
    fs::create_directories(c.out_dir);
    auto chart = std::make_shared<const CollarChart>(dom, s0, theta);
    FixedPointResult fp;
    try {
        fp = w0_fixed_point(chart);
    } catch (const std::runtime_error& e) {
        std::cerr << "w0: " << e.what() << "\n";
        return kExitNumeric;
    }
    write_collar_field(fs::path(c.out_dir) / "w0.collar", fp.w0);
    json j;
    j["iterations"] = fp.iterations;
    j["contraction_estimate"] = fp.contraction_estimate;
    j["step_norms"] = fp.step_norms;
    j["theta"] = theta;
    j["s0"] = s0;
    std::vector<double> trace(fp.w0.trace), kappa(chart->nY() + 1);
    for (int jj = 0; jj <= chart->nY(); ++jj) kappa[jj] = chart->kappa_trace(jj);
    j["trace"] = trace;
    j["kappa_trace"] = kappa;
    write_json_file(fs::path(c.out_dir) / "w0_report.json", j);
    write_metadata(c.out_dir, "w0");
    return kExitOk;
}

struct Check {
    std::string name;
    std::string status;  // "pass" | "fail" | "insufficient resolution"
    double measured = 0.0;
    double tolerance = 0.0;
};

int cmd_verify(const CommonOpts& c) {
    const auto dom = read_domain_file(c.domain_path);
    fs::create_directories(c.out_dir);
    std::vector<Check> checks;
    auto add = [&](const std::string& name, double measured, double tol, bool coarse_excuse) {
        Check ck{name, "pass", measured, tol};
        if (!(measured <= tol)) ck.status = coarse_excuse ? "insufficient resolution" : "fail";
        checks.push_back(ck);
    };
    const bool coarse = c.h > 1.0 / 32;

    // geometry: projection consistency at sampled points
    if (dom->kind() == Domain2D::Kind::Parametric) {
        double worst = 0.0;
        for (int k = 0; k < 32; ++k) {
            const double s = k / 32.0;
            const Vec2 q = dom->curve().point(s);
            const Vec2 p = q + dom->curve().inward_normal(s) * (0.3 * dom->reach());
            worst = std::max(worst, std::abs(dom->project(p).d - 0.3 * dom->reach()));
        }
        add("projection_consistency", worst, 1e-8, false);
    }

    // solve on the trimmed domain and run the analysis suite
    const double h_trim = std::max(0.05, 2 * c.h);
    auto [u, rep] = trimmed_solve(dom, h_trim, 2, c.h);
    if (!rep.converged) {
        std::cerr << "verify: solver did not converge\n";
        return kExitNumeric;
    }
    GridField v(u.grid);
    for (size_t k = 0; k < u.values.size(); ++k)
        v.values[k] = std::isfinite(u.values[k]) ? std::exp(-u.values[k]) : u.values[k];

    const IdentityReport ident = hyperbolic_identity(v);
    add("hyperbolic_identity_weighted", ident.max_weighted_residual, 50 * c.h * c.h + 1e-6, coarse);

    std::vector<double> probes;
    if (dom->kind() == Domain2D::Kind::Strip) {
        const double ymid = dom->strip_height() / 2;
        probes = {ymid * 0.6, ymid, ymid * 1.4};
    } else {
        probes = {0.0, 0.25, 0.5, 0.75};
    }
    // probe windows start clear of the trim line and keep enough samples for
    // the fits; if the geometry cannot accommodate them at this h, report
    // insufficient resolution instead of failing
    const double d_lo = h_trim + 2 * c.h;
    const double d_hi = std::max(d_lo + 6 * c.h, std::min(0.1, 0.45 * dom->reach()));
    auto infeasible = [&](const std::string& name, const std::string& why) {
        checks.push_back({name + " (" + why + ")", "insufficient resolution",
                          std::numeric_limits<double>::quiet_NaN(), 0.0});
    };
    try {
        const ExpansionFit fit = fit_expansion(v, probes, d_lo, d_hi);
        double c1_err = 0.0, c2_err = 0.0;
        for (const auto& p : fit.probes) {
            c1_err = std::max(c1_err, std::abs(p.c1 - 2.0));
            c2_err = std::max(c2_err, std::abs(p.c2 + p.kappa));
        }
        add("expansion_c1", c1_err, 0.05, coarse);
        add("expansion_c2_vs_kappa", c2_err, 0.25 * std::max(1.0, std::abs(fit.probes[0].kappa)),
            coarse);
    } catch (const std::invalid_argument& e) {
        infeasible("expansion_fit", e.what());
    }

    try {
        const auto grads = gradient_limit(v, probes, d_lo, d_hi);
        double g_err = 0.0;
        for (const auto& g : grads) g_err = std::max(g_err, std::abs(g.limit - 2.0));
        add("gradient_limit", g_err, 0.05, coarse);
    } catch (const std::invalid_argument& e) {
        infeasible("gradient_limit", e.what());
    }

    try {
        const auto ratios = log_ratio_check(u, probes, d_lo, std::min(0.2, 2 * d_hi));
        double sup_ratio = 0.0;
        for (const auto& r : ratios) sup_ratio = std::max(sup_ratio, r.sup_ratio);
        // measured constant reported; bounded loosely (no sharp constant available)
        add("log_ratio_bounded", sup_ratio, 50.0, coarse);
    } catch (const std::invalid_argument& e) {
        infeasible("log_ratio_bounded", e.what());
    }

    json j;
    j["domain"] = dom->hash();
    j["h"] = c.h;
    json arr = json::array();
    std::ofstream csv(fs::path(c.out_dir) / "verify.csv");
    csv << "check,status,measured,tolerance\n";
    bool any_fail = false, any_insufficient = false;
    for (const auto& ck : checks) {
        json e;
        e["name"] = ck.name;
        e["status"] = ck.status;
        e["measured"] = ck.measured;
        e["tolerance"] = ck.tolerance;
        arr.push_back(e);
        csv << ck.name << "," << ck.status << "," << ck.measured << "," << ck.tolerance << "\n";
        any_fail |= ck.status == "fail";
        any_insufficient |= ck.status == "insufficient resolution";
        std::cout << (ck.status == "pass" ? "[PASS] " : "[" + ck.status + "] ") << ck.name
                  << "  measured=" << ck.measured << " tol=" << ck.tolerance << "\n";
    }
    j["checks"] = arr;
    write_json_file(fs::path(c.out_dir) / "verify_report.json", j);
    write_metadata(c.out_dir, "verify");
    if (any_fail) return kExitCheckFail;
    if (any_insufficient) return kExitNumeric;
    return kExitOk;
}

int cmd_convergence(const CommonOpts& c, std::vector<double> hs, double h_trim, int order) {
    const auto dom = read_domain_file(c.domain_path);
    if (hs.size() < 3) throw CLI::ValidationError("convergence", "need at least 3 grid spacings");
    if (dom->kind() != Domain2D::Kind::Parametric)
        throw CLI::ValidationError("convergence", "task needs a circular domain with an oracle");
    const double r = (dom->curve().point(0) - dom->center()).norm();
    const RadialOracle oracle = RadialOracle::disk(r, dom->center());
    fs::create_directories(c.out_dir);
    const ConvergenceTable table = convergence_study(hs, [&](double h) {
        auto [u, rep] = trimmed_solve(dom, h_trim, order, h);
        if (!rep.converged) throw std::runtime_error("solver did not converge at h = " + std::to_string(h));
        double err = 0.0;
        for (int jj = 0; jj < u.grid->ny; ++jj)
            for (int ii = 0; ii < u.grid->nx; ++ii) {
                const size_t k = u.grid->idx(ii, jj);
                if (!u.grid->mask[k]) continue;
                err = std::max(err, std::abs(u.values[k] - oracle.u(u.grid->node(ii, jj))));
            }
        return err;
    });
    std::ofstream csv(fs::path(c.out_dir) / "convergence.csv");
    csv << "h,error,observed_order\n";
    json rows = json::array();
    for (size_t k = 0; k < table.rows.size(); ++k) {
        const double ord = k ? table.observed_orders[k - 1] : std::nan("");
        csv << table.rows[k].h << "," << table.rows[k].error << "," << ord << "\n";
        json e;
        e["h"] = table.rows[k].h;
        e["error"] = table.rows[k].error;
        if (k) e["observed_order"] = table.observed_orders[k - 1];
        rows.push_back(e);
        std::cout << "h=" << table.rows[k].h << "  err=" << table.rows[k].error;
        if (k) std::cout << "  order=" << table.observed_orders[k - 1];
        std::cout << "\n";
    }
    // least-squares slope of log(error) vs log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : table.rows) {
        const double x = std::log(row.h), y = std::log(std::max(row.error, 1e-300));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n = static_cast<double>(table.rows.size());
    const double fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::cout << "fitted order = " << fitted << "\n";

    json j;
    j["rows"] = rows;
    j["min_order"] = table.min_order();
    j["fitted_order"] = fitted;
    write_json_file(fs::path(c.out_dir) / "convergence_report.json", j);
    write_metadata(c.out_dir, "convergence");
    if (fitted >= 1.8) return kExitOk;
    // the boundary layer above the trim line dominates until the finest grid
    // resolves it; only call the study a failure once it is resolved
    const double h_min = *std::min_element(hs.begin(), hs.end());
    if (h_min > h_trim / 8) return kExitNumeric;
    return kExitCheckFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal boundary blow-up solutions of -lap u + 4 e^{2u} = 0 on planar domains"};
    app.require_subcommand(1);

    CommonOpts c;
    double h_trim = 0.05, theta = 0.2, s0 = 0.0;
    int order = 2;
    std::vector<double> hs;

    auto* solve = app.add_subcommand("solve", "Dirichlet solve on the trimmed domain {d > h_trim}");
    add_common(solve, c);
    solve->add_option("--h-trim", h_trim, "trim distance")->check(CLI::PositiveNumber);
    solve->add_option("--order", order, "boundary data order (1 or 2)")->check(CLI::Range(1, 2));

    auto* exact = app.add_subcommand("exact", "sample the closed-form solution (circle/annulus)");
    add_common(exact, c);

    auto* w0 = app.add_subcommand("w0", "collar fixed point for the leading correction w0");
    add_common(w0, c);
    w0->add_option("--theta", theta, "collar half-width")->check(CLI::PositiveNumber);
    w0->add_option("--s0", s0, "boundary base parameter");

    auto* verify = app.add_subcommand("verify", "run the invariant suite on a domain");
    add_common(verify, c);

    auto* conv = app.add_subcommand("convergence", "refinement study against the disk oracle");
    add_common(conv, c);
    conv->add_option("--hs", hs, "grid spacings (>= 3, decreasing)")->required();
    conv->add_option("--h-trim", h_trim, "trim distance")->check(CLI::PositiveNumber);
    conv->add_option("--order", order, "boundary data order (1 or 2)")->check(CLI::Range(1, 2));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (solve->parsed()) return cmd_solve(c, h_trim, order);
        if (exact->parsed()) return cmd_exact(c);
        if (w0->parsed()) return cmd_w0(c, theta, s0);
        if (verify->parsed()) return cmd_verify(c);
        if (conv->parsed()) return cmd_convergence(c, hs, h_trim, order);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
