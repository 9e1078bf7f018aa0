#include "liouville/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace liouville {

namespace {

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
    throw ParseError(src + ":" + std::to_string(line) + ": " + msg);
}

struct KeyValue {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

std::vector<double> parse_numbers(const std::string& src, int line, const std::string& key,
                                  const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) {
        in.clear();
        std::string rest;
        in >> rest;
        fail(src, line, "field '" + key + "': not a number: '" + rest + "'");
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// operator>> for double does not accept "nan"/"inf" on all standard libraries
bool read_double(std::istream& in, double& out) {
    std::string tok;
    if (!(in >> tok)) return false;
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size();
}

}  // namespace

std::shared_ptr<const Domain2D> parse_domain_text(const std::string& text,
                                                  const std::string& src) {
    std::map<std::string, KeyValue> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(src, lineno, "expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(src, lineno, "empty key");
        if (kv.count(key)) fail(src, lineno, "duplicate field '" + key + "'");
        kv[key] = {value, lineno};
    }

    auto get = [&](const std::string& key) -> const KeyValue& {
        const auto it = kv.find(key);
        if (it == kv.end()) fail(src, 0, "missing required field '" + key + "'");
        it->second.used = true;
        return it->second;
    };
    auto get_opt = [&](const std::string& key) -> const KeyValue* {
        const auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    };
    auto scalar = [&](const KeyValue& f, const std::string& key) {
        const auto v = parse_numbers(src, f.line, key, f.value);
        if (v.size() != 1) fail(src, f.line, "field '" + key + "' expects one number");
        return v[0];
    };
    auto vec2 = [&](const KeyValue& f, const std::string& key) -> Vec2 {
        const auto v = parse_numbers(src, f.line, key, f.value);
        if (v.size() != 2) fail(src, f.line, "field '" + key + "' expects two numbers");
        return {v[0], v[1]};
    };

    const std::string kind = get("kind").value;
    Vec2 center{0, 0};
    if (const auto* c = get_opt("center")) center = vec2(*c, "center");
    std::optional<double> reach_override;
    if (const auto* r = get_opt("reach")) reach_override = scalar(*r, "reach");

    std::shared_ptr<Domain2D> dom;
    if (kind == "circle") {
        dom = std::make_shared<Domain2D>(Domain2D::circle(scalar(get("radius"), "radius"), center));
    } else if (kind == "ellipse") {
        dom = std::make_shared<Domain2D>(
            Domain2D::ellipse(scalar(get("a"), "a"), scalar(get("b"), "b"), center));
    } else if (kind == "annulus") {
        dom = std::make_shared<Domain2D>(Domain2D::annulus(scalar(get("r0"), "r0"), center));
    } else if (kind == "strip") {
        dom = std::make_shared<Domain2D>(Domain2D::strip(scalar(get("xmin"), "xmin"),
                                                         scalar(get("xmax"), "xmax"),
                                                         scalar(get("height"), "height")));
    } else if (kind == "fourier") {
        Curve::FourierCoeffs fc;
        const auto& fax = get("ax");
        fc.ax = parse_numbers(src, fax.line, "ax", fax.value);
        const auto& fay = get("ay");
        fc.ay = parse_numbers(src, fay.line, "ay", fay.value);
        if (const auto* f = get_opt("bx")) fc.bx = parse_numbers(src, f->line, "bx", f->value);
        if (const auto* f = get_opt("by")) fc.by = parse_numbers(src, f->line, "by", f->value);
        fc.bx.resize(fc.ax.size(), 0.0);
        fc.by.resize(fc.ay.size(), 0.0);
        dom = std::make_shared<Domain2D>(
            Domain2D::from_curve(Curve::fourier(std::move(fc)), reach_override));
        reach_override.reset();
    } else if (kind == "spline") {
        const auto& f = get("points");
        const auto v = parse_numbers(src, f.line, "points", f.value);
        if (v.size() < 8 || v.size() % 2 != 0)
            fail(src, f.line, "field 'points' expects at least 4 x-y pairs");
        std::vector<Vec2> pts(v.size() / 2);
        for (size_t k = 0; k < pts.size(); ++k) pts[k] = {v[2 * k], v[2 * k + 1]};
        dom = std::make_shared<Domain2D>(
            Domain2D::from_curve(Curve::spline(std::move(pts)), reach_override));
        reach_override.reset();
    } else {
        fail(src, get("kind").line, "unknown kind '" + kind + "'");
    }
    if (reach_override && (kind == "circle" || kind == "ellipse"))
        dom = std::make_shared<Domain2D>(
            Domain2D::from_curve(Curve{dom->curve()}, reach_override));

    for (const auto& [key, f] : kv)
        if (!f.used) fail(src, f.line, "unknown field '" + key + "' for kind '" + kind + "'");
    return dom;
}

std::shared_ptr<const Domain2D> read_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open domain file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_domain_text(text.str(), path);
}

void write_field(const std::string& path, const GridField& f) {
    const Grid& g = *f.grid;
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "liouville-field 1\n";
    out << "nx " << g.nx << "\nny " << g.ny << "\n";
    out << "origin " << fmt(g.origin.x) << " " << fmt(g.origin.y) << "\n";
    out << "spacing " << fmt(g.h) << "\n";
    out << "trim " << fmt(g.trim) << "\n";
    // the margin is recoverable from the domain box and the origin; stored for
    // an exact grid rebuild on read
    out << "domain " << g.domain->hash() << "\n";
    out << "values " << f.values.size() << "\n";
    for (double v : f.values) out << fmt(v) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

GridField read_field(const std::string& path, const std::shared_ptr<const Domain2D>& domain) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open field file");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "liouville-field" || version != 1)
        throw ParseError(path + ": not a field file (bad magic)");
    std::map<std::string, std::string> head;
    int nx = 0, ny = 0;
    double h = 0, trim = 0;
    Vec2 origin;
    std::string hash;
    size_t count = 0;
    std::string key;
    while (in >> key) {
        if (key == "nx") in >> nx;
        else if (key == "ny") in >> ny;
        else if (key == "origin") in >> origin.x >> origin.y;
        else if (key == "spacing") in >> h;
        else if (key == "trim") in >> trim;
        else if (key == "domain") in >> hash;
        else if (key == "values") { in >> count; break; }
        else throw ParseError(path + ": unknown header field '" + key + "'");
    }
    if (!in || nx <= 0 || ny <= 0 || h <= 0) throw ParseError(path + ": incomplete header");
    if (hash != domain->hash())
        throw ParseError(path + ": domain hash mismatch (file " + hash + ")");
    // recover the build margin from the stored origin
    const double margin = domain->bbox().lo.x - origin.x;
    auto grid = std::make_shared<Grid>(build_grid(domain, h, trim, margin));
    if (grid->nx != nx || grid->ny != ny ||
        std::abs(grid->origin.x - origin.x) > 1e-12 || std::abs(grid->origin.y - origin.y) > 1e-12)
        throw ParseError(path + ": grid header does not match the rebuilt grid");
    GridField f(grid);
    if (count != f.values.size()) throw ParseError(path + ": value count mismatch");
    for (size_t k = 0; k < count; ++k)
        if (!read_double(in, f.values[k])) throw ParseError(path + ": truncated values");
    return f;
}

void write_collar_field(const std::string& path, const CollarField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    const CollarChart& ch = *f.chart;
    out << "liouville-collar-field 1\n";
    out << "nT " << f.nT << "\nnY " << f.nY << "\n";
    out << "theta " << fmt(ch.theta()) << "\n";
    out << "base " << fmt(ch.base_point().x) << " " << fmt(ch.base_point().y) << "\n";
    out << "s0 " << fmt(ch.base_parameter()) << "\n";
    out << "rotation " << fmt(ch.e1().x) << " " << fmt(ch.e1().y) << "\n";
    out << "domain " << ch.domain()->hash() << "\n";
    out << "trace " << f.trace.size() << "\n";
    for (double v : f.trace) out << fmt(v) << "\n";
    out << "values " << f.values.size() << "\n";
    for (double v : f.values) out << fmt(v) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

CollarFieldData read_collar_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open collar field file");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "liouville-collar-field" || version != 1)
        throw ParseError(path + ": not a collar field file (bad magic)");
    CollarFieldData d;
    std::string key;
    size_t ntrace = 0, nvals = 0;
    while (in >> key) {
        if (key == "nT") in >> d.nT;
        else if (key == "nY") in >> d.nY;
        else if (key == "theta") in >> d.theta;
        else if (key == "base") in >> d.base_point.x >> d.base_point.y;
        else if (key == "s0") in >> d.s0;
        else if (key == "rotation") in >> d.e1.x >> d.e1.y;
        else if (key == "domain") in >> d.domain_hash;
        else if (key == "trace") {
            in >> ntrace;
            d.trace.resize(ntrace);
            for (auto& v : d.trace)
                if (!read_double(in, v)) throw ParseError(path + ": truncated trace");
        } else if (key == "values") {
            in >> nvals;
            break;
        } else
            throw ParseError(path + ": unknown header field '" + key + "'");
    }
    if (!in || d.nT <= 0 || d.nY <= 0) throw ParseError(path + ": incomplete header");
    d.values.resize(nvals);
    for (auto& v : d.values)
        if (!read_double(in, v)) throw ParseError(path + ": truncated values");
    return d;
}

}  // namespace liouville
