#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace liouville {

/// Classic recursive adaptive Simpson with absolute tolerance.
/// Throws std::runtime_error on non-finite integrand values.
class AdaptiveSimpson {
public:
    explicit AdaptiveSimpson(double abs_tol = 1e-10, int max_depth = 40)
        : tol_(abs_tol), max_depth_(max_depth) {}

    double integrate(const std::function<double(double)>& f, double a, double b) const {
        if (a == b) return 0.0;
        const double fa = eval(f, a), fb = eval(f, b), fm = eval(f, 0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
        return recurse(f, a, b, fa, fm, fb, whole, tol_, max_depth_);
    }

private:
    double tol_;
    int max_depth_;

    static double eval(const std::function<double(double)>& f, double x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw std::runtime_error("adaptive simpson: non-finite integrand");
        return v;
    }

    static double recurse(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = eval(f, lm), frm = eval(f, rm);
        const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace liouville
