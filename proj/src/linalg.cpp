#include "liouville/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.resize(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> inv_diagonal(const CsrMatrix& A) {
    std::vector<double> d(A.n, 1.0);
    for (int i = 0; i < A.n; ++i)
        for (int32_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            if (A.col[k] == i && A.val[k] != 0.0) d[i] = 1.0 / A.val[k];
    return d;
}

}  // namespace

KrylovResult solve_cg(const CsrMatrix& A, const std::vector<double>& b, std::vector<double>& x,
                      const KrylovOptions& opts) {
    KrylovResult res;
    res.method = "cg";
    const int n = A.n;
    x.resize(n, 0.0);
    std::vector<double> r(n), z(n), p(n), Ap(n);
    A.multiply(x, Ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
    const std::vector<double> di = inv_diagonal(A);
    const double bnorm = std::max(norm2(b), 1e-300);
    double rnorm = norm2(r);
    if (rnorm / bnorm <= opts.rel_tol) {
        res.converged = true;
        res.final_residual = rnorm / bnorm;
        return res;
    }
    for (int i = 0; i < n; ++i) z[i] = di[i] * r[i];
    p = z;
    double rz = dot(r, z);
    double best = rnorm;
    int stall = 0;
    for (int it = 1; it <= opts.max_iters; ++it) {
        A.multiply(p, Ap);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0) || !std::isfinite(pAp)) break;  // lost positive-definiteness
        const double alpha = rz / pAp;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        rnorm = norm2(r);
        res.iterations = it;
        if (rnorm / bnorm <= opts.rel_tol) {
            res.converged = true;
            break;
        }
        if (rnorm < 0.999 * best) {
            best = rnorm;
            stall = 0;
        } else if (++stall > 200) {
            break;  // stagnation
        }
        for (int i = 0; i < n; ++i) z[i] = di[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    res.final_residual = rnorm / bnorm;
    return res;
}

KrylovResult solve_bicgstab(const CsrMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, const KrylovOptions& opts) {
    KrylovResult res;
    res.method = "bicgstab";
    const int n = A.n;
    x.resize(n, 0.0);
    std::vector<double> r(n), r0(n), p(n, 0.0), v(n, 0.0), s(n), t(n), ph(n), sh(n);
    A.multiply(x, t);
    for (int i = 0; i < n; ++i) r[i] = b[i] - t[i];
    r0 = r;
    const std::vector<double> di = inv_diagonal(A);
    const double bnorm = std::max(norm2(b), 1e-300);
    double rho = 1, alpha = 1, omega = 1;
    double rnorm = norm2(r);
    for (int it = 1; it <= opts.max_iters && rnorm / bnorm > opts.rel_tol; ++it) {
        const double rho_new = dot(r0, r);
        if (std::abs(rho_new) < 1e-300) break;
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        for (int i = 0; i < n; ++i) ph[i] = di[i] * p[i];
        A.multiply(ph, v);
        alpha = rho / dot(r0, v);
        for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        for (int i = 0; i < n; ++i) sh[i] = di[i] * s[i];
        A.multiply(sh, t);
        const double tt = dot(t, t);
        omega = (tt > 0) ? dot(t, s) / tt : 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * ph[i] + omega * sh[i];
            r[i] = s[i] - omega * t[i];
        }
        rnorm = norm2(r);
        res.iterations = it;
        if (std::abs(omega) < 1e-300) break;
    }
    res.converged = rnorm / bnorm <= opts.rel_tol;
    res.final_residual = rnorm / bnorm;
    return res;
}

KrylovResult solve_spd_like(const CsrMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, const KrylovOptions& opts) {
    std::vector<double> x0 = x;
    KrylovResult res = solve_cg(A, b, x, opts);
    if (res.converged) return res;
    x = x0;
    KrylovResult res2 = solve_bicgstab(A, b, x, opts);
    res2.iterations += res.iterations;
    return res2;
}

std::vector<double> solve_tridiag(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> sup, std::vector<double> rhs) {
    const size_t n = diag.size();
    if (sub.size() != n - 1 || sup.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("solve_tridiag: size mismatch");
    for (size_t i = 1; i < n; ++i) {
        const double m = sub[i - 1] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    return rhs;
}

}  // namespace liouville
