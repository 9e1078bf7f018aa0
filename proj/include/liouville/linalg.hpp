#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace liouville {

/// Compressed sparse row matrix, fixed pattern.
struct CsrMatrix {
    int n = 0;
    std::vector<int32_t> row_ptr;
    std::vector<int32_t> col;
    std::vector<double> val;

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

struct KrylovResult {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    std::string method;  // "cg" or "bicgstab"
};

struct KrylovOptions {
    double rel_tol = 1e-12;
    int max_iters = 100000;
};

/// Jacobi-preconditioned conjugate gradient.  Iteration order is fixed, so
/// results are deterministic.
KrylovResult solve_cg(const CsrMatrix& A, const std::vector<double>& b, std::vector<double>& x,
                      const KrylovOptions& opts);

/// Jacobi-preconditioned BiCGStab, used as a fallback when the Shortley-Weller
/// rows make the system too nonsymmetric for CG.
KrylovResult solve_bicgstab(const CsrMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, const KrylovOptions& opts);

/// CG first, BiCGStab on stagnation or breakdown.
KrylovResult solve_spd_like(const CsrMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, const KrylovOptions& opts);

/// Tridiagonal solve (Thomas), diag/sub/super of length n, n-1, n-1.
std::vector<double> solve_tridiag(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> sup, std::vector<double> rhs);

}  // namespace liouville
