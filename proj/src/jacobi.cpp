#include "nle/jacobi.hpp"

#include "nle/errors.hpp"

#include <algorithm>

namespace nle {

namespace {

Real off_diagonal_norm(const Mat& a) {
    Real s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return sqrt(2 * s);
}

Real frobenius_norm(const Mat& a) {
    Real s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigen(const Mat& symmetric, const JacobiOptions& opts) {
    const int n = symmetric.rows();
    if (n != symmetric.cols())
        throw Error("jacobi_eigen: matrix must be square");

    Mat a = symmetric;
    JacobiResult out;
    out.vectors = opts.want_vectors ? Mat::identity(n) : Mat();

    Real rel_tol = opts.rel_tol;
    if (rel_tol <= 0) {
        // Tolerance follows the precision the entries carry, not the global
        // default, so the solver stays correct inside worker threads.
        unsigned digits = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) digits = std::max(digits, a(i, j).precision());
        rel_tol = pow(Real(10), -(digits > 11 ? static_cast<int>(digits) - 10 : 1));
    }
    const Real norm = frobenius_norm(a);
    const Real target = norm > 0 ? Real(rel_tol * norm) : rel_tol;

    if (n == 1) {
        out.values = {a(0, 0)};
        return out;
    }

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            out.values.resize(n);
            for (int i = 0; i < n; ++i) out.values[i] = a(i, i);
            out.sweeps = sweep;
            return out;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Real apq = a(p, q);
                if (apq == 0)
                    continue;
                // Stable rotation choice (smaller angle root).
                const Real theta = (a(q, q) - a(p, p)) / (2 * apq);
                Real t;
                if (theta >= 0)
                    t = 1 / (theta + sqrt(1 + theta * theta));
                else
                    t = -1 / (-theta + sqrt(1 + theta * theta));
                const Real c = 1 / sqrt(1 + t * t);
                const Real s = t * c;

                for (int i = 0; i < n; ++i) {
                    const Real aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const Real apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                if (opts.want_vectors) {
                    for (int i = 0; i < n; ++i) {
                        const Real vip = out.vectors(i, p), viq = out.vectors(i, q);
                        out.vectors(i, p) = c * vip - s * viq;
                        out.vectors(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
    }
    throw ConvergenceError("jacobi_eigen: no convergence within sweep limit");
}

}  // namespace nle
