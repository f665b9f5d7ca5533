#include "nle/fock_oracle.hpp"

#include "nle/errors.hpp"

#include <cmath>
#include <vector>

namespace nle {

namespace {

// Unit-frequency oscillator eigenfunctions phi_0..phi_{m-1} at x, by the
// stable normalized recursion.
void hermite_functions(double x, int m, std::vector<double>& out) {
    out.resize(static_cast<size_t>(m));
    const double pi_quarter = std::pow(M_PI, -0.25);
    out[0] = pi_quarter * std::exp(-0.5 * x * x);
    if (m == 1)
        return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (int k = 1; k + 1 < m; ++k)
        out[static_cast<size_t>(k) + 1] = std::sqrt(2.0 / (k + 1)) * x * out[static_cast<size_t>(k)] -
                                          std::sqrt(static_cast<double>(k) / (k + 1)) *
                                              out[static_cast<size_t>(k) - 1];
}

// Plain cyclic Jacobi for a small symmetric double matrix; local on purpose.
std::vector<double> eigenvalues_sym(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[static_cast<size_t>(p) * n + q] * a[static_cast<size_t>(p) * n + q];
        if (off < 1e-28)
            break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<size_t>(p) * n + q];
                if (std::abs(apq) < 1e-300)
                    continue;
                const double theta =
                    (a[static_cast<size_t>(q) * n + q] - a[static_cast<size_t>(p) * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[static_cast<size_t>(i) * n + p];
                    const double aiq = a[static_cast<size_t>(i) * n + q];
                    a[static_cast<size_t>(i) * n + p] = c * aip - s * aiq;
                    a[static_cast<size_t>(i) * n + q] = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a[static_cast<size_t>(p) * n + j];
                    const double aqj = a[static_cast<size_t>(q) * n + j];
                    a[static_cast<size_t>(p) * n + j] = c * apj - s * aqj;
                    a[static_cast<size_t>(q) * n + j] = s * apj + c * aqj;
                }
            }
        }
    }
    std::vector<double> vals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = a[static_cast<size_t>(i) * n + i];
    return vals;
}

}  // namespace

double two_oscillator_entropy_fock(double w, double eps, int basis_dim, int grid_n,
                                   double grid_half_width) {
    if (!(w > 0) || !(w * w - eps * eps > 0))
        throw InvalidSpecError("fock oracle: width matrix must be positive definite");
    const int m = basis_dim;
    const int n = grid_n;
    const double h = 2.0 * grid_half_width / n;
    const double norm = std::pow((w * w - eps * eps) / (M_PI * M_PI), 0.25);

    // Midpoint grid; the integrand decays like a Gaussian so the rule is
    // effectively spectral.
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = -grid_half_width + (i + 0.5) * h;

    // phi[i*m + k] = phi_k(x_i) * sqrt(h)
    std::vector<double> phi(static_cast<size_t>(n) * m);
    std::vector<double> buf;
    const double sqrt_h = std::sqrt(h);
    for (int i = 0; i < n; ++i) {
        hermite_functions(x[static_cast<size_t>(i)], m, buf);
        for (int k = 0; k < m; ++k) phi[static_cast<size_t>(i) * m + k] = buf[static_cast<size_t>(k)] * sqrt_h;
    }

    // c = Phi^T Psi Phi, streaming rows of Psi(q1, q2) = psi ground state.
    std::vector<double> psi_phi(static_cast<size_t>(n) * m, 0.0);
    std::vector<double> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double qi = x[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double qj = x[static_cast<size_t>(j)];
            row[static_cast<size_t>(j)] =
                norm * std::exp(-0.5 * (w * qi * qi + 2.0 * eps * qi * qj + w * qj * qj));
        }
        for (int j = 0; j < n; ++j) {
            const double r = row[static_cast<size_t>(j)];
            if (r == 0.0)
                continue;
            const double* pj = &phi[static_cast<size_t>(j) * m];
            double* out = &psi_phi[static_cast<size_t>(i) * m];
            for (int k = 0; k < m; ++k) out[k] += r * pj[k];
        }
    }
    std::vector<double> c(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* pi_row = &phi[static_cast<size_t>(i) * m];
        const double* sp = &psi_phi[static_cast<size_t>(i) * m];
        for (int a = 0; a < m; ++a) {
            const double pa = pi_row[a];
            if (pa == 0.0)
                continue;
            double* ca = &c[static_cast<size_t>(a) * m];
            for (int b = 0; b < m; ++b) ca[b] += pa * sp[b];
        }
    }

    // Reduced density matrix rho = c c^T, normalized to unit trace.
    std::vector<double> rho(static_cast<size_t>(m) * m, 0.0);
    double trace = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k)
                acc += c[static_cast<size_t>(a) * m + k] * c[static_cast<size_t>(b) * m + k];
            rho[static_cast<size_t>(a) * m + b] = acc;
            rho[static_cast<size_t>(b) * m + a] = acc;
        }
        trace += rho[static_cast<size_t>(a) * m + a];
    }
    if (!(trace > 0))
        throw NumericalError("fock oracle: reduced density matrix has non-positive trace");
    for (double& v : rho) v /= trace;

    std::vector<double> p = eigenvalues_sym(std::move(rho), m);
    double entropy = 0.0;
    for (double pk : p)
        if (pk > 1e-18)
            entropy -= pk * std::log(pk);
    return entropy;
}

}  // namespace nle
