#pragma once

#include "nle/errors.hpp"

#include <cmath>
#include <utility>

namespace nle {

// Integral of f(t) dt over [0, pi] for integrands that vanish at both
// endpoints, by the uniform trapezoidal rule with doubling refinement (each
// refinement reuses all previous samples). When f has a smooth odd periodic
// extension the rule is spectrally convergent; that is how the kernel
// integrals use it, after a sine-stretch substitution that flattens the
// corner of the odd-exponent symbol into an analytic function of t.
//
// noise_digits, when positive, declares the working precision of the samples:
// once successive refinements differ by less than the arithmetic noise floor
// sample_scale * pi * 10^{-(noise_digits-10)}, the value is accepted.
// Integrals that cancel to numerical zero never meet a relative tolerance,
// so this floor is what lets them terminate.
template <typename T, typename F>
T trapezoid_half_period(F&& f, const T& pi_val, double rel_tol, int noise_digits = 0,
                        long n0 = 16, long max_n = (1L << 21)) {
    using std::abs;
    long n = n0;
    T sum = 0;
    T sample_scale = 0;
    for (long k = 1; k < n; ++k) {  // endpoint samples vanish by contract
        const T v = f(pi_val * k / n);
        if (abs(v) > sample_scale)
            sample_scale = abs(v);
        sum += v;
    }
    T value = sum * pi_val / n;
    while (n <= max_n) {
        T mid = 0;
        for (long k = 0; k < n; ++k) {
            const T v = f(pi_val * (2 * k + 1) / (2 * n));
            if (abs(v) > sample_scale)
                sample_scale = abs(v);
            mid += v;
        }
        const T next = (value + mid * pi_val / n) / 2;
        const T err = abs(next - value);
        n *= 2;
        value = next;
        if (err <= rel_tol * abs(next))
            return value;
        if (noise_digits > 10) {
            T floor = sample_scale * pi_val;
            for (int d = 0; d < noise_digits - 10; ++d) floor /= 10;
            if (err <= floor)
                return value;
        }
    }
    throw ConvergenceError("trapezoid_half_period: refinement cap reached before tolerance");
}

namespace detail {

inline double simpson_panel(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_panel(a, fa, m, fm, flm);
    const double right = simpson_panel(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw ConvergenceError("integrate_adaptive: recursion depth exhausted");
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature for smooth double-precision integrands
// (holography module). Tolerance is applied as rel_tol * |first estimate|
// with abs_tol as a floor.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 1e-300, int max_depth = 48) {
    if (a == b)
        return 0.0;
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = detail::simpson_panel(a, fa, b, fb, fm);
    const double tol = std::max(std::abs(whole) * rel_tol, abs_tol);
    return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace nle
