#include "nle/bessel.hpp"

#include "nle/errors.hpp"

#include <cstdlib>

namespace nle {

Real bessel_i(int order, const Real& x) {
    const int s = std::abs(order);
    if (x < 0) {
        const Real v = bessel_i(s, Real(-x));
        return (s % 2 == 0) ? v : Real(-v);
    }
    if (x == 0)
        return s == 0 ? Real(1) : Real(0);

    const Real quarter_x2 = x * x / 4;
    // term_0 = (x/2)^s / s!
    Real term = 1;
    const Real half_x = x / 2;
    for (int k = 1; k <= s; ++k) term *= half_x / k;

    Real sum = term;
    const Real eps = pow(Real(10), -static_cast<int>(Real::default_precision()) - 5);
    const long max_terms = 1000000;
    for (long m = 1; m <= max_terms; ++m) {
        term *= quarter_x2 / (Real(m) * (m + s));
        sum += term;
        if (term <= eps * sum)
            return sum;
    }
    throw ConvergenceError("bessel_i: series did not converge");
}

}  // namespace nle
