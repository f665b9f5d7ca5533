#include "nle/precision.hpp"

#include <cmath>

namespace nle {

PrecisionScope::PrecisionScope(int digits10) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits10 < 1 ? 1 : digits10));
}

PrecisionScope::~PrecisionScope() {
    Real::default_precision(saved_);
}

int required_digits(double omega, double a_param) {
    const double span = 2.0 * a_param * std::pow(2.0, omega - 1.0) * 0.43429448190325176;
    return static_cast<int>(std::ceil(span)) + 30;
}

int guard_digits(double omega, double a_param) {
    const double span = a_param * std::pow(2.0, omega - 1.0) * 0.43429448190325176;
    return static_cast<int>(std::ceil(span)) + 10;
}

Real pi_value() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

Real round_to(const Real& x, int digits10) {
    Real y = x;
    y.precision(digits10 < 1 ? 1 : digits10);
    return y;
}

std::string to_decimal_string(const Real& x, int digits10) {
    if (digits10 <= 0)
        return x.str(0, std::ios_base::scientific);
    return x.str(digits10, std::ios_base::scientific);
}

double to_double(const Real& x) {
    return x.convert_to<double>();
}

}  // namespace nle
