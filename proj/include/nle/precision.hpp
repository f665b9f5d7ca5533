#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace nle {

// Software floating point with dynamic precision, used for all kernel and
// spectrum arithmetic. Each value carries its own precision; freshly
// constructed values pick up the default set through PrecisionScope, and
// mixed-precision arithmetic widens to the larger operand.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Sets the default construction precision (decimal digits) for Real and
// restores the previous value on destruction. The default is process-wide,
// so parallel sections must run entirely under one fixed scope; workers never
// open scopes of their own.
class PrecisionScope {
  public:
    explicit PrecisionScope(int digits10);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

// Minimum working digits for trustworthy entanglement spectra at nonlocality
// scale a_param and exponent omega. Kernel entries span exp(+-a*2^{omega-1}),
// and the restricted-block eigenproblem cancels across the squared dynamic
// range, hence the factor two plus fixed headroom.
int required_digits(double omega, double a_param);

// Extra digits used only while synthesizing kernel rows, so that stored
// entries are accurate to ~10^{-working_digits} in absolute terms and the
// W * W^{-1} residual lands well inside its contract.
int guard_digits(double omega, double a_param);

// pi at the current default precision.
Real pi_value();

// Value rounded in place to the given decimal precision.
Real round_to(const Real& x, int digits10);

// Decimal rendering; digits10 <= 0 selects enough digits for an exact
// round-trip at the value's own precision.
std::string to_decimal_string(const Real& x, int digits10 = 0);

double to_double(const Real& x);

}  // namespace nle
