#pragma once

#include "nle/precision.hpp"

namespace nle {

// Modified Bessel function of the first kind, integer order, evaluated by the
// ascending power series at the current default precision. Terms are positive
// for x > 0, so there is no cancellation; negative arguments use
// I_s(-x) = (-1)^s I_s(x).
Real bessel_i(int order, const Real& x);

}  // namespace nle
