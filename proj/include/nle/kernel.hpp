#pragma once

#include "nle/precision.hpp"

#include <string>
#include <vector>

namespace nle {

// Parameters of the oscillator chain: lattice size, nonlocality exponent and
// scale, and the working precision for spectrum arithmetic. Lattice units
// throughout (lattice spacing 1, mass-scale parameter rescaled to 1).
struct LatticeSpec {
    int n_sites = 0;
    double omega = 1.0;
    double a_param = 0.0;
    // Decimal digits for spectrum arithmetic; 0 resolves to required_digits.
    // Values below the floor are accepted (failures then surface numerically
    // as precision errors downstream rather than at validation).
    int precision_digits = 0;

    void validate() const;
    int effective_digits() const;       // resolves 0 to the mandated floor
    int construction_digits() const;    // effective + guard, used to build rows
    bool meets_precision_floor() const;

    bool operator==(const LatticeSpec&) const = default;
};

struct QuadratureOptions {
    double rel_tol = 1e-12;
    long max_points = (1L << 21);
};

// W^omega and its inverse on the periodic lattice. Both are symmetric
// circulant matrices fully determined by their first rows; entries are stored
// at construction precision so that W * W^{-1} reproduces the identity well
// inside the contract tolerance.
class KernelPair {
  public:
    // Exact finite-lattice construction: first rows are DFT sums of the
    // symbol exp(+-(A/2) (2 - 2 cos q_k)^{omega/2}) over q_k = 2 pi k / N.
    static KernelPair build_circulant(const LatticeSpec& spec);

    // Construction from an arbitrary positive symbol (one value per lattice
    // momentum); the inverse uses the reciprocal symbol. Shared by
    // build_circulant and by synthetic test kernels.
    static KernelPair from_symbol(const LatticeSpec& spec, const std::vector<Real>& symbol);

    // Deserialization entry point for the on-disk cache; rows must already
    // satisfy the pair's invariants.
    static KernelPair from_rows(const LatticeSpec& spec, std::vector<Real> w_row,
                                std::vector<Real> winv_row);

    int size() const { return spec_.n_sites; }
    const LatticeSpec& spec() const { return spec_; }

    const Real& w_at(int i, int j) const;
    const Real& winv_at(int i, int j) const;
    const std::vector<Real>& w_row() const { return w_row_; }
    const std::vector<Real>& winv_row() const { return winv_row_; }

    // Max entrywise deviation of W * W^{-1} from the identity (circulant
    // convolution of the stored rows).
    Real identity_residual() const;

  private:
    KernelPair() = default;
    void check_invariants() const;

    LatticeSpec spec_;
    std::vector<Real> w_row_;
    std::vector<Real> winv_row_;
};

// Continuum (N -> infinity) kernel entry:
//   (1/2pi) * integral over [-pi, pi] of cos(q s) exp[(A/2)(2 - 2 cos q)^{omega/2}] dq.
// A negative a_param yields the inverse-kernel entry.
Real kernel_entry_quadrature(double omega, double a_param, int separation,
                             const QuadratureOptions& opts = {});

// omega = 2 closed form: (-1)^s e^A I_s(A), modified Bessel of the first kind,
// evaluated at the current default precision.
Real kernel_entry_closed_form_omega2(double a_param, int separation);

// Cross-validation of the independent kernel routes over a separation range.
struct RouteDiscrepancy {
    std::string route_a;
    std::string route_b;
    double max_rel = 0.0;
    int argmax_separation = 0;
};

struct ConsistencyReport {
    LatticeSpec spec;
    int max_separation = 0;
    std::vector<int> circulant_sizes;
    std::vector<RouteDiscrepancy> pairs;
    double max_rel_discrepancy = 0.0;
};

struct ConsistencyOptions {
    // Lattice sizes for the circulant self-convergence route.
    std::vector<int> circulant_sizes = {512, 1024};
    QuadratureOptions quadrature;
};

ConsistencyReport kernel_consistency_report(const LatticeSpec& spec, int max_separation,
                                            const ConsistencyOptions& opts = {});

}  // namespace nle
