#include "nle/kernel.hpp"

#include "nle/bessel.hpp"
#include "nle/errors.hpp"
#include "nle/quadrature.hpp"

#include <algorithm>
#include <sstream>

namespace nle {

void LatticeSpec::validate() const {
    if (n_sites < 2)
        throw InvalidSpecError("lattice spec: n_sites must be at least 2");
    if (omega <= 0)
        throw InvalidSpecError("lattice spec: omega must be positive");
    if (a_param < 0)
        throw InvalidSpecError("lattice spec: a_param must be non-negative");
    if (precision_digits < 0)
        throw InvalidSpecError("lattice spec: precision_digits must be non-negative");
}

int LatticeSpec::effective_digits() const {
    return precision_digits > 0 ? precision_digits : required_digits(omega, a_param);
}

int LatticeSpec::construction_digits() const {
    return effective_digits() + guard_digits(omega, a_param);
}

bool LatticeSpec::meets_precision_floor() const {
    return effective_digits() >= required_digits(omega, a_param);
}

namespace {

// (2 - 2 cos q)^{omega/2} computed as (4 sin^2(q/2))^{omega/2}; the sine form
// avoids the cancellation of 2 - 2 cos q near q = 0.
Real symbol_exponent_arg(const Real& q, double omega) {
    const Real s2 = 4 * sin(q / 2) * sin(q / 2);
    if (s2 == 0)
        return Real(0);
    if (omega == 2.0)
        return s2;
    if (omega == 1.0)
        return sqrt(s2);
    return pow(s2, Real(omega) / 2);
}

}  // namespace

KernelPair KernelPair::from_symbol(const LatticeSpec& spec, const std::vector<Real>& symbol) {
    spec.validate();
    const int n = spec.n_sites;
    if (static_cast<int>(symbol.size()) != n)
        throw InvalidSpecError("from_symbol: symbol length must equal n_sites");

    PrecisionScope scope(spec.construction_digits());
    for (const Real& s : symbol)
        if (!(s > 0))
            throw InvalidSpecError("from_symbol: symbol values must be positive");

    KernelPair kp;
    kp.spec_ = spec;
    kp.w_row_.resize(static_cast<size_t>(n));
    kp.winv_row_.resize(static_cast<size_t>(n));

    const Real two_pi = 2 * pi_value();
    // Imaginary parts of the inverse DFT cancel pairwise (symbol is even in
    // k -> N - k); they are accumulated anyway and checked against tolerance
    // before being dropped.
    Real max_sym = 0, max_inv = 0;
    for (const Real& s : symbol) {
        if (abs(s) > max_sym)
            max_sym = abs(s);
        if (1 / abs(s) > max_inv)
            max_inv = 1 / abs(s);
    }
    const Real tol_unit = pow(Real(10), -(spec.construction_digits() - 10));
    const Real im_tol_w = max_sym * tol_unit;
    const Real im_tol_inv = max_inv * tol_unit;

    const int half = n / 2;
    for (int j = 0; j <= half; ++j) {
        Real re_w = 0, im_w = 0, re_inv = 0, im_inv = 0;
        for (int k = 0; k < n; ++k) {
            const Real phase = two_pi * k * j / n;
            const Real c = cos(phase), s = sin(phase);
            re_w += c * symbol[static_cast<size_t>(k)];
            im_w += s * symbol[static_cast<size_t>(k)];
            re_inv += c / symbol[static_cast<size_t>(k)];
            im_inv += s / symbol[static_cast<size_t>(k)];
        }
        if (abs(im_w) > im_tol_w || abs(im_inv) > im_tol_inv)
            throw PrecisionError("kernel construction: imaginary residue above tolerance");
        kp.w_row_[static_cast<size_t>(j)] = re_w / n;
        kp.winv_row_[static_cast<size_t>(j)] = re_inv / n;
        if (j > 0 && j < n - j) {
            kp.w_row_[static_cast<size_t>(n - j)] = kp.w_row_[static_cast<size_t>(j)];
            kp.winv_row_[static_cast<size_t>(n - j)] = kp.winv_row_[static_cast<size_t>(j)];
        }
    }

    kp.check_invariants();
    return kp;
}

KernelPair KernelPair::build_circulant(const LatticeSpec& spec) {
    spec.validate();
    PrecisionScope scope(spec.construction_digits());

    const int n = spec.n_sites;
    const Real two_pi = 2 * pi_value();
    const Real half_a = Real(spec.a_param) / 2;
    std::vector<Real> symbol(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Real q = two_pi * k / n;
        symbol[static_cast<size_t>(k)] = exp(half_a * symbol_exponent_arg(q, spec.omega));
    }
    KernelPair kp = from_symbol(spec, symbol);
    // For a_param >= 0 the symbol is >= 1, so the W diagonal sits at or above
    // 1 and the inverse diagonal at or below 1.
    const Real slack = pow(Real(10), -(spec.effective_digits() - 10));
    if (kp.w_row_[0] < 1 - slack)
        throw PrecisionError("kernel diagonal of W dropped below 1");
    if (kp.winv_row_[0] > 1 + slack)
        throw PrecisionError("kernel diagonal of W^{-1} rose above 1");
    return kp;
}

KernelPair KernelPair::from_rows(const LatticeSpec& spec, std::vector<Real> w_row,
                                 std::vector<Real> winv_row) {
    spec.validate();
    if (static_cast<int>(w_row.size()) != spec.n_sites ||
        static_cast<int>(winv_row.size()) != spec.n_sites)
        throw InvalidSpecError("from_rows: row length must equal n_sites");
    KernelPair kp;
    kp.spec_ = spec;
    kp.w_row_ = std::move(w_row);
    kp.winv_row_ = std::move(winv_row);
    PrecisionScope scope(spec.construction_digits());
    kp.check_invariants();
    return kp;
}

void KernelPair::check_invariants() const {
    // Inverse contract: W * W^{-1} = identity entrywise to
    // 10^{-(precision_digits - 10)}.
    const Real tol = pow(Real(10), -(spec_.effective_digits() - 10));
    const Real resid = identity_residual();
    if (resid > tol) {
        std::ostringstream os;
        os << "kernel inverse residual " << resid.str(3, std::ios_base::scientific)
           << " exceeds tolerance " << tol.str(3, std::ios_base::scientific)
           << " (n_sites=" << spec_.n_sites << ", omega=" << spec_.omega
           << ", a_param=" << spec_.a_param << "); increase precision_digits";
        throw PrecisionError(os.str());
    }
}

const Real& KernelPair::w_at(int i, int j) const {
    const int n = spec_.n_sites;
    int d = (i - j) % n;
    if (d < 0)
        d += n;
    return w_row_[static_cast<size_t>(d)];
}

const Real& KernelPair::winv_at(int i, int j) const {
    const int n = spec_.n_sites;
    int d = (i - j) % n;
    if (d < 0)
        d += n;
    return winv_row_[static_cast<size_t>(d)];
}

Real KernelPair::identity_residual() const {
    const int n = spec_.n_sites;
    Real worst = 0;
    for (int j = 0; j < n; ++j) {
        Real acc = 0;
        for (int k = 0; k < n; ++k) {
            int d = (j - k) % n;
            if (d < 0)
                d += n;
            acc += w_row_[static_cast<size_t>(k)] * winv_row_[static_cast<size_t>(d)];
        }
        const Real dev = abs(j == 0 ? Real(acc - 1) : acc);
        if (dev > worst)
            worst = dev;
    }
    return worst;
}

Real kernel_entry_quadrature(double omega, double a_param, int separation,
                             const QuadratureOptions& opts) {
    if (separation < 0)
        throw InvalidSpecError("kernel_entry_quadrature: separation must be non-negative");
    if (omega <= 0)
        throw InvalidSpecError("kernel_entry_quadrature: omega must be positive");
    const Real pi_val = pi_value();
    const Real half_a = Real(a_param) / 2;
    // By symmetry the entry is (1/pi) * integral over [0, pi] of
    // cos(q s) exp[(A/2)(2 sin(q/2))^omega] dq. The substitution
    // q = pi (1 - cos t)/2 turns |q|-type corners of the symbol at q = 0 into
    // even powers of t, so the trapezoid rule regains spectral convergence;
    // the sin(t) Jacobian zeroes both endpoints.
    auto integrand = [&](const Real& t) {
        const Real q = pi_val * (1 - cos(t)) / 2;
        return cos(q * separation) * exp(half_a * symbol_exponent_arg(q, omega)) * sin(t) / 2;
    };
    const int noise_digits = static_cast<int>(Real::default_precision());
    const Real integral = trapezoid_half_period<Real>(integrand, pi_val, opts.rel_tol,
                                                      noise_digits, 16, opts.max_points);
    return integral / pi_val;
}

Real kernel_entry_closed_form_omega2(double a_param, int separation) {
    if (separation < 0)
        throw InvalidSpecError("closed form: separation must be non-negative");
    const Real a(a_param);
    const Real value = exp(a) * bessel_i(separation, a);
    return (separation % 2 == 0) ? value : Real(-value);
}

namespace {

double rel_discrepancy(const Real& a, const Real& b) {
    Real scale = abs(a);
    if (abs(b) > scale)
        scale = abs(b);
    // Both routes agreeing on (numerical) zero counts as zero discrepancy.
    if (scale < pow(Real(10), -30))
        return 0.0;
    return to_double(abs(a - b) / scale);
}

}  // namespace

ConsistencyReport kernel_consistency_report(const LatticeSpec& spec, int max_separation,
                                            const ConsistencyOptions& opts) {
    spec.validate();
    if (max_separation < 0)
        throw InvalidSpecError("consistency report: max_separation must be non-negative");

    PrecisionScope scope(spec.construction_digits());

    ConsistencyReport rep;
    rep.spec = spec;
    rep.max_separation = max_separation;
    rep.circulant_sizes = opts.circulant_sizes;

    struct Route {
        std::string name;
        std::vector<Real> entries;
    };
    std::vector<Route> routes;

    for (int n : opts.circulant_sizes) {
        LatticeSpec s = spec;
        s.n_sites = std::max(n, 2 * (max_separation + 1));
        KernelPair kp = KernelPair::build_circulant(s);
        Route r;
        r.name = "circulant@" + std::to_string(s.n_sites);
        for (int sep = 0; sep <= max_separation; ++sep) r.entries.push_back(kp.w_row()[sep]);
        routes.push_back(std::move(r));
    }
    {
        Route r;
        r.name = "quadrature";
        for (int sep = 0; sep <= max_separation; ++sep)
            r.entries.push_back(kernel_entry_quadrature(spec.omega, spec.a_param, sep,
                                                        opts.quadrature));
        routes.push_back(std::move(r));
    }
    if (spec.omega == 2.0) {
        Route r;
        r.name = "closed-form";
        for (int sep = 0; sep <= max_separation; ++sep)
            r.entries.push_back(kernel_entry_closed_form_omega2(spec.a_param, sep));
        routes.push_back(std::move(r));
    }

    for (size_t i = 0; i < routes.size(); ++i) {
        for (size_t j = i + 1; j < routes.size(); ++j) {
            RouteDiscrepancy d;
            d.route_a = routes[i].name;
            d.route_b = routes[j].name;
            for (int sep = 0; sep <= max_separation; ++sep) {
                const double rel = rel_discrepancy(routes[i].entries[static_cast<size_t>(sep)],
                                                   routes[j].entries[static_cast<size_t>(sep)]);
                if (rel > d.max_rel) {
                    d.max_rel = rel;
                    d.argmax_separation = sep;
                }
            }
            rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, d.max_rel);
            rep.pairs.push_back(std::move(d));
        }
    }
    return rep;
}

}  // namespace nle
