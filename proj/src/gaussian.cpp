#include "nle/gaussian.hpp"

#include "nle/errors.hpp"
#include "nle/jacobi.hpp"

#include <algorithm>
#include <sstream>

namespace nle {

RestrictedBlocks restrict_blocks(const KernelPair& kernels, const Region& region) {
    if (region.empty())
        throw RegionError("restrict: region is empty");
    const int n = kernels.size();
    const auto& sites = region.sites();
    for (int s : sites)
        if (s >= n)
            throw RegionError("restrict: site index out of range for this lattice");

    // Spectrum arithmetic runs at the working precision of the spec; the rows
    // are stored with guard digits, so the blocks are rounded copies. No
    // precision scope here: these ops run inside worker threads and the
    // default precision is process-wide, so precision rides on the values.
    const int digits = kernels.spec().effective_digits();
    const int m = region.size();
    RestrictedBlocks blocks{Mat(m, m), Mat(m, m)};
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            blocks.k(i, j) = round_to(kernels.w_at(sites[static_cast<size_t>(i)],
                                                   sites[static_cast<size_t>(j)]),
                                      digits);
            blocks.p(i, j) = round_to(kernels.winv_at(sites[static_cast<size_t>(i)],
                                                      sites[static_cast<size_t>(j)]),
                                      digits);
        }
    }
    return blocks;
}

namespace {

// Symmetric square root via eigendecomposition; fails if the block is not
// positive definite at working precision.
Mat spd_sqrt(const Mat& p) {
    JacobiResult eig = jacobi_eigen(p);
    const int m = p.rows();
    for (int i = 0; i < m; ++i)
        if (!(eig.values[static_cast<size_t>(i)] > 0))
            throw PrecisionError(
                "restricted correlation block lost positive definiteness at working "
                "precision; increase precision_digits");
    Mat root(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Real acc = 0;
            for (int k = 0; k < m; ++k)
                acc += eig.vectors(i, k) * sqrt(eig.values[static_cast<size_t>(k)]) *
                       eig.vectors(j, k);
            root(i, j) = acc;
        }
    }
    return root;
}

}  // namespace

EntanglementSpectrum entanglement_spectrum(const KernelPair& kernels, const Region& region,
                                           const SpectrumOptions& opts) {
    RestrictedBlocks blocks = restrict_blocks(kernels, region);

    const Mat root = spd_sqrt(blocks.p);
    const Mat product = symmetrized(mul(root, mul(blocks.k, root)));
    JacobiOptions jopts;
    jopts.want_vectors = false;
    JacobiResult eig = jacobi_eigen(product, jopts);

    EntanglementSpectrum sp;
    sp.region_size = region.size();
    sp.spec = kernels.spec();
    sp.mus_raw = eig.values;
    std::sort(sp.mus_raw.begin(), sp.mus_raw.end(), std::greater<Real>());

    const Real clamp_floor = 1 - 10 * Real(opts.clamp_tol);
    sp.lambdas.reserve(sp.mus_raw.size());
    for (const Real& mu : sp.mus_raw) {
        if (mu < clamp_floor) {
            std::ostringstream os;
            os << "entanglement spectrum broken: eigenvalue "
               << mu.str(6, std::ios_base::scientific)
               << " below the clampable band; increase precision_digits";
            throw PrecisionError(os.str());
        }
        sp.lambdas.push_back(mu >= 1 ? Real(sqrt(mu)) : Real(1));
    }
    return sp;
}

Real entropy_from_lambdas(const std::vector<Real>& lambdas) {
    Real total = 0;
    for (const Real& l : lambdas) {
        if (l < 1)
            throw NumericalError("entropy: spectrum value below 1 (must be clamped upstream)");
        if (l == 1)
            continue;  // an unentangled mode contributes exactly zero
        const Real up = (l + 1) / 2;
        const Real dn = (l - 1) / 2;
        total += up * log(up) - dn * log(dn);
    }
    return total;
}

Real entropy_from_spectrum(const EntanglementSpectrum& spectrum) {
    return entropy_from_lambdas(spectrum.lambdas);
}

Real entanglement_entropy(const KernelPair& kernels, const Region& region,
                          const SpectrumOptions& opts) {
    return entropy_from_spectrum(entanglement_spectrum(kernels, region, opts));
}

Real mutual_information(const KernelPair& kernels, const Region& r1, const Region& r2,
                        const SpectrumOptions& opts) {
    if (!r1.disjoint_with(r2))
        throw RegionError("mutual information: regions overlap");
    const Real s1 = entanglement_entropy(kernels, r1, opts);
    const Real s2 = entanglement_entropy(kernels, r2, opts);
    const Real s12 = entanglement_entropy(kernels, region_union(r1, r2), opts);
    return s1 + s2 - s12;
}

Real tripartite_information(const KernelPair& kernels, const Region& r1, const Region& r2,
                            const Region& r3, const SpectrumOptions& opts) {
    if (!r1.disjoint_with(r2) || !r1.disjoint_with(r3) || !r2.disjoint_with(r3))
        throw RegionError("tripartite information: regions overlap");
    Real singles[3] = {entanglement_entropy(kernels, r1, opts),
                       entanglement_entropy(kernels, r2, opts),
                       entanglement_entropy(kernels, r3, opts)};
    Real doubles[3] = {entanglement_entropy(kernels, region_union(r1, r2), opts),
                       entanglement_entropy(kernels, region_union(r1, r3), opts),
                       entanglement_entropy(kernels, region_union(r2, r3), opts)};
    const Real s123 = entanglement_entropy(kernels, region_union(r1, r2, r3), opts);
    // Summing in sorted order makes the result invariant under argument
    // permutations bit for bit, not just up to rounding.
    std::sort(std::begin(singles), std::end(singles));
    std::sort(std::begin(doubles), std::end(doubles));
    return ((singles[0] + singles[1]) + singles[2]) - ((doubles[0] + doubles[1]) + doubles[2]) +
           s123;
}

Real ssa_gap(const KernelPair& kernels, const Region& r1, const Region& r2, const Region& r3,
             const SpectrumOptions& opts) {
    if (!r1.disjoint_with(r2) || !r1.disjoint_with(r3) || !r2.disjoint_with(r3))
        throw RegionError("ssa gap: regions overlap");
    const Real s1 = entanglement_entropy(kernels, r1, opts);
    const Real s12 = entanglement_entropy(kernels, region_union(r1, r2), opts);
    const Real s13 = entanglement_entropy(kernels, region_union(r1, r3), opts);
    const Real s123 = entanglement_entropy(kernels, region_union(r1, r2, r3), opts);
    return s12 + s13 - s123 - s1;
}

std::vector<std::pair<int, Real>> entropy_profile(const KernelPair& kernels,
                                                  const std::vector<int>& lengths, int anchor,
                                                  const SpectrumOptions& opts) {
    const int n = kernels.size();
    std::vector<std::pair<int, Real>> out;
    out.reserve(lengths.size());
    for (int l : lengths) {
        if (l <= 0)
            throw RegionError("entropy profile: interval length must be positive");
        if (anchor < 0 || anchor + l > n)
            throw RegionError("entropy profile: interval leaves the lattice");
        out.emplace_back(l, entanglement_entropy(kernels, Region::interval(anchor, l), opts));
    }
    return out;
}

}  // namespace nle
