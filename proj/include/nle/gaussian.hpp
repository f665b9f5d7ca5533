#pragma once

#include "nle/kernel.hpp"
#include "nle/matrix.hpp"
#include "nle/region.hpp"

#include <utility>
#include <vector>

namespace nle {

// Restricted blocks on a region: K is the W block (direct couplings inside
// the region), P is the W^{-1} block (two-point correlations inside it).
struct RestrictedBlocks {
    Mat k;
    Mat p;
};

RestrictedBlocks restrict_blocks(const KernelPair& kernels, const Region& region);

struct SpectrumOptions {
    // Eigenvalues mu of P*K in [1 - 10*clamp_tol, 1) clamp to lambda = 1;
    // anything lower is a broken spectrum, not a rounding artifact.
    double clamp_tol = 1e-10;
};

// Per-mode eigenvalues lambda_n >= 1 of the region's entanglement problem.
// lambda_n = sqrt(mu_n) with mu_n the eigenvalues of P*K, obtained from the
// symmetric form P^{1/2} K P^{1/2}; mus_raw keeps the pre-clamp product
// eigenvalues so both readings stay inspectable.
struct EntanglementSpectrum {
    std::vector<Real> lambdas;  // sorted descending, clamped to >= 1
    std::vector<Real> mus_raw;  // eigenvalues of P*K, same order, unclamped
    int region_size = 0;
    LatticeSpec spec;
};

EntanglementSpectrum entanglement_spectrum(const KernelPair& kernels, const Region& region,
                                           const SpectrumOptions& opts = {});

// Entropy in nats: sum of ((l+1)/2)ln((l+1)/2) - ((l-1)/2)ln((l-1)/2) over the
// spectrum; a lambda of exactly 1 contributes exactly 0.
Real entropy_from_spectrum(const EntanglementSpectrum& spectrum);
Real entropy_from_lambdas(const std::vector<Real>& lambdas);

Real entanglement_entropy(const KernelPair& kernels, const Region& region,
                          const SpectrumOptions& opts = {});

// I(r1; r2) = S1 + S2 - S12 for disjoint regions.
Real mutual_information(const KernelPair& kernels, const Region& r1, const Region& r2,
                        const SpectrumOptions& opts = {});

// I3 = S1 + S2 + S3 - S12 - S13 - S23 + S123 for pairwise disjoint regions.
Real tripartite_information(const KernelPair& kernels, const Region& r1, const Region& r2,
                            const Region& r3, const SpectrumOptions& opts = {});

// Strong-subadditivity gap I(r1; r2+r3) - I(r1; r2) - I(r1; r3) + I(r2; r3)
// = S12 + S13 - S123 - S1; non-negative for these states up to tolerance.
Real ssa_gap(const KernelPair& kernels, const Region& r1, const Region& r2, const Region& r3,
             const SpectrumOptions& opts = {});

// Entropies of contiguous intervals [anchor, anchor + l) for each requested
// length, reusing the kernel across the sweep.
std::vector<std::pair<int, Real>> entropy_profile(const KernelPair& kernels,
                                                  const std::vector<int>& lengths, int anchor,
                                                  const SpectrumOptions& opts = {});

}  // namespace nle
