#pragma once

#include "nle/matrix.hpp"

#include <vector>

namespace nle {

struct JacobiOptions {
    // Convergence when the off-diagonal Frobenius norm drops below
    // rel_tol times the Frobenius norm of the input. Zero selects
    // 10^{-(current default digits - 10)}.
    Real rel_tol = 0;
    int max_sweeps = 64;
    bool want_vectors = true;
};

struct JacobiResult {
    std::vector<Real> values;  // unsorted (diagonal order)
    Mat vectors;               // columns are eigenvectors when requested
    int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix. Precision-agnostic: runs at
// whatever precision the entries carry, which is what makes it usable across
// the whole configurable-digits range.
JacobiResult jacobi_eigen(const Mat& symmetric, const JacobiOptions& opts = {});

}  // namespace nle
