#pragma once

#include "nle/precision.hpp"

#include <vector>

namespace nle {

// Dense row-major matrix of Reals. Restricted blocks are region-sized
// (tens of rows), so a minimal container plus the Jacobi solver covers
// everything the spectrum pipeline needs.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Real& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Real& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Real> data_;
};

Mat mul(const Mat& a, const Mat& b);

// (a + a^T)/2, squashing the tiny asymmetry left by rounded products.
Mat symmetrized(const Mat& a);

Real max_abs(const Mat& a);

}  // namespace nle
