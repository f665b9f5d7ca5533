#include "nle/matrix.hpp"

#include "nle/errors.hpp"

namespace nle {

Mat mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw Error("matrix product dimension mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            Real acc = 0;
            for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

Mat symmetrized(const Mat& a) {
    Mat s(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s(i, j) = (a(i, j) + a(j, i)) / 2;
    return s;
}

Real max_abs(const Mat& a) {
    Real m = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (abs(a(i, j)) > m) m = abs(a(i, j));
    return m;
}

}  // namespace nle
