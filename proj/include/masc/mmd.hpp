#pragma once

#include "masc/dataset.hpp"
#include "masc/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace masc {

/// Kernel for the two-sample MMD statistic. The linear kernel is the default
/// working choice for large samples; the gaussian kernel suits small ones and
/// takes an explicit bandwidth gamma.
struct KernelSpec {
    enum class Kind { linear, gaussian };
    Kind kind = Kind::linear;
    double gamma = 1.0; // gaussian only

    static KernelSpec linear() { return {Kind::linear, 1.0}; }
    static KernelSpec gaussian(double gamma) { return {Kind::gaussian, gamma}; }
};

/// Symmetric r x r matrix of pairwise MMD values, zero diagonal.
struct DistanceMatrix {
    Matrix values;
    std::vector<std::string> dataset_ids;

    Index size() const { return values.rows(); }
};

namespace detail {

// Sum of k(a_i, b_j) over all (i, j) pairs, including i == j, and the sum of
// the diagonal k(a_i, b_i) (rows() must match for the latter caller side).
template <typename DerivedA, typename DerivedB>
double linear_kernel_total(const Eigen::MatrixBase<DerivedA>& a,
                           const Eigen::MatrixBase<DerivedB>& b) {
    const Vector sa = a.colwise().sum();
    const Vector sb = b.colwise().sum();
    return sa.dot(sb);
}

template <typename Derived>
double linear_kernel_diag(const Eigen::MatrixBase<Derived>& a) {
    return a.rowwise().squaredNorm().sum();
}

// Pairwise squared Euclidean distances, n x m.
template <typename DerivedA, typename DerivedB>
Matrix squared_distances(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& b) {
    const Vector an = a.rowwise().squaredNorm();
    const Vector bn = b.rowwise().squaredNorm();
    Matrix d = an.replicate(1, b.rows()) + bn.transpose().replicate(a.rows(), 1) -
               2.0 * (a * b.transpose());
    return d.cwiseMax(0.0);
}

// Unbiased two-sample estimator before the clamp at zero: within-set sums
// exclude i == j and divide by n(n-1) and m(m-1); the cross term divides by
// n*m.
template <typename DerivedX, typename DerivedZ>
double mmd_raw(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedZ>& z,
               const KernelSpec& kernel) {
    const double n = static_cast<double>(x.rows());
    const double m = static_cast<double>(z.rows());
    if (x.rows() < 2 || z.rows() < 2) {
        throw std::invalid_argument("mmd: the unbiased estimator needs at least 2 rows per set");
    }
    if (x.cols() != z.cols()) {
        throw std::invalid_argument("mmd: dimension mismatch (" + std::to_string(x.cols()) +
                                    " vs " + std::to_string(z.cols()) + ")");
    }
    if (kernel.kind == KernelSpec::Kind::linear) {
        const double xx = linear_kernel_total(x, x) - linear_kernel_diag(x);
        const double zz = linear_kernel_total(z, z) - linear_kernel_diag(z);
        const double xz = linear_kernel_total(x, z);
        return xx / (n * (n - 1.0)) - 2.0 * xz / (n * m) + zz / (m * (m - 1.0));
    }
    if (kernel.gamma <= 0.0) {
        throw std::invalid_argument("mmd: gaussian kernel needs gamma > 0");
    }
    const Matrix kxx = (-kernel.gamma * squared_distances(x, x).array()).exp();
    const Matrix kzz = (-kernel.gamma * squared_distances(z, z).array()).exp();
    const Matrix kxz = (-kernel.gamma * squared_distances(x, z).array()).exp();
    const double xx = kxx.sum() - kxx.trace();
    const double zz = kzz.sum() - kzz.trace();
    return xx / (n * (n - 1.0)) - 2.0 * kxz.sum() / (n * m) + zz / (m * (m - 1.0));
}

} // namespace detail

/// Unbiased two-sample MMD between the rows of x and z, clamped at zero so it
/// behaves as a distance (the unbiased estimator can go slightly negative for
/// near-identical samples).
template <typename DerivedX, typename DerivedZ>
double mmd(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedZ>& z,
           const KernelSpec& kernel = KernelSpec::linear()) {
    return std::max(0.0, detail::mmd_raw(x, z, kernel));
}

/// Pairwise MMD over every unordered dataset pair; each value is computed
/// once and mirrored. With normalize, off-diagonal entries are min-max scaled
/// into [0, 1] (diagonal stays zero; a constant off-diagonal maps to zero).
DistanceMatrix pairwise_distance_matrix(const std::vector<Dataset>& datasets,
                                        const KernelSpec& kernel = KernelSpec::linear(),
                                        bool normalize = true);

/// Gaussian-kernel bandwidth 1/(2 median^2) of pairwise Euclidean distances
/// over an evenly strided subsample of at most 1000 rows.
double median_heuristic_gamma(const std::vector<Dataset>& datasets);

} // namespace masc
