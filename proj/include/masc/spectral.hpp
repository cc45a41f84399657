#pragma once

#include "masc/affinity.hpp"
#include "masc/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace masc {

/// Full spectrum of the unnormalized graph Laplacian, eigenvalues ascending
/// with eigenvector columns paired by index. Tiny negative eigenvalues from
/// numerics are clamped to zero (the Laplacian is positive semi-definite).
struct LaplacianDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    Index size() const { return eigenvalues.size(); }
};

/// Result of clustering the datasets in spectral space.
struct ClusterAssignment {
    IntVector labels;      // cluster index per dataset, values in [0, k)
    int k = 0;
    Vector eigengap_vector; // consecutive eigenvalue differences, length l-1
    std::vector<std::string> dataset_ids;

    std::vector<std::vector<Index>> members() const;
};

/// Unnormalized graph Laplacian L = D - A with D the diagonal degree matrix.
/// Rows sum to zero.
Matrix laplacian(const AffinityMatrix& a);

/// Symmetric eigendecomposition of a Laplacian (equivalent to its SVD up to
/// ordering since the matrix is symmetric PSD).
LaplacianDecomposition decompose(const Matrix& l);

/// Eigengap heuristic over the first min(l_max, r) ascending eigenvalues:
/// k is the position of the largest consecutive difference, ties broken by
/// the smallest k.
std::pair<int, Vector> select_k(const LaplacianDecomposition& d, int l_max = 10);

/// Stacks the eigenvectors of the k smallest eigenvalues as columns of an
/// r x k matrix and k-means-clusters its rows. Deterministic under seed.
ClusterAssignment embed_and_cluster(const LaplacianDecomposition& d, int k, std::uint64_t seed,
                                    std::vector<std::string> dataset_ids = {});

/// Adjusted Rand Index between two labelings; 1.0 means identical partitions
/// up to label permutation.
double adjusted_rand_index(const IntVector& a, const IntVector& b);

} // namespace masc
