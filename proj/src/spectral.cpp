#include "masc/spectral.hpp"

#include "masc/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace masc {

std::vector<std::vector<Index>> ClusterAssignment::members() const {
    std::vector<std::vector<Index>> groups(k);
    for (Index i = 0; i < labels.size(); ++i) {
        groups[labels[i]].push_back(i);
    }
    return groups;
}

Matrix laplacian(const AffinityMatrix& a) {
    Matrix l = -a.values;
    l.diagonal() = a.values.rowwise().sum();
    return l;
}

LaplacianDecomposition decompose(const Matrix& l) {
    if (l.rows() != l.cols()) {
        throw std::invalid_argument("decompose: matrix must be square");
    }
    const double asym = (l - l.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw std::invalid_argument("decompose: matrix is not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(l);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("decompose: eigendecomposition failed to converge");
    }
    LaplacianDecomposition d;
    d.eigenvalues = solver.eigenvalues(); // ascending
    d.eigenvectors = solver.eigenvectors();

    const double scale = std::max(1.0, d.eigenvalues.cwiseAbs().maxCoeff());
    for (Index i = 0; i < d.eigenvalues.size(); ++i) {
        if (d.eigenvalues[i] < 0.0 && d.eigenvalues[i] > -1e-9 * scale) {
            d.eigenvalues[i] = 0.0;
        }
    }
    return d;
}

std::pair<int, Vector> select_k(const LaplacianDecomposition& d, int l_max) {
    const Index r = d.size();
    if (r < 2) {
        throw std::invalid_argument("select_k: need at least 2 eigenvalues");
    }
    const Index l = std::min<Index>(r, std::max(2, l_max));
    Vector gaps(l - 1);
    for (Index i = 0; i + 1 < l; ++i) {
        gaps[i] = d.eigenvalues[i + 1] - d.eigenvalues[i];
    }
    // gap i sits between eigenvalue i+1 and i+2 (1-based), so k = i+1;
    // ties go to the smallest k.
    int k = 1;
    double best = gaps[0];
    for (Index i = 1; i < gaps.size(); ++i) {
        if (gaps[i] > best) {
            best = gaps[i];
            k = static_cast<int>(i) + 1;
        }
    }
    return {k, gaps};
}

ClusterAssignment embed_and_cluster(const LaplacianDecomposition& d, int k, std::uint64_t seed,
                                    std::vector<std::string> dataset_ids) {
    const Index r = d.size();
    if (k < 1 || k > r) {
        throw std::invalid_argument("embed_and_cluster: k = " + std::to_string(k) +
                                    " out of range for r = " + std::to_string(r));
    }
    const Matrix embedding = d.eigenvectors.leftCols(k);
    const KMeansResult km = kmeans(embedding, k, seed);

    ClusterAssignment assignment;
    assignment.labels = km.labels;
    assignment.k = k;
    assignment.eigengap_vector = r >= 2 ? select_k(d).second : Vector();
    assignment.dataset_ids = std::move(dataset_ids);
    return assignment;
}

double adjusted_rand_index(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("adjusted_rand_index: label vectors differ in length");
    }
    const Index n = a.size();
    std::map<std::pair<int, int>, double> cells;
    std::map<int, double> row_sums, col_sums;
    for (Index i = 0; i < n; ++i) {
        cells[{a[i], b[i]}] += 1.0;
        row_sums[a[i]] += 1.0;
        col_sums[b[i]] += 1.0;
    }
    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, v] : cells) sum_cells += choose2(v);
    for (const auto& [key, v] : row_sums) sum_rows += choose2(v);
    for (const auto& [key, v] : col_sums) sum_cols += choose2(v);
    const double total = choose2(static_cast<double>(n));
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0; // degenerate: single cluster both sides
    return (sum_cells - expected) / (max_index - expected);
}

} // namespace masc
