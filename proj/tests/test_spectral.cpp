#include "masc/spectral.hpp"

#include "masc/kmeans.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace masc;

TEST_SUITE("spectral_cluster") {

TEST_CASE("laplacian of a 2-node graph") {
    AffinityMatrix a;
    a.values.resize(2, 2);
    a.values << 0.0, 1.0, 1.0, 0.0;
    a.dataset_ids = {"x", "y"};

    const Matrix l = laplacian(a);
    CHECK(l(0, 0) == doctest::Approx(1.0));
    CHECK(l(0, 1) == doctest::Approx(-1.0));
    CHECK(l(1, 0) == doctest::Approx(-1.0));
    CHECK(l(1, 1) == doctest::Approx(1.0));

    const LaplacianDecomposition d = decompose(l);
    CHECK(d.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("zero affinity gives the zero Laplacian") {
    AffinityMatrix a;
    a.values = Matrix::Zero(4, 4);
    const Matrix l = laplacian(a);
    CHECK(l.cwiseAbs().maxCoeff() == 0.0);
    const LaplacianDecomposition d = decompose(l);
    CHECK(d.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian rows sum to zero") {
    const AffinityMatrix a = testutil::planted_affinity({4, 5, 3}, 41);
    const Matrix l = laplacian(a);
    for (Index i = 0; i < l.rows(); ++i) {
        CHECK(std::abs(l.row(i).sum()) <= 1e-10);
    }
}

TEST_CASE("zero-eigenvalue count equals component count (union-find oracle)") {
    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<int> blocks;
        const int k = 1 + static_cast<int>(rng.below(5));
        for (int b = 0; b < k; ++b) blocks.push_back(2 + static_cast<int>(rng.below(6)));
        const AffinityMatrix a = testutil::planted_affinity(blocks, 43 + trial);
        const LaplacianDecomposition d = decompose(laplacian(a));

        const int components = testutil::count_components(a.values);
        int near_zero = 0;
        for (Index i = 0; i < d.size(); ++i) {
            if (std::abs(d.eigenvalues[i]) < 1e-8) ++near_zero;
        }
        CHECK(components == k);
        CHECK(near_zero == components);
    }
}

TEST_CASE("eigendecomposition residuals and PSD clamp") {
    const AffinityMatrix a = testutil::planted_affinity({5, 5, 5}, 44);
    const Matrix l = laplacian(a);
    const LaplacianDecomposition d = decompose(l);

    CHECK(d.eigenvalues.minCoeff() >= 0.0);
    CHECK(d.eigenvalues[0] <= 1e-8);
    for (Index j = 0; j + 1 < d.size(); ++j) {
        CHECK(d.eigenvalues[j] <= d.eigenvalues[j + 1]);
    }
    for (Index j = 0; j < d.size(); ++j) {
        const Vector residual = l * d.eigenvectors.col(j) - d.eigenvalues[j] * d.eigenvectors.col(j);
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-6 * static_cast<double>(d.size()));
    }
}

TEST_CASE("decompose rejects non-symmetric input") {
    Matrix bad(2, 2);
    bad << 1.0, 0.5, 0.2, 1.0;
    CHECK_THROWS_AS(decompose(bad), std::invalid_argument);
}

TEST_CASE("3-block disconnected graph on 9 nodes") {
    const AffinityMatrix a = testutil::planted_affinity({3, 3, 3}, 45);
    const LaplacianDecomposition d = decompose(laplacian(a));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(d.eigenvalues[i]) < 1e-8);
    CHECK(d.eigenvalues[3] > 1e-3);
}

TEST_CASE("select_k on a fabricated spectrum") {
    LaplacianDecomposition d;
    d.eigenvalues.resize(5);
    d.eigenvalues << 0.0, 0.0, 0.0, 5.0, 5.1;
    d.eigenvectors = Matrix::Identity(5, 5);
    const auto [k, gaps] = select_k(d);
    CHECK(k == 3);
    CHECK(gaps.size() == 4);
    CHECK(gaps[2] == doctest::Approx(5.0));
}

TEST_CASE("select_k with two disconnected nodes") {
    LaplacianDecomposition d;
    d.eigenvalues.resize(2);
    d.eigenvalues << 0.0, 10.0;
    d.eigenvectors = Matrix::Identity(2, 2);
    CHECK(select_k(d).first == 1);
}

TEST_CASE("select_k ties break to the smallest k") {
    LaplacianDecomposition d;
    d.eigenvalues.resize(4);
    d.eigenvalues << 0.0, 1.0, 1.0, 2.0; // gaps 1, 0, 1
    d.eigenvectors = Matrix::Identity(4, 4);
    CHECK(select_k(d).first == 1);
}

TEST_CASE("select_k recovers planted block counts, including 51-node/5-block") {
    for (const auto& blocks : std::vector<std::vector<int>>{
             {10, 10, 10, 10, 11}, {5, 7}, {4, 4, 4}, {3, 3, 3, 3, 3, 3, 3, 3}}) {
        const AffinityMatrix a = testutil::planted_affinity(blocks, 46);
        const LaplacianDecomposition d = decompose(laplacian(a));
        CHECK(select_k(d).first == static_cast<int>(blocks.size()));
    }
}

TEST_CASE("select_k needs at least two eigenvalues") {
    LaplacianDecomposition d;
    d.eigenvalues.resize(1);
    d.eigenvalues << 0.0;
    d.eigenvectors = Matrix::Identity(1, 1);
    CHECK_THROWS_AS(select_k(d), std::invalid_argument);
}

TEST_CASE("embed_and_cluster trivial cases") {
    const AffinityMatrix a = testutil::planted_affinity({3, 3}, 47);
    const LaplacianDecomposition d = decompose(laplacian(a));

    const ClusterAssignment one = embed_and_cluster(d, 1, 7);
    CHECK(one.k == 1);
    CHECK(one.labels.maxCoeff() == 0);

    const ClusterAssignment all = embed_and_cluster(d, 6, 7);
    std::vector<int> labels(all.labels.data(), all.labels.data() + all.labels.size());
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<int>{0, 1, 2, 3, 4, 5}); // r singletons

    CHECK_THROWS_AS(embed_and_cluster(d, 7, 7), std::invalid_argument);
}

TEST_CASE("planted blocks recovered exactly (ARI = 1)") {
    const std::vector<int> blocks = {4, 6, 5};
    const AffinityMatrix a = testutil::planted_affinity(blocks, 48);
    const LaplacianDecomposition d = decompose(laplacian(a));
    const ClusterAssignment assignment = embed_and_cluster(d, 3, 5, a.dataset_ids);

    CHECK(adjusted_rand_index(assignment.labels, testutil::planted_labels(blocks)) ==
          doctest::Approx(1.0));
    // every cluster index in [0, k) used
    IntVector used = IntVector::Zero(3);
    for (Index i = 0; i < assignment.labels.size(); ++i) used[assignment.labels[i]] = 1;
    CHECK(used.sum() == 3);
}

TEST_CASE("clustering is invariant to dataset order up to label permutation") {
    const std::vector<int> blocks = {5, 4, 6};
    const AffinityMatrix a = testutil::planted_affinity(blocks, 49);
    const Index r = a.size();

    std::vector<Index> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(50);
    rng.shuffle(perm);

    AffinityMatrix shuffled = a;
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < r; ++j) {
            shuffled.values(i, j) = a.values(perm[i], perm[j]);
        }
    }
    const ClusterAssignment base = embed_and_cluster(decompose(laplacian(a)), 3, 9);
    const ClusterAssignment moved = embed_and_cluster(decompose(laplacian(shuffled)), 3, 9);

    IntVector base_on_perm(r);
    for (Index i = 0; i < r; ++i) base_on_perm[i] = base.labels[perm[i]];
    CHECK(adjusted_rand_index(moved.labels, base_on_perm) == doctest::Approx(1.0));
}

TEST_CASE("embed_and_cluster is deterministic under seed") {
    const AffinityMatrix a = testutil::planted_affinity({6, 6, 6}, 51);
    const LaplacianDecomposition d = decompose(laplacian(a));
    const ClusterAssignment first = embed_and_cluster(d, 3, 123);
    const ClusterAssignment second = embed_and_cluster(d, 3, 123);
    CHECK(first.labels == second.labels);
}

TEST_CASE("kmeans separates two obvious clouds and fills empty clusters") {
    Matrix points(6, 2);
    points << 0.0, 0.0, 0.1, 0.0, 0.0, 0.1, 5.0, 5.0, 5.1, 5.0, 5.0, 5.1;
    const KMeansResult result = kmeans(points, 2, 3);
    CHECK(result.labels[0] == result.labels[1]);
    CHECK(result.labels[1] == result.labels[2]);
    CHECK(result.labels[3] == result.labels[4]);
    CHECK(result.labels[4] == result.labels[5]);
    CHECK(result.labels[0] != result.labels[3]);

    // duplicates: k labels must still all be used
    Matrix dupes(4, 1);
    dupes << 1.0, 1.0, 1.0, 2.0;
    const KMeansResult forced = kmeans(dupes, 3, 3);
    IntVector used = IntVector::Zero(3);
    for (Index i = 0; i < 4; ++i) used[forced.labels[i]] = 1;
    CHECK(used.sum() == 3);
}

TEST_CASE("adjusted_rand_index reference values") {
    IntVector a(4), b(4), c(4);
    a << 0, 0, 1, 1;
    b << 1, 1, 0, 0; // same partition, relabeled
    CHECK(adjusted_rand_index(a, b) == doctest::Approx(1.0));

    c << 0, 0, 1, 0;
    // contingency {0,0}:2 {1,0}:1 {1,1}:1; sum_cells=1, rows=2, cols=3+0=3,
    // total=6, expected=1, max=2.5 -> (1-1)/(2.5-1) = 0
    CHECK(adjusted_rand_index(a, c) == doctest::Approx(0.0));
}

} // TEST_SUITE
