#include "masc/mmd.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace masc;

TEST_SUITE("discrepancy") {

TEST_CASE("hand-evaluated linear example") {
    Matrix x(2, 1), z(2, 1);
    x << 0.0, 0.0;
    z << 1.0, 1.0;
    // within-x 0, within-z 1, cross 0  ->  0 - 0 + 1 = 1
    CHECK(mmd(x, z, KernelSpec::linear()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("self-distance is zero") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.below(30));
        const Index d = 1 + static_cast<Index>(rng.below(5));
        const Matrix x = testutil::random_matrix(rng, n, d, rng.normal());
        CHECK(mmd(x, x, KernelSpec::linear()) <= 1e-9);
        CHECK(mmd(x, x, KernelSpec::gaussian(0.7)) <= 1e-9);
    }
}

TEST_CASE("symmetry within 1e-12") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = testutil::random_matrix(rng, 2 + rng.below(20), 3);
        const Matrix z = testutil::random_matrix(rng, 2 + rng.below(20), 3, 1.0);
        for (const auto& kernel : {KernelSpec::linear(), KernelSpec::gaussian(0.5)}) {
            CHECK(std::abs(mmd(x, z, kernel) - mmd(z, x, kernel)) <= 1e-12);
        }
    }
}

TEST_CASE("matches the naive triple-sum oracle up to 50x5") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const Index d = 1 + static_cast<Index>(rng.below(5));
        const Matrix x = testutil::random_matrix(rng, 2 + rng.below(49), d, rng.normal());
        const Matrix z = testutil::random_matrix(rng, 2 + rng.below(49), d, rng.normal());
        const KernelSpec kernel =
            trial % 2 == 0 ? KernelSpec::linear() : KernelSpec::gaussian(0.3);
        const double expected = std::max(0.0, testutil::mmd_oracle(x, z, kernel));
        CHECK(std::abs(mmd(x, z, kernel) - expected) <= 1e-9);
    }
}

TEST_CASE("shifted pair exceeds same-distribution pair") {
    Rng rng(14);
    const Matrix a = testutil::random_matrix(rng, 200, 2, 0.0);
    const Matrix b = testutil::random_matrix(rng, 200, 2, 0.0);
    const Matrix c = testutil::random_matrix(rng, 200, 2, 3.0);

    const double same = mmd(a, b);
    const double shifted = mmd(a, c);
    CHECK(shifted > same);
    CHECK(std::abs(shifted - std::max(0.0, testutil::mmd_oracle(a, c, KernelSpec::linear()))) <=
          1e-9);
}

TEST_CASE("errors: too few rows, dimension mismatch") {
    Matrix one(1, 2), ok(3, 2), wide(3, 3);
    one.setZero();
    ok.setZero();
    wide.setZero();
    CHECK_THROWS_AS(static_cast<void>(mmd(one, ok)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(mmd(ok, one)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(mmd(ok, wide)), std::invalid_argument);
}

TEST_CASE("subsampling stability at different draw sizes") {
    Rng rng(15);
    const Matrix big = testutil::random_matrix(rng, 1000, 3, 1.0);
    const Matrix small_a = testutil::random_matrix(rng, 500, 3, 0.0);
    const Matrix big_a = testutil::random_matrix(rng, 1000, 3, 0.0);
    CHECK(std::abs(mmd(small_a, big) - mmd(big_a, big)) < 0.1);
}

TEST_CASE("pairwise distance matrix: identical datasets") {
    const Dataset a = testutil::make_dataset("a", {30, 10}, {0.5, 0.5}, 5);
    Dataset b = a;
    b.id = "b";
    const DistanceMatrix w = pairwise_distance_matrix({a, b}, KernelSpec::linear(), false);
    CHECK(w.values.rows() == 2);
    CHECK(w.values.cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(w.dataset_ids == std::vector<std::string>{"a", "b"});
}

TEST_CASE("pairwise distance matrix: planted shift ordering and exact symmetry") {
    const Dataset a = testutil::make_dataset("a", {50}, {0.5}, 6, 0.0);
    Dataset twin = a;
    twin.id = "twin";
    const Dataset far = testutil::make_dataset("far", {50}, {0.5}, 7, 4.0);

    const DistanceMatrix w = pairwise_distance_matrix({a, twin, far}, KernelSpec::linear(), false);
    CHECK(w.values(0, 1) < w.values(0, 2));
    CHECK(w.values(0, 1) < w.values(1, 2));
    for (Index i = 0; i < 3; ++i) {
        CHECK(w.values(i, i) == 0.0);
        for (Index j = 0; j < 3; ++j) {
            CHECK(w.values(i, j) == w.values(j, i)); // exact, computed once per pair
        }
    }
}

TEST_CASE("normalization lands off-diagonal entries in [0, 1] with endpoints hit") {
    std::vector<Dataset> datasets;
    for (int i = 0; i < 4; ++i) {
        datasets.push_back(
            testutil::make_dataset("d" + std::to_string(i), {40}, {0.5}, 20 + i, 1.5 * i));
    }
    const DistanceMatrix w = pairwise_distance_matrix(datasets, KernelSpec::linear(), true);
    double lo = 1e300, hi = -1e300;
    for (Index i = 0; i < w.size(); ++i) {
        for (Index j = 0; j < w.size(); ++j) {
            if (i == j) continue;
            lo = std::min(lo, w.values(i, j));
            hi = std::max(hi, w.values(i, j));
        }
    }
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
}

TEST_CASE("pairwise errors: fewer than 2 datasets, dimension mismatch") {
    const Dataset a = testutil::make_dataset("a", {10}, {0.5}, 1);
    CHECK_THROWS_AS(pairwise_distance_matrix({a}), std::invalid_argument);
    const Dataset odd = testutil::make_dataset("odd", {10}, {0.5}, 2, 0.0, 5);
    CHECK_THROWS_WITH_AS(pairwise_distance_matrix({a, odd}),
                         doctest::Contains("schema mismatch"), std::invalid_argument);
}

} // TEST_SUITE
