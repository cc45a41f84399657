#include "masc/affinity.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace masc;

namespace {

DistanceMatrix distance_fixture(const Matrix& values) {
    DistanceMatrix w;
    w.values = values;
    for (Index i = 0; i < values.rows(); ++i) w.dataset_ids.push_back("d" + std::to_string(i));
    return w;
}

} // namespace

TEST_SUITE("affinity_graph") {

TEST_CASE("hand values and zero diagonal") {
    Matrix values(3, 3);
    values << 0.0, 0.0, 1.0,
              0.0, 0.0, 0.5,
              1.0, 0.5, 0.0;
    const AffinityMatrix a = to_affinity(distance_fixture(values), 1.0);

    CHECK(a.values(0, 1) == doctest::Approx(1.0));             // exp(0)
    CHECK(a.values(0, 2) == doctest::Approx(std::exp(-1.0)));  // 0.36788
    CHECK(a.values(1, 2) == doctest::Approx(std::exp(-0.25)));
    for (Index i = 0; i < 3; ++i) CHECK(a.values(i, i) == 0.0);
    CHECK(a.dataset_ids == std::vector<std::string>{"d0", "d1", "d2"});
}

TEST_CASE("symmetry preserved and monotone inversion") {
    Rng rng(31);
    Matrix values = Matrix::Zero(6, 6);
    for (Index i = 0; i < 6; ++i) {
        for (Index j = i + 1; j < 6; ++j) {
            values(i, j) = values(j, i) = rng.uniform();
        }
    }
    const AffinityMatrix a = to_affinity(distance_fixture(values), 2.5);
    CHECK((a.values - a.values.transpose()).cwiseAbs().maxCoeff() == 0.0);

    for (Index i = 0; i < 6; ++i) {
        for (Index j = i + 1; j < 6; ++j) {
            for (Index u = 0; u < 6; ++u) {
                for (Index v = u + 1; v < 6; ++v) {
                    if (values(i, j) < values(u, v)) {
                        CHECK(a.values(i, j) > a.values(u, v));
                    }
                }
            }
        }
    }
}

TEST_CASE("off-diagonal range is (0, 1] for distances in [0, 1]") {
    Matrix values(2, 2);
    values << 0.0, 1.0, 1.0, 0.0;
    const AffinityMatrix a = to_affinity(distance_fixture(values), 4.0);
    CHECK(a.values(0, 1) > 0.0);
    CHECK(a.values(0, 1) <= 1.0);
}

TEST_CASE("gamma must be positive") {
    Matrix values = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(to_affinity(distance_fixture(values), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(to_affinity(distance_fixture(values), -1.0), std::invalid_argument);
}

TEST_CASE("rejects asymmetric input and nonzero diagonal") {
    Matrix bad(2, 2);
    bad << 0.0, 0.5, 0.4, 0.0;
    CHECK_THROWS_AS(to_affinity(distance_fixture(bad), 1.0), std::invalid_argument);

    Matrix diag(2, 2);
    diag << 0.1, 0.5, 0.5, 0.0;
    CHECK_THROWS_AS(to_affinity(distance_fixture(diag), 1.0), std::invalid_argument);
}

} // TEST_SUITE
