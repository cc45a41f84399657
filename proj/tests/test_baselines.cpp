#include "masc/baselines.hpp"

#include "masc/fairness.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace masc;

TEST_SUITE("baselines") {

TEST_CASE("group_smote balances counts") {
    const Dataset ds = testutil::make_dataset("s", {100, 50, 50}, {0.3, 0.5, 0.5}, 90);
    const SmoteResult result = group_smote(ds, 5, 42);
    const IntVector counts = group_cardinalities(result.data);
    CHECK(counts[0] == 100);
    CHECK(counts[1] == 100);
    CHECK(counts[2] == 100);
    CHECK(result.data.n() == 300);
    CHECK(static_cast<Index>(result.synthetic.size()) == 100);
    // original rows intact
    CHECK(result.data.features.topRows(ds.n()) == ds.features);
}

TEST_CASE("synthetic rows lie on segments between same-group rows") {
    const Dataset ds = testutil::make_dataset("s", {40, 12, 9}, {0.3, 0.5, 0.5}, 91);
    const SmoteResult result = group_smote(ds, 3, 7);
    for (std::size_t s = 0; s < result.synthetic.size(); ++s) {
        const SmoteProvenance& prov = result.synthetic[s];
        const Index row = ds.n() + static_cast<Index>(s);
        const Vector base = ds.features.row(prov.base_row);
        const Vector neighbor = ds.features.row(prov.neighbor_row);
        const Vector expected = base + prov.factor * (neighbor - base);
        CHECK((result.data.features.row(row).transpose() - expected).norm() < 1e-9);
        // same group, label copied from the base row
        CHECK(ds.group_labels[prov.base_row] == result.data.group_labels[row]);
        CHECK(ds.group_labels[prov.neighbor_row] == result.data.group_labels[row]);
        CHECK(result.data.targets[row] == ds.targets[prov.base_row]);
        CHECK(prov.factor >= 0.0);
        CHECK(prov.factor < 1.0);
    }
}

TEST_CASE("two identical minority rows synthesize copies of themselves") {
    Dataset ds = testutil::make_dataset("s", {5, 2}, {0.4, 0.5}, 92);
    ds.features.row(5) = ds.features.row(6); // make the two group-1 rows identical
    const SmoteResult result = group_smote(ds, 5, 11);
    for (Index i = ds.n(); i < result.data.n(); ++i) {
        CHECK((result.data.features.row(i) - ds.features.row(5)).norm() < 1e-12);
    }
}

TEST_CASE("group_smote is deterministic under seed") {
    const Dataset ds = testutil::make_dataset("s", {30, 10, 8}, {0.4, 0.5, 0.5}, 93);
    const SmoteResult a = group_smote(ds, 5, 21);
    const SmoteResult b = group_smote(ds, 5, 21);
    CHECK(a.data.features == b.data.features);
    CHECK(a.data.targets == b.data.targets);
}

TEST_CASE("group_smote rejects minority groups below 2 rows") {
    const Dataset ds = testutil::make_dataset("s", {30, 1, 10}, {0.4, 0.5, 0.5}, 94);
    CHECK_THROWS_WITH_AS(group_smote(ds, 5, 1), doctest::Contains("group 1"),
                         std::invalid_argument);
    CHECK_THROWS_AS(group_smote(ds, 0, 1), std::invalid_argument);
}

TEST_CASE("group_rus downsamples to the smallest group") {
    const Dataset ds = testutil::make_dataset("r", {100, 50, 20}, {0.4, 0.5, 0.5}, 95);
    const RusResult result = group_rus(ds, 42);
    const IntVector counts = group_cardinalities(result.data);
    CHECK(counts[0] == 20);
    CHECK(counts[1] == 20);
    CHECK(counts[2] == 20);

    // output rows are a subset of input rows, smallest group untouched
    std::set<Index> kept(result.kept_rows.begin(), result.kept_rows.end());
    CHECK(kept.size() == 60);
    for (Index i = 0; i < ds.n(); ++i) {
        if (ds.group_labels[i] == 2) CHECK(kept.count(i) == 1);
    }
    for (Index i = 0; i < result.data.n(); ++i) {
        CHECK((result.data.features.row(i) - ds.features.row(result.kept_rows[i])).norm() == 0.0);
    }
}

TEST_CASE("group_rus on balanced data keeps every row") {
    const Dataset ds = testutil::make_dataset("r", {15, 15, 15}, {0.4, 0.5, 0.5}, 96);
    const RusResult result = group_rus(ds, 1);
    CHECK(result.data.n() == ds.n());
    CHECK(result.data.features == ds.features);
}

TEST_CASE("group_rus mirrors the North-Dakota-scale example") {
    const Dataset ds = testutil::make_dataset("nd", {4095, 60, 300}, {0.3, 0.3, 0.3}, 97);
    const RusResult result = group_rus(ds, 5);
    const IntVector counts = group_cardinalities(result.data);
    CHECK(counts[0] == 60);
    CHECK(counts[1] == 60);
    CHECK(counts[2] == 60);
    CHECK(result.data.n() == 180);
}

TEST_CASE("group_rus rejects empty groups") {
    const Dataset ds = testutil::make_dataset("r", {10, 0, 5}, {0.4, 0.5, 0.5}, 98);
    CHECK_THROWS_AS(group_rus(ds, 1), std::invalid_argument);
}

TEST_CASE("geo_concat merges a region and keeps every member row once") {
    const Dataset a = testutil::make_dataset("A", {60, 40}, {0.4, 0.5}, 99);
    const Dataset b = testutil::make_dataset("B", {30, 20}, {0.4, 0.5}, 100);
    const Dataset c = testutil::make_dataset("C", {10, 10}, {0.4, 0.5}, 101);
    RegionMap regions;
    regions.region_of = {{"A", "west"}, {"B", "west"}, {"C", "east"}};

    const GeoConcatResult result = geo_concat({a, b, c}, regions, "A");
    CHECK(result.data.n() == 150);

    // group ratios equal the count-weighted mean of member ratios
    const Vector expected =
        (group_ratio(a) * 100.0 + group_ratio(b) * 50.0) / 150.0;
    const Vector got = group_ratio(result.data);
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);

    // provenance: target rows indexed, foreign rows marked -1
    Index own = 0, foreign = 0;
    for (Index origin : result.origin_rows) {
        origin >= 0 ? ++own : ++foreign;
    }
    CHECK(own == a.n());
    CHECK(foreign == b.n());
}

TEST_CASE("geo_concat of a singleton region returns the target unchanged") {
    const Dataset a = testutil::make_dataset("A", {20, 10}, {0.4, 0.5}, 102);
    RegionMap regions;
    regions.region_of = {{"A", "solo"}};
    const GeoConcatResult result = geo_concat({a}, regions, "A");
    CHECK(result.data.n() == a.n());
    CHECK(result.data.features == a.features);
}

TEST_CASE("geo_concat rejects unknown regions") {
    const Dataset a = testutil::make_dataset("A", {20, 10}, {0.4, 0.5}, 103);
    RegionMap regions;
    CHECK_THROWS_AS(geo_concat({a}, regions, "A"), std::invalid_argument);
}

} // TEST_SUITE
