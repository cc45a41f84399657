#pragma once

#include "masc/dataset.hpp"
#include "masc/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace masc {

/// Recipe for a corpus of synthetic datasets with planted distribution
/// families (covariate shift only) and planted group/class imbalance.
struct BenchmarkSpec {
    int n_families = 5;
    int datasets_per_family = 10;
    int extra_datasets = 0; // appended round-robin across families
    int d = 4;
    Index samples_min = 500;
    Index samples_max = 500;
    double shift_magnitude = 5.0; // pairwise distance between family means
    std::vector<std::vector<double>> group_ratios = {{0.8, 0.1, 0.1}}; // cycled across datasets
    std::vector<double> positive_rates = {0.2, 0.4, 0.4};              // per group
    std::uint64_t seed = 42;

    void validate() const;
    static BenchmarkSpec from_json_file(const std::string& path);
};

struct Benchmark {
    std::vector<Dataset> datasets;
    std::vector<int> family; // planted family per dataset
    std::shared_ptr<const Schema> schema;
};

/// Draws each dataset's features from its family Gaussian (identity
/// covariance, means placed on a regular simplex with pairwise distance
/// equal to the shift magnitude), group labels from the dataset's ratio
/// vector, and targets from the per-group positive rates. Bit-deterministic
/// under the seed.
Benchmark generate(const BenchmarkSpec& spec);

} // namespace masc
