#include "masc/benchmark.hpp"

#include "masc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace masc {

void BenchmarkSpec::validate() const {
    if (n_families < 1 || datasets_per_family < 1 || extra_datasets < 0) {
        throw std::invalid_argument("benchmark: family/dataset counts must be positive");
    }
    if (d < 1) throw std::invalid_argument("benchmark: d must be at least 1");
    if (samples_min < 2 || samples_max < samples_min) {
        throw std::invalid_argument("benchmark: need samples_max >= samples_min >= 2");
    }
    if (shift_magnitude < 0.0) {
        throw std::invalid_argument("benchmark: shift magnitude must be non-negative");
    }
    if (group_ratios.empty() || positive_rates.size() < 2) {
        throw std::invalid_argument("benchmark: need group ratios and at least 2 groups");
    }
    for (const auto& ratios : group_ratios) {
        if (ratios.size() != positive_rates.size()) {
            throw std::invalid_argument("benchmark: ratio vector length must match group count");
        }
        double sum = 0.0;
        for (double v : ratios) {
            if (v < 0.0) throw std::invalid_argument("benchmark: negative group ratio");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("benchmark: group ratios must sum to 1");
        }
    }
    for (double rate : positive_rates) {
        if (rate < 0.0 || rate > 1.0) {
            throw std::invalid_argument("benchmark: positive rates must lie in [0, 1]");
        }
    }
}

BenchmarkSpec BenchmarkSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open benchmark spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("benchmark spec " + path + ": " + e.what());
    }
    BenchmarkSpec spec;
    try {
        spec.n_families = j.value("n_families", spec.n_families);
        spec.datasets_per_family = j.value("datasets_per_family", spec.datasets_per_family);
        spec.extra_datasets = j.value("extra_datasets", spec.extra_datasets);
        spec.d = j.value("d", spec.d);
        spec.samples_min = j.value("samples_min", spec.samples_min);
        spec.samples_max = j.value("samples_max", spec.samples_max);
        spec.shift_magnitude = j.value("shift_magnitude", spec.shift_magnitude);
        if (j.contains("group_ratios")) {
            spec.group_ratios = j.at("group_ratios").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("positive_rates")) {
            spec.positive_rates = j.at("positive_rates").get<std::vector<double>>();
        }
        spec.seed = j.value("seed", spec.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("benchmark spec " + path + ": " + e.what());
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("benchmark spec " + path + ": " + e.what());
    }
    return spec;
}

namespace {

// Family means on a regular simplex with pairwise distance shift. The
// simplex spans f-1 dimensions: an orthonormal basis of the centered
// subspace gives vertex coordinates with pairwise distance sqrt(2), scaled
// accordingly. Falls back to random directions when d cannot hold a regular
// simplex of f vertices.
Matrix family_means(int families, int d, double shift, Rng& rng) {
    Matrix means = Matrix::Zero(families, d);
    if (families == 1 || shift == 0.0) return means;
    if (d >= families - 1) {
        Matrix centering =
            Matrix::Identity(families, families) -
            Matrix::Constant(families, families, 1.0 / static_cast<double>(families));
        Eigen::SelfAdjointEigenSolver<Matrix> solver(centering);
        // eigenvalues ascending: one zero, then f-1 ones
        const Matrix basis = solver.eigenvectors().rightCols(families - 1);
        means.leftCols(families - 1) = (shift / std::sqrt(2.0)) * basis;
        return means;
    }
    for (int f = 0; f < families; ++f) {
        Vector direction(d);
        for (int c = 0; c < d; ++c) direction[c] = rng.normal();
        means.row(f) = direction.normalized() * (shift / std::sqrt(2.0));
    }
    return means;
}

// Largest-remainder apportionment of n rows to the ratio vector.
std::vector<Index> group_counts(const std::vector<double>& ratios, Index n) {
    const int p = static_cast<int>(ratios.size());
    std::vector<Index> counts(p);
    std::vector<std::pair<double, int>> remainders(p);
    Index assigned = 0;
    for (int g = 0; g < p; ++g) {
        const double exact = ratios[g] * static_cast<double>(n);
        counts[g] = static_cast<Index>(std::floor(exact));
        remainders[g] = {-(exact - std::floor(exact)), g};
        assigned += counts[g];
    }
    std::sort(remainders.begin(), remainders.end());
    for (Index i = 0; assigned < n; ++i, ++assigned) {
        counts[remainders[static_cast<std::size_t>(i) % p].second]++;
    }
    return counts;
}

} // namespace

Benchmark generate(const BenchmarkSpec& spec) {
    spec.validate();
    const int p = static_cast<int>(spec.positive_rates.size());

    auto schema = std::make_shared<Schema>();
    for (int c = 0; c < spec.d; ++c) schema->feature_names.push_back("f" + std::to_string(c));
    schema->protected_attribute = "group";
    for (int g = 0; g < p; ++g) {
        const std::string label = "g" + std::to_string(g);
        schema->protected_groups.push_back(label);
        schema->aggregation_map[label] = label;
    }
    schema->target = "label";
    schema->positive_label = "1";
    schema->validate();

    Rng rng(spec.seed);
    const Matrix means = family_means(spec.n_families, spec.d, spec.shift_magnitude, rng);

    const int total = spec.n_families * spec.datasets_per_family + spec.extra_datasets;
    Benchmark bench;
    bench.schema = schema;
    bench.datasets.reserve(total);
    bench.family.reserve(total);

    std::vector<int> within_family(spec.n_families, 0);
    for (int idx = 0; idx < total; ++idx) {
        const int family = idx < spec.n_families * spec.datasets_per_family
                               ? idx / spec.datasets_per_family
                               : (idx - spec.n_families * spec.datasets_per_family) %
                                     spec.n_families;
        const std::string id =
            "F" + std::to_string(family) + "_D" + std::to_string(within_family[family]++);
        Rng local(derive_seed(spec.seed, id));

        const Index n =
            spec.samples_min +
            static_cast<Index>(local.below(static_cast<std::uint64_t>(spec.samples_max -
                                                                      spec.samples_min + 1)));
        const auto& ratios = spec.group_ratios[idx % spec.group_ratios.size()];
        const std::vector<Index> counts = group_counts(ratios, n);

        Dataset ds;
        ds.id = id;
        ds.schema = schema;
        ds.features.resize(n, spec.d);
        ds.group_labels.resize(n);
        ds.targets.resize(n);

        std::vector<int> labels;
        labels.reserve(n);
        for (int g = 0; g < p; ++g) {
            labels.insert(labels.end(), counts[g], g);
        }
        local.shuffle(labels);

        for (Index i = 0; i < n; ++i) {
            for (int c = 0; c < spec.d; ++c) {
                ds.features(i, c) = means(family, c) + local.normal();
            }
            ds.group_labels[i] = labels[i];
            ds.targets[i] = local.uniform() < spec.positive_rates[labels[i]] ? 1 : 0;
        }
        bench.datasets.push_back(std::move(ds));
        bench.family.push_back(family);
    }
    return bench;
}

} // namespace masc
