#include "masc/evaluator.hpp"

#include "masc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace masc {

DerivedDataset DerivedDataset::identity(const Dataset& ds) {
    DerivedDataset derived;
    derived.data = ds;
    derived.origin_rows.resize(ds.n());
    for (Index i = 0; i < ds.n(); ++i) derived.origin_rows[i] = i;
    return derived;
}

SplitIndices stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction >= 1.0) {
        throw std::invalid_argument("stratified_split: test_fraction must lie in (0, 1)");
    }
    std::map<std::pair<int, int>, std::vector<Index>> strata;
    for (Index i = 0; i < ds.n(); ++i) {
        strata[{ds.group_labels[i], ds.targets[i]}].push_back(i);
    }

    SplitIndices split;
    Rng rng(seed);
    for (auto& [key, rows] : strata) {
        if (rows.size() < 2) {
            throw std::invalid_argument(
                "stratified_split: stratum (group " + std::to_string(key.first) + ", target " +
                std::to_string(key.second) + ") has " + std::to_string(rows.size()) +
                " row(s), too small to split");
        }
        rng.shuffle(rows);
        Index n_test = static_cast<Index>(std::llround(test_fraction * rows.size()));
        n_test = std::clamp<Index>(n_test, 1, static_cast<Index>(rows.size()) - 1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            (static_cast<Index>(i) < n_test ? split.test : split.train).push_back(rows[i]);
        }
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<Index>& rows, const std::string& id) {
    Dataset out;
    out.id = id;
    out.schema = ds.schema;
    const Index n = static_cast<Index>(rows.size());
    out.features.resize(n, ds.dim());
    out.group_labels.resize(n);
    out.targets.resize(n);
    for (Index i = 0; i < n; ++i) {
        out.features.row(i) = ds.features.row(rows[i]);
        out.group_labels[i] = ds.group_labels[rows[i]];
        out.targets[i] = ds.targets[rows[i]];
    }
    return out;
}

} // namespace

FairnessReport evaluate_method(const Dataset& original, const DerivedDataset& derived,
                               const std::string& method, std::uint64_t split_seed,
                               const LrConfig& lr) {
    if (derived.origin_rows.size() != static_cast<std::size_t>(derived.data.n())) {
        throw std::invalid_argument("evaluate_method: provenance length does not match rows");
    }
    if (derived.data.dim() != original.dim()) {
        throw std::invalid_argument("evaluate_method: schema mismatch between original and '" +
                                    method + "' data");
    }

    const SplitIndices split = stratified_split(original, 0.3, split_seed);
    std::vector<bool> in_test(original.n(), false);
    for (Index i : split.test) in_test[i] = true;

    // Train rows: everything in the derived data except original test rows.
    std::vector<Index> train_rows;
    train_rows.reserve(derived.data.n());
    for (Index i = 0; i < derived.data.n(); ++i) {
        const Index origin = derived.origin_rows[i];
        if (origin >= 0 && in_test[origin]) continue;
        train_rows.push_back(i);
    }
    const Dataset train = take_rows(derived.data, train_rows, original.id);
    const Dataset test = take_rows(original, split.test, original.id);

    const TrainedModel model = train_lr(train.features, train.targets, lr);
    const IntVector predictions = predict(model, test.features);

    FairnessReport report;
    report.dataset_id = original.id;
    report.method = method;
    report.gr = group_ratio(derived.data);
    report.majority_group = majority_group(original);
    report.accuracy = accuracy(test.targets, predictions);

    // Prediction-level DI/SP: positive prediction rates on the test split.
    // Undefined entries (majority predicted all-negative, or a group missing
    // a class) are omitted from the maps instead of aborting the report.
    Dataset predicted = test;
    predicted.targets = predictions;
    const IntVector test_counts = group_cardinalities(test);
    Index majority_positive_preds = 0;
    for (Index i = 0; i < test.n(); ++i) {
        if (test.group_labels[i] == report.majority_group && predictions[i] == 1) {
            ++majority_positive_preds;
        }
    }
    for (int g = 0; g < original.group_count(); ++g) {
        if (g == report.majority_group || test_counts[g] == 0) continue;
        try {
            const double eo = equalized_odds(test.targets, predictions, test.group_labels, g,
                                             report.majority_group);
            report.eq_odds[g] = eo;
        } catch (const std::invalid_argument&) {
            // group lacks a class in the test split
        }
        report.sp[g] = statistical_parity(predicted, g, report.majority_group);
        if (majority_positive_preds > 0) {
            report.di[g] = disparate_impact(predicted, g, report.majority_group);
        }
    }
    return report;
}

} // namespace masc
