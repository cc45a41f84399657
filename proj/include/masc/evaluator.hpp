#pragma once

#include "masc/dataset.hpp"
#include "masc/fairness.hpp"
#include "masc/logistic.hpp"
#include "masc/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace masc {

/// A dataset derived from an original by some augmentation method, with one
/// provenance entry per row: the original row index it came from, or -1 for
/// rows that are borrowed, synthetic, or from another dataset.
struct DerivedDataset {
    Dataset data;
    std::vector<Index> origin_rows;

    /// The original itself (identity provenance).
    static DerivedDataset identity(const Dataset& ds);
};

struct SplitIndices {
    std::vector<Index> train;
    std::vector<Index> test;
};

/// 70/30 split of the original dataset, stratified by (group, target) so
/// every stratum contributes to both sides. Throws when a non-empty stratum
/// has fewer than 2 rows.
SplitIndices stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Trains logistic regression on the derived counterpart of the original's
/// train split (original test rows are filtered out of the derived data via
/// provenance; borrowed and synthetic rows stay) and evaluates on the
/// untouched test rows. Reports accuracy, Eq.Odds per minority group, and
/// DI/SP of the predictions on the test set.
FairnessReport evaluate_method(const Dataset& original, const DerivedDataset& derived,
                               const std::string& method, std::uint64_t split_seed,
                               const LrConfig& lr = {});

} // namespace masc
