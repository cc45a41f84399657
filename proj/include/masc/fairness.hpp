#pragma once

#include "masc/dataset.hpp"
#include "masc/types.hpp"

#include <map>
#include <optional>
#include <string>

namespace masc {

/// GR/DI/SP of a dataset plus, when predictions were supplied, Eq.Odds and
/// accuracy of a classifier. One report per dataset x method; the di/sp/
/// eq_odds maps carry one entry per minority group, keyed by group index.
struct FairnessReport {
    std::string dataset_id;
    std::string method;
    Vector gr; // length p, sums to 1
    std::map<int, double> di;
    std::map<int, double> sp;
    std::map<int, double> eq_odds;          // present iff predictions supplied
    std::optional<double> accuracy;         // same
    int majority_group = 0;
};

/// Fraction of instances per protected group; sums to 1.
Vector group_ratio(const Dataset& ds);

/// Ratio of positive-outcome rates, minority over majority. 1 is unbiased.
/// The raw ratio is reported without clipping. A majority group with no
/// positive outcome is an error rather than an infinity.
double disparate_impact(const Dataset& ds, int minority, int majority);

/// Difference of positive-outcome rates, minority minus majority; negative
/// means the minority is disadvantaged.
double statistical_parity(const Dataset& ds, int minority, int majority);

/// |FNR_majority - FNR_minority| + |FPR_majority - FPR_minority|, in [0, 2].
/// Both groups must contain at least one positive and one negative instance.
double equalized_odds(const IntVector& y_true, const IntVector& y_pred, const IntVector& groups,
                      int minority, int majority);

/// Fraction of matching entries.
double accuracy(const IntVector& y_true, const IntVector& y_pred);

/// Majority group of a dataset: the group with the largest count, ties to
/// the lowest index.
int majority_group(const Dataset& ds);

/// GR plus DI/SP of every minority group against the majority; no model
/// involved (Eq.Odds and accuracy stay unset).
FairnessReport dataset_fairness_report(const Dataset& ds, const std::string& method);

} // namespace masc
