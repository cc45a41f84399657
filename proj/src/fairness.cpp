#include "masc/fairness.hpp"

#include <cmath>
#include <stdexcept>

namespace masc {

namespace {

// Positive-outcome rate P(Y=1 | S=group); counts via one pass.
double positive_rate(const Dataset& ds, int group, const char* caller) {
    Index members = 0, positives = 0;
    for (Index i = 0; i < ds.n(); ++i) {
        if (ds.group_labels[i] != group) continue;
        ++members;
        positives += ds.targets[i];
    }
    if (members == 0) {
        throw std::invalid_argument(std::string(caller) + ": group " + std::to_string(group) +
                                    " is empty");
    }
    return static_cast<double>(positives) / static_cast<double>(members);
}

struct Rates {
    double fnr = 0.0;
    double fpr = 0.0;
};

Rates error_rates(const IntVector& y_true, const IntVector& y_pred, const IntVector& groups,
                  int group) {
    Index pos = 0, neg = 0, fn = 0, fp = 0;
    for (Index i = 0; i < y_true.size(); ++i) {
        if (groups[i] != group) continue;
        if (y_true[i] == 1) {
            ++pos;
            if (y_pred[i] == 0) ++fn;
        } else {
            ++neg;
            if (y_pred[i] == 1) ++fp;
        }
    }
    if (pos == 0) {
        throw std::invalid_argument("equalized_odds: undefined rate, group " +
                                    std::to_string(group) + " has no positive instances");
    }
    if (neg == 0) {
        throw std::invalid_argument("equalized_odds: undefined rate, group " +
                                    std::to_string(group) + " has no negative instances");
    }
    return {static_cast<double>(fn) / static_cast<double>(pos),
            static_cast<double>(fp) / static_cast<double>(neg)};
}

} // namespace

Vector group_ratio(const Dataset& ds) {
    const IntVector counts = group_cardinalities(ds);
    return counts.cast<double>() / static_cast<double>(ds.n());
}

double disparate_impact(const Dataset& ds, int minority, int majority) {
    const double minority_rate = positive_rate(ds, minority, "disparate_impact");
    const double majority_rate = positive_rate(ds, majority, "disparate_impact");
    if (majority_rate == 0.0) {
        throw std::invalid_argument("disparate_impact: undefined DI, majority group " +
                                    std::to_string(majority) + " has no positive outcomes");
    }
    return minority_rate / majority_rate;
}

double statistical_parity(const Dataset& ds, int minority, int majority) {
    return positive_rate(ds, minority, "statistical_parity") -
           positive_rate(ds, majority, "statistical_parity");
}

double equalized_odds(const IntVector& y_true, const IntVector& y_pred, const IntVector& groups,
                      int minority, int majority) {
    if (y_true.size() != y_pred.size() || y_true.size() != groups.size()) {
        throw std::invalid_argument("equalized_odds: vector lengths differ");
    }
    const Rates maj = error_rates(y_true, y_pred, groups, majority);
    const Rates min = error_rates(y_true, y_pred, groups, minority);
    return std::abs(maj.fnr - min.fnr) + std::abs(maj.fpr - min.fpr);
}

double accuracy(const IntVector& y_true, const IntVector& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("accuracy: length mismatch (" + std::to_string(y_true.size()) +
                                    " vs " + std::to_string(y_pred.size()) + ")");
    }
    if (y_true.size() == 0) {
        throw std::invalid_argument("accuracy: empty input");
    }
    Index hits = 0;
    for (Index i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == y_pred[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

int majority_group(const Dataset& ds) {
    const IntVector counts = group_cardinalities(ds);
    int majority = 0;
    for (int g = 1; g < counts.size(); ++g) {
        if (counts[g] > counts[majority]) majority = g;
    }
    return majority;
}

FairnessReport dataset_fairness_report(const Dataset& ds, const std::string& method) {
    FairnessReport report;
    report.dataset_id = ds.id;
    report.method = method;
    report.gr = group_ratio(ds);
    report.majority_group = majority_group(ds);
    const IntVector counts = group_cardinalities(ds);
    for (int g = 0; g < ds.group_count(); ++g) {
        if (g == report.majority_group || counts[g] == 0) continue;
        report.di[g] = disparate_impact(ds, g, report.majority_group);
        report.sp[g] = statistical_parity(ds, g, report.majority_group);
    }
    return report;
}

} // namespace masc
