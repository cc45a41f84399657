#include "masc/mmd.hpp"

#include "masc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace masc {

DistanceMatrix pairwise_distance_matrix(const std::vector<Dataset>& datasets,
                                        const KernelSpec& kernel, bool normalize) {
    const Index r = static_cast<Index>(datasets.size());
    if (r < 2) {
        throw std::invalid_argument("pairwise_distance_matrix: need at least 2 datasets, got " +
                                    std::to_string(r));
    }
    for (Index i = 1; i < r; ++i) {
        if (datasets[i].dim() != datasets[0].dim()) {
            throw std::invalid_argument("pairwise_distance_matrix: schema mismatch, dataset '" +
                                        datasets[i].id + "' has " +
                                        std::to_string(datasets[i].dim()) + " features, '" +
                                        datasets[0].id + "' has " +
                                        std::to_string(datasets[0].dim()));
        }
    }

    DistanceMatrix dist;
    dist.values = Matrix::Zero(r, r);
    dist.dataset_ids.reserve(r);
    for (const auto& ds : datasets) dist.dataset_ids.push_back(ds.id);

    std::vector<std::pair<Index, Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(r) * (r - 1) / 2);
    for (Index i = 0; i < r; ++i) {
        for (Index j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
    }
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const double v = mmd(datasets[i].features, datasets[j].features, kernel);
        dist.values(i, j) = v;
        dist.values(j, i) = v;
    });

    if (normalize) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (Index i = 0; i < r; ++i) {
            for (Index j = 0; j < r; ++j) {
                if (i == j) continue;
                lo = std::min(lo, dist.values(i, j));
                hi = std::max(hi, dist.values(i, j));
            }
        }
        const double range = hi - lo;
        for (Index i = 0; i < r; ++i) {
            for (Index j = 0; j < r; ++j) {
                if (i == j) continue;
                dist.values(i, j) = range > 0.0 ? (dist.values(i, j) - lo) / range : 0.0;
            }
        }
    }
    return dist;
}

double median_heuristic_gamma(const std::vector<Dataset>& datasets) {
    Index total = 0;
    for (const auto& ds : datasets) total += ds.n();
    if (total == 0) return 1.0;
    const Index cap = std::min<Index>(total, 1000);
    const Index stride = std::max<Index>(1, total / cap);

    Matrix rows(cap, datasets.front().dim());
    Index taken = 0;
    Index cursor = 0;
    for (const auto& ds : datasets) {
        for (Index i = 0; i < ds.n() && taken < cap; ++i, ++cursor) {
            if (cursor % stride == 0) rows.row(taken++) = ds.features.row(i);
        }
    }
    rows.conservativeResize(taken, Eigen::NoChange);

    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(taken) * (taken - 1) / 2);
    for (Index i = 0; i < taken; ++i) {
        for (Index j = i + 1; j < taken; ++j) {
            dists.push_back((rows.row(i) - rows.row(j)).norm());
        }
    }
    if (dists.empty()) return 1.0;
    auto mid = dists.begin() + dists.size() / 2;
    std::nth_element(dists.begin(), mid, dists.end());
    const double median = *mid;
    if (median <= 0.0) return 1.0;
    return 1.0 / (2.0 * median * median);
}

} // namespace masc
