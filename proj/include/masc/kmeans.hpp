#pragma once

#include "masc/types.hpp"

#include <cstdint>

namespace masc {

struct KMeansParams {
    int restarts = 10;
    int max_iterations = 300;
    double tolerance = 1e-6; // max centroid movement between iterations
};

struct KMeansResult {
    IntVector labels;
    Matrix centroids; // k x d
    double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding, several restarts, and the best
/// inertia kept. Empty clusters are refilled from the largest cluster so
/// every label in [0, k) stays in use whenever n >= k. Deterministic under
/// the seed.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    const KMeansParams& params = {});

} // namespace masc
