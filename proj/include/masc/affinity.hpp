#pragma once

#include "masc/mmd.hpp"
#include "masc/types.hpp"

#include <string>
#include <vector>

namespace masc {

/// Weighted undirected similarity graph over datasets: A(i,j) =
/// exp(-gamma * W(i,j)^2) off the diagonal, 0 on it.
struct AffinityMatrix {
    Matrix values;
    double gamma = 1.0;
    std::vector<std::string> dataset_ids;

    Index size() const { return values.rows(); }
};

/// Gaussian map from distances to affinities. The input must be symmetric
/// with a zero diagonal; larger distance gives strictly smaller affinity.
AffinityMatrix to_affinity(const DistanceMatrix& w, double gamma = 1.0);

} // namespace masc
