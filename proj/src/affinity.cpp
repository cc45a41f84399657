#include "masc/affinity.hpp"

#include <cmath>
#include <stdexcept>

namespace masc {

AffinityMatrix to_affinity(const DistanceMatrix& w, double gamma) {
    if (gamma <= 0.0) {
        throw std::invalid_argument("to_affinity: gamma must be positive, got " +
                                    std::to_string(gamma));
    }
    const Index r = w.size();
    for (Index i = 0; i < r; ++i) {
        if (w.values(i, i) != 0.0) {
            throw std::invalid_argument("to_affinity: distance matrix diagonal must be zero");
        }
        for (Index j = i + 1; j < r; ++j) {
            if (w.values(i, j) != w.values(j, i)) {
                throw std::invalid_argument("to_affinity: distance matrix must be symmetric");
            }
        }
    }

    AffinityMatrix a;
    a.gamma = gamma;
    a.dataset_ids = w.dataset_ids;
    a.values = (-gamma * w.values.array().square()).exp();
    a.values.diagonal().setZero();
    return a;
}

} // namespace masc
