#include "masc/kmeans.hpp"

#include "masc/rng.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace masc {

namespace {

// Squared distance of every point to its nearest centroid, plus the label.
void assign(const Matrix& points, const Matrix& centroids, IntVector& labels, Vector& dist2) {
    const Index n = points.rows();
    const Index k = centroids.rows();
    for (Index i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (Index c = 0; c < k; ++c) {
            const double d = (points.row(i) - centroids.row(c)).squaredNorm();
            if (d < best) {
                best = d;
                best_c = static_cast<int>(c);
            }
        }
        labels[i] = best_c;
        dist2[i] = best;
    }
}

Matrix plus_plus_init(const Matrix& points, int k, Rng& rng) {
    const Index n = points.rows();
    Matrix centroids(k, points.cols());
    centroids.row(0) = points.row(static_cast<Index>(rng.below(n)));

    Vector d2(n);
    for (Index i = 0; i < n; ++i) d2[i] = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        Index chosen = 0;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (Index i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<Index>(rng.below(n));
        }
        centroids.row(c) = points.row(chosen);
        for (Index i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], (points.row(i) - centroids.row(c)).squaredNorm());
        }
    }
    return centroids;
}

// Moves one member of the largest cluster into each empty cluster, preferring
// the point farthest from its centroid.
void repair_empty_clusters(const Matrix& points, Matrix& centroids, IntVector& labels,
                           Vector& dist2) {
    const int k = static_cast<int>(centroids.rows());
    std::vector<Index> count(k, 0);
    for (Index i = 0; i < labels.size(); ++i) count[labels[i]]++;
    for (int c = 0; c < k; ++c) {
        if (count[c] > 0) continue;
        Index donor = -1;
        double worst = -1.0;
        for (Index i = 0; i < labels.size(); ++i) {
            if (count[labels[i]] < 2) continue;
            if (dist2[i] > worst) {
                worst = dist2[i];
                donor = i;
            }
        }
        if (donor < 0) break; // fewer points than clusters
        count[labels[donor]]--;
        labels[donor] = c;
        count[c] = 1;
        centroids.row(c) = points.row(donor);
        dist2[donor] = 0.0;
    }
}

} // namespace

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed, const KMeansParams& params) {
    const Index n = points.rows();
    if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
    if (n < k) {
        throw std::invalid_argument("kmeans: " + std::to_string(n) + " points cannot form " +
                                    std::to_string(k) + " clusters");
    }

    Rng rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < params.restarts; ++restart) {
        Matrix centroids = plus_plus_init(points, k, rng);
        IntVector labels(n);
        Vector dist2(n);
        for (int iter = 0; iter < params.max_iterations; ++iter) {
            assign(points, centroids, labels, dist2);
            repair_empty_clusters(points, centroids, labels, dist2);

            Matrix next = Matrix::Zero(k, points.cols());
            std::vector<Index> count(k, 0);
            for (Index i = 0; i < n; ++i) {
                next.row(labels[i]) += points.row(i);
                count[labels[i]]++;
            }
            double movement = 0.0;
            for (int c = 0; c < k; ++c) {
                if (count[c] == 0) continue;
                next.row(c) /= static_cast<double>(count[c]);
                movement = std::max(movement, (next.row(c) - centroids.row(c)).norm());
            }
            centroids = next;
            if (movement < params.tolerance) break;
        }
        assign(points, centroids, labels, dist2);
        repair_empty_clusters(points, centroids, labels, dist2);
        const double inertia = dist2.sum();
        if (inertia < best.inertia) {
            best.labels = labels;
            best.centroids = centroids;
            best.inertia = inertia;
        }
    }
    return best;
}

} // namespace masc
