#pragma once

#include "masc/dataset.hpp"
#include "masc/spectral.hpp"
#include "masc/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace masc {

/// One instance available for borrowing, with its provenance.
struct PoolInstance {
    std::string donor_id;
    Index donor_row = 0;
    Vector features;
    int target = 0;
};

/// All instances of a cluster's member datasets except the target's own,
/// indexed by protected group.
struct ClusterPool {
    int cluster_id = 0;
    std::vector<std::vector<PoolInstance>> per_group;

    IntVector counts() const {
        IntVector c(static_cast<Index>(per_group.size()));
        for (std::size_t g = 0; g < per_group.size(); ++g) {
            c[static_cast<Index>(g)] = static_cast<int>(per_group[g].size());
        }
        return c;
    }
};

struct BorrowedRow {
    std::string donor_id;
    Index donor_row = 0;
};

/// Augmented target plus full accounting: which donors contributed, group
/// counts before/after, and any gap left by an insufficient pool.
struct AugmentationResult {
    Dataset augmented;
    std::vector<BorrowedRow> borrowed; // order matches the appended rows
    IntVector per_group_before;
    IntVector per_group_after;
    std::map<int, Index> shortfall; // group -> instances still missing
};

/// Collects every row of every cluster member except the excluded target.
/// Throws when the excluded id is not among the members.
ClusterPool build_pool(const std::vector<Dataset>& cluster_members, const std::string& exclude,
                       int cluster_id = 0);

/// Raises each minority group toward the majority count by sampling the pool
/// uniformly without replacement under the seed. When the pool cannot fill
/// the gap, everything available is taken and the rest is recorded as
/// shortfall. Majority ties break to the lowest group index.
AugmentationResult augment(const Dataset& target, const ClusterPool& pool, std::uint64_t seed);

struct PipelineConfig {
    KernelSpec kernel = KernelSpec::linear();
    bool normalize_distances = true;
    double affinity_gamma = 1.0;
    int l_max = 10;
    std::optional<int> k_override; // unset = eigengap selection
    std::uint64_t cluster_seed = 42;
    std::uint64_t augment_seed = 42;
};

/// Clustering artifacts shared by every target of a run.
struct ClusteringRun {
    DistanceMatrix distances;
    AffinityMatrix affinity;
    LaplacianDecomposition decomposition;
    ClusterAssignment assignment;
};

/// Distance matrix -> affinity -> Laplacian spectrum -> k -> k-means.
ClusteringRun cluster_datasets(const std::vector<Dataset>& datasets, const PipelineConfig& config);

/// Augments one target out of an existing clustering.
AugmentationResult augment_target(const std::vector<Dataset>& datasets,
                                  const ClusterAssignment& assignment,
                                  const std::string& target_id, std::uint64_t seed);

/// End-to-end result for a single target.
struct PipelineResult {
    ClusteringRun clustering;
    AugmentationResult augmentation;
};

/// Full pipeline for one target: pairwise MMD, Gaussian affinity, spectral
/// clustering with eigengap k selection, then in-cluster augmentation.
PipelineResult run_pipeline(const std::vector<Dataset>& datasets, const std::string& target_id,
                            const PipelineConfig& config = {});

} // namespace masc
