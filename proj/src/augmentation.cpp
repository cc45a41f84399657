#include "masc/augmentation.hpp"

#include "masc/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace masc {

ClusterPool build_pool(const std::vector<Dataset>& cluster_members, const std::string& exclude,
                       int cluster_id) {
    const bool excluded_present =
        std::any_of(cluster_members.begin(), cluster_members.end(),
                    [&](const Dataset& ds) { return ds.id == exclude; });
    if (!excluded_present) {
        throw std::invalid_argument("build_pool: excluded dataset '" + exclude +
                                    "' is not a cluster member");
    }

    ClusterPool pool;
    pool.cluster_id = cluster_id;
    pool.per_group.resize(cluster_members.front().group_count());
    for (const Dataset& ds : cluster_members) {
        if (ds.id == exclude) continue;
        for (Index i = 0; i < ds.n(); ++i) {
            PoolInstance inst;
            inst.donor_id = ds.id;
            inst.donor_row = i;
            inst.features = ds.features.row(i);
            inst.target = ds.targets[i];
            pool.per_group[ds.group_labels[i]].push_back(std::move(inst));
        }
    }
    return pool;
}

AugmentationResult augment(const Dataset& target, const ClusterPool& pool, std::uint64_t seed) {
    const int p = target.group_count();
    const IntVector before = group_cardinalities(target);

    int majority = 0;
    for (int g = 1; g < p; ++g) {
        if (before[g] > before[majority]) majority = g; // ties keep the lowest index
    }
    const Index majority_count = before[majority];

    AugmentationResult result;
    result.per_group_before = before;

    std::vector<std::pair<int, const PoolInstance*>> taken; // (group, instance)
    for (int g = 0; g < p; ++g) {
        if (g == majority) continue;
        const Index need = majority_count - before[g];
        if (need <= 0) continue;
        const std::vector<PoolInstance>* candidates =
            static_cast<std::size_t>(g) < pool.per_group.size() ? &pool.per_group[g] : nullptr;
        const Index available = candidates ? static_cast<Index>(candidates->size()) : 0;
        const Index take = std::min(need, available);
        if (take > 0) {
            Rng rng(derive_seed(seed, target.id + "/g" + std::to_string(g)));
            const auto picks = rng.sample_without_replacement(candidates->size(),
                                                              static_cast<std::size_t>(take));
            for (std::size_t idx : picks) taken.emplace_back(g, &(*candidates)[idx]);
        }
        if (need > available) {
            result.shortfall[g] = need - available;
        }
    }

    const Index extra = static_cast<Index>(taken.size());
    Dataset augmented;
    augmented.id = target.id;
    augmented.schema = target.schema;
    augmented.features.resize(target.n() + extra, target.dim());
    augmented.group_labels.resize(target.n() + extra);
    augmented.targets.resize(target.n() + extra);
    augmented.features.topRows(target.n()) = target.features;
    augmented.group_labels.head(target.n()) = target.group_labels;
    augmented.targets.head(target.n()) = target.targets;

    result.borrowed.reserve(taken.size());
    Index row = target.n();
    for (const auto& [group, inst] : taken) {
        augmented.features.row(row) = inst->features.transpose();
        augmented.group_labels[row] = group;
        augmented.targets[row] = inst->target;
        result.borrowed.push_back({inst->donor_id, inst->donor_row});
        ++row;
    }

    result.augmented = std::move(augmented);
    result.per_group_after = group_cardinalities(result.augmented);
    return result;
}

ClusteringRun cluster_datasets(const std::vector<Dataset>& datasets,
                               const PipelineConfig& config) {
    ClusteringRun run;
    run.distances = pairwise_distance_matrix(datasets, config.kernel, config.normalize_distances);
    run.affinity = to_affinity(run.distances, config.affinity_gamma);
    run.decomposition = decompose(laplacian(run.affinity));
    const int k = config.k_override ? *config.k_override
                                    : select_k(run.decomposition, config.l_max).first;
    run.assignment =
        embed_and_cluster(run.decomposition, k, config.cluster_seed, run.distances.dataset_ids);
    return run;
}

AugmentationResult augment_target(const std::vector<Dataset>& datasets,
                                  const ClusterAssignment& assignment,
                                  const std::string& target_id, std::uint64_t seed) {
    Index target_index = -1;
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        if (datasets[i].id == target_id) {
            target_index = static_cast<Index>(i);
            break;
        }
    }
    if (target_index < 0) {
        throw std::invalid_argument("augment_target: unknown target id '" + target_id + "'");
    }

    const int cluster = assignment.labels[target_index];
    std::vector<Dataset> members;
    for (Index i = 0; i < assignment.labels.size(); ++i) {
        if (assignment.labels[i] == cluster) members.push_back(datasets[i]);
    }
    const ClusterPool pool = build_pool(members, target_id, cluster);
    return augment(datasets[target_index], pool, seed);
}

PipelineResult run_pipeline(const std::vector<Dataset>& datasets, const std::string& target_id,
                            const PipelineConfig& config) {
    const bool known = std::any_of(datasets.begin(), datasets.end(),
                                   [&](const Dataset& ds) { return ds.id == target_id; });
    if (!known) {
        throw std::invalid_argument("run_pipeline: unknown target id '" + target_id + "'");
    }
    PipelineResult result;
    result.clustering = cluster_datasets(datasets, config);
    result.augmentation =
        augment_target(datasets, result.clustering.assignment, target_id, config.augment_seed);
    return result;
}

} // namespace masc
