#include "masc/baselines.hpp"

#include "masc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace masc {

RegionMap RegionMap::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open region map file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("region map file " + path + ": " + e.what());
    }
    RegionMap map;
    for (const auto& [id, region] : j.items()) {
        map.region_of[id] = region.get<std::string>();
    }
    return map;
}

SmoteResult group_smote(const Dataset& ds, int k_neighbors, std::uint64_t seed) {
    if (k_neighbors < 1) {
        throw std::invalid_argument("group_smote: k_neighbors must be at least 1");
    }
    const int p = ds.group_count();
    const IntVector counts = group_cardinalities(ds);
    int majority = 0;
    for (int g = 1; g < p; ++g) {
        if (counts[g] > counts[majority]) majority = g;
    }
    const Index majority_count = counts[majority];

    bool any_need = false;
    for (int g = 0; g < p; ++g) {
        if (g != majority && counts[g] > 0 && counts[g] < majority_count) any_need = true;
    }
    // Neighbor metric on standardized features; synthesis on raw values.
    const Matrix scaled = any_need ? standard_scale(ds).features : Matrix();

    std::vector<SmoteProvenance> synthetic;
    std::vector<int> synth_group;
    Rng rng(seed);

    for (int g = 0; g < p; ++g) {
        if (g == majority) continue;
        const Index need = majority_count - counts[g];
        if (need <= 0) continue;
        if (counts[g] < 2) {
            throw std::invalid_argument("group_smote: group " + std::to_string(g) + " has " +
                                        std::to_string(counts[g]) +
                                        " instances; interpolation needs at least 2");
        }
        std::vector<Index> members;
        members.reserve(counts[g]);
        for (Index i = 0; i < ds.n(); ++i) {
            if (ds.group_labels[i] == g) members.push_back(i);
        }
        const Index m = static_cast<Index>(members.size());
        const Index k = std::min<Index>(k_neighbors, m - 1);

        // Exact k-nearest same-group neighbors per member, brute force.
        std::vector<std::vector<Index>> neighbors(m);
        for (Index a = 0; a < m; ++a) {
            std::vector<std::pair<double, Index>> dist;
            dist.reserve(m - 1);
            for (Index b = 0; b < m; ++b) {
                if (a == b) continue;
                dist.emplace_back((scaled.row(members[a]) - scaled.row(members[b])).squaredNorm(),
                                  members[b]);
            }
            std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
            neighbors[a].reserve(k);
            for (Index t = 0; t < k; ++t) neighbors[a].push_back(dist[t].second);
        }

        for (Index s = 0; s < need; ++s) {
            const Index pick = static_cast<Index>(rng.below(m));
            SmoteProvenance prov;
            prov.base_row = members[pick];
            prov.neighbor_row = neighbors[pick][rng.below(neighbors[pick].size())];
            prov.factor = rng.uniform();
            synthetic.push_back(prov);
            synth_group.push_back(g);
        }
    }

    const Index extra = static_cast<Index>(synthetic.size());
    SmoteResult result;
    result.data.id = ds.id;
    result.data.schema = ds.schema;
    result.data.features.resize(ds.n() + extra, ds.dim());
    result.data.group_labels.resize(ds.n() + extra);
    result.data.targets.resize(ds.n() + extra);
    result.data.features.topRows(ds.n()) = ds.features;
    result.data.group_labels.head(ds.n()) = ds.group_labels;
    result.data.targets.head(ds.n()) = ds.targets;

    for (Index s = 0; s < extra; ++s) {
        const SmoteProvenance& prov = synthetic[s];
        const Index row = ds.n() + s;
        result.data.features.row(row) =
            ds.features.row(prov.base_row) +
            prov.factor * (ds.features.row(prov.neighbor_row) - ds.features.row(prov.base_row));
        result.data.group_labels[row] = synth_group[s];
        result.data.targets[row] = ds.targets[prov.base_row];
        result.synthetic.push_back(prov);
    }
    return result;
}

RusResult group_rus(const Dataset& ds, std::uint64_t seed) {
    const int p = ds.group_count();
    const IntVector counts = group_cardinalities(ds);
    Index floor_count = std::numeric_limits<Index>::max();
    for (int g = 0; g < p; ++g) {
        if (counts[g] == 0) {
            throw std::invalid_argument("group_rus: group " + std::to_string(g) + " is empty");
        }
        floor_count = std::min<Index>(floor_count, counts[g]);
    }

    RusResult result;
    Rng rng(seed);
    for (int g = 0; g < p; ++g) {
        std::vector<Index> members;
        members.reserve(counts[g]);
        for (Index i = 0; i < ds.n(); ++i) {
            if (ds.group_labels[i] == g) members.push_back(i);
        }
        if (counts[g] == floor_count) {
            result.kept_rows.insert(result.kept_rows.end(), members.begin(), members.end());
        } else {
            const auto picks = rng.sample_without_replacement(
                members.size(), static_cast<std::size_t>(floor_count));
            for (std::size_t idx : picks) result.kept_rows.push_back(members[idx]);
        }
    }
    std::sort(result.kept_rows.begin(), result.kept_rows.end());

    const Index n = static_cast<Index>(result.kept_rows.size());
    result.data.id = ds.id;
    result.data.schema = ds.schema;
    result.data.features.resize(n, ds.dim());
    result.data.group_labels.resize(n);
    result.data.targets.resize(n);
    for (Index i = 0; i < n; ++i) {
        const Index src = result.kept_rows[i];
        result.data.features.row(i) = ds.features.row(src);
        result.data.group_labels[i] = ds.group_labels[src];
        result.data.targets[i] = ds.targets[src];
    }
    return result;
}

GeoConcatResult geo_concat(const std::vector<Dataset>& datasets, const RegionMap& regions,
                           const std::string& target_id) {
    auto region_it = regions.region_of.find(target_id);
    if (region_it == regions.region_of.end()) {
        throw std::invalid_argument("geo_concat: no region recorded for target '" + target_id +
                                    "'");
    }
    const std::string& region = region_it->second;

    std::vector<const Dataset*> members;
    const Dataset* target = nullptr;
    for (const Dataset& ds : datasets) {
        if (ds.id == target_id) target = &ds;
        auto it = regions.region_of.find(ds.id);
        if (it != regions.region_of.end() && it->second == region) {
            members.push_back(&ds);
        }
    }
    if (target == nullptr) {
        throw std::invalid_argument("geo_concat: target '" + target_id +
                                    "' is not among the datasets");
    }

    Index total = 0;
    for (const Dataset* ds : members) total += ds->n();

    GeoConcatResult result;
    result.data.id = target_id;
    result.data.schema = target->schema;
    result.data.features.resize(total, target->dim());
    result.data.group_labels.resize(total);
    result.data.targets.resize(total);
    result.origin_rows.reserve(total);

    Index row = 0;
    for (const Dataset* ds : members) {
        result.data.features.middleRows(row, ds->n()) = ds->features;
        result.data.group_labels.segment(row, ds->n()) = ds->group_labels;
        result.data.targets.segment(row, ds->n()) = ds->targets;
        for (Index i = 0; i < ds->n(); ++i) {
            result.origin_rows.push_back(ds == target ? i : Index(-1));
        }
        row += ds->n();
    }
    return result;
}

} // namespace masc
