#pragma once

#include "masc/dataset.hpp"
#include "masc/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace masc {

/// Geographic region per dataset id, for the neighbor-concatenation baseline.
struct RegionMap {
    std::map<std::string, std::string> region_of;

    static RegionMap from_json_file(const std::string& path);
};

/// Provenance of one synthetic SMOTE row: interpolation endpoints within the
/// source dataset and the interpolation factor.
struct SmoteProvenance {
    Index base_row = 0;
    Index neighbor_row = 0;
    double factor = 0.0; // u in x + u * (neighbor - x)
};

struct SmoteResult {
    Dataset data;                          // original rows first, synthetic appended
    std::vector<SmoteProvenance> synthetic; // one per appended row, in order
};

struct RusResult {
    Dataset data;
    std::vector<Index> kept_rows; // indices into the input, ascending
};

struct GeoConcatResult {
    Dataset data;
    std::vector<Index> origin_rows; // index into the target, -1 for foreign rows
};

/// Over-samples every minority group up to the majority count by
/// interpolating between same-group nearest neighbors (Euclidean on scaled
/// features). Synthetic rows copy the base row's target label. A minority
/// group with fewer than 2 instances cannot be interpolated and is an error.
SmoteResult group_smote(const Dataset& ds, int k_neighbors, std::uint64_t seed);

/// Down-samples every group to the smallest group's cardinality, uniformly
/// without replacement. Rows of the smallest group are untouched.
RusResult group_rus(const Dataset& ds, std::uint64_t seed);

/// Concatenates every dataset sharing the target's region, target included.
GeoConcatResult geo_concat(const std::vector<Dataset>& datasets, const RegionMap& regions,
                           const std::string& target_id);

} // namespace masc
