#pragma once

#include <map>
#include <string>
#include <vector>

namespace masc {

/// Column layout and protected-attribute conventions shared by every dataset
/// in a run. aggregation_map folds raw protected categories into the coarser
/// protected_groups labels (e.g. seven small race categories into "Other").
struct Schema {
    std::vector<std::string> feature_names;
    std::string protected_attribute;
    std::vector<std::string> protected_groups;
    std::map<std::string, std::string> aggregation_map;
    std::string target;
    std::string positive_label;

    int group_count() const { return static_cast<int>(protected_groups.size()); }

    /// Index of a group label in protected_groups, -1 if absent.
    int group_index(const std::string& label) const;

    /// Enforces the structural invariants: protected/target columns are not
    /// features, at least two groups, aggregation targets are known groups.
    void validate() const;

    static Schema from_json_file(const std::string& path);
};

} // namespace masc
