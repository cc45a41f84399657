#include "masc/schema.hpp"

#include "masc/types.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace masc {

int Schema::group_index(const std::string& label) const {
    auto it = std::find(protected_groups.begin(), protected_groups.end(), label);
    if (it == protected_groups.end()) return -1;
    return static_cast<int>(it - protected_groups.begin());
}

void Schema::validate() const {
    auto is_feature = [&](const std::string& name) {
        return std::find(feature_names.begin(), feature_names.end(), name) != feature_names.end();
    };
    if (feature_names.empty()) {
        throw ConfigError("schema: feature_names is empty");
    }
    if (is_feature(protected_attribute)) {
        throw ConfigError("schema: protected_attribute '" + protected_attribute +
                          "' must not appear in feature_names");
    }
    if (is_feature(target)) {
        throw ConfigError("schema: target '" + target + "' must not appear in feature_names");
    }
    if (protected_groups.size() < 2) {
        throw ConfigError("schema: protected_groups needs at least 2 entries");
    }
    for (const auto& [raw, group] : aggregation_map) {
        if (group_index(group) < 0) {
            throw ConfigError("schema: aggregation_map sends '" + raw + "' to unknown group '" +
                              group + "'");
        }
    }
}

Schema Schema::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open schema file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema file " + path + ": " + e.what());
    }
    Schema s;
    try {
        s.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        s.protected_attribute = j.at("protected_attribute").get<std::string>();
        s.protected_groups = j.at("protected_groups").get<std::vector<std::string>>();
        for (const auto& [key, value] : j.at("aggregation_map").items()) {
            s.aggregation_map[key] = value.get<std::string>();
        }
        s.target = j.at("target").get<std::string>();
        s.positive_label = j.at("positive_label").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema file " + path + ": " + e.what());
    }
    s.validate();
    return s;
}

} // namespace masc
