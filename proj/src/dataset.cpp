#include "masc/dataset.hpp"

#include "masc/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace masc {

namespace {

bool is_missing(const std::string& v) {
    return v.empty() || v == "NA" || v == "NaN" || v == "nan" || v == "null";
}

bool parse_double(const std::string& v, double& out) {
    const char* begin = v.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0' && std::isfinite(out);
}

} // namespace

DatasetLoader::DatasetLoader(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)) {
    schema_->validate();
}

Dataset DatasetLoader::load_csv(const std::string& path, const std::string& id,
                                LoadReport* report) {
    const CsvTable table = read_csv(path);

    std::vector<int> feature_cols;
    feature_cols.reserve(schema_->feature_names.size());
    for (const auto& name : schema_->feature_names) {
        const int col = table.column_index(name);
        if (col < 0) throw std::runtime_error(path + ": missing column '" + name + "'");
        feature_cols.push_back(col);
    }
    const int protected_col = table.column_index(schema_->protected_attribute);
    if (protected_col < 0) {
        throw std::runtime_error(path + ": missing column '" + schema_->protected_attribute + "'");
    }
    const int target_col = table.column_index(schema_->target);
    if (target_col < 0) {
        throw std::runtime_error(path + ": missing column '" + schema_->target + "'");
    }

    // Rows that survive the missing-value filter.
    std::vector<std::size_t> kept;
    kept.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        bool missing = is_missing(table.rows[r][protected_col]) ||
                       is_missing(table.rows[r][target_col]);
        for (int col : feature_cols) {
            if (missing) break;
            missing = is_missing(table.rows[r][col]);
        }
        if (!missing) kept.push_back(r);
    }
    if (report) {
        report->rows_read = table.rows.size();
        report->rows_dropped = table.rows.size() - kept.size();
    }
    if (kept.empty()) {
        throw std::runtime_error(path + ": empty dataset after cleaning");
    }

    const Index n = static_cast<Index>(kept.size());
    const Index d = static_cast<Index>(feature_cols.size());
    Dataset ds;
    ds.id = id;
    ds.schema = schema_;
    ds.features.resize(n, d);
    ds.group_labels.resize(n);
    ds.targets.resize(n);

    std::lock_guard<std::mutex> lock(mutex_);

    for (Index j = 0; j < d; ++j) {
        const std::string& name = schema_->feature_names[j];
        const int col = feature_cols[j];
        ColumnKind& kind = column_kind_[name];
        if (kind == ColumnKind::unknown) {
            kind = ColumnKind::numeric;
            for (std::size_t r : kept) {
                double unused;
                if (!parse_double(table.rows[r][col], unused)) {
                    kind = ColumnKind::categorical;
                    break;
                }
            }
        }
        if (kind == ColumnKind::numeric) {
            for (Index i = 0; i < n; ++i) {
                const std::string& cell = table.rows[kept[i]][col];
                double value;
                if (!parse_double(cell, value)) {
                    throw std::runtime_error(path + ": column '" + name +
                                             "' was numeric in an earlier file but holds '" +
                                             cell + "'");
                }
                ds.features(i, j) = value;
            }
        } else {
            auto& dict = dictionaries_[name];
            for (Index i = 0; i < n; ++i) {
                const std::string& cell = table.rows[kept[i]][col];
                auto it = dict.try_emplace(cell, static_cast<int>(dict.size())).first;
                ds.features(i, j) = static_cast<double>(it->second);
            }
        }
    }

    for (Index i = 0; i < n; ++i) {
        const std::string& raw = table.rows[kept[i]][protected_col];
        auto it = schema_->aggregation_map.find(raw);
        if (it == schema_->aggregation_map.end()) {
            throw std::runtime_error(path + ": unmapped category '" + raw + "' in column '" +
                                     schema_->protected_attribute + "'");
        }
        ds.group_labels[i] = schema_->group_index(it->second);
        ds.targets[i] = table.rows[kept[i]][target_col] == schema_->positive_label ? 1 : 0;
    }

    return ds;
}

Dataset standard_scale(const Dataset& ds) {
    if (ds.n() < 2) {
        throw std::invalid_argument("standard_scale: need at least 2 rows, got " +
                                    std::to_string(ds.n()));
    }
    Dataset out = ds;
    const double n = static_cast<double>(ds.n());
    for (Index j = 0; j < ds.dim(); ++j) {
        const double mean = ds.features.col(j).mean();
        const double var = (ds.features.col(j).array() - mean).square().sum() / n;
        const double sigma = std::sqrt(var);
        if (sigma > 0.0) {
            out.features.col(j) = (ds.features.col(j).array() - mean) / sigma;
        } else {
            out.features.col(j).setZero();
        }
    }
    return out;
}

IntVector group_cardinalities(const Dataset& ds) {
    IntVector counts = IntVector::Zero(ds.group_count());
    for (Index i = 0; i < ds.n(); ++i) {
        counts[ds.group_labels[i]] += 1;
    }
    return counts;
}

} // namespace masc
