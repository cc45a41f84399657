#pragma once

#include "masc/schema.hpp"
#include "masc/types.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace masc {

/// One task: a numeric feature matrix plus the protected-group index and
/// binary target of each row. Immutable after load; safe to share across
/// threads read-only.
struct Dataset {
    std::string id;
    Matrix features;      // n x d
    IntVector group_labels; // n, values in [0, p)
    IntVector targets;      // n, values in {0, 1}
    std::shared_ptr<const Schema> schema;

    Index n() const { return features.rows(); }
    Index dim() const { return features.cols(); }
    int group_count() const { return schema->group_count(); }
};

struct LoadReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0; // missing values in schema columns
};

/// Loads CSVs against one schema and keeps a shared categorical dictionary so
/// the same category encodes identically across every file of a run. A column
/// is numeric when every value of the first file carrying it parses as a
/// number; later files must agree. Thread-safe; note that encoding order
/// follows load order, so parallel loading sacrifices the shared first-
/// appearance codes being reproducible.
class DatasetLoader {
public:
    explicit DatasetLoader(std::shared_ptr<const Schema> schema);

    /// Missing values (empty, NA, NaN, null) in any schema column drop the
    /// row; the drop count lands in *report when given.
    Dataset load_csv(const std::string& path, const std::string& id,
                     LoadReport* report = nullptr);

    const std::shared_ptr<const Schema>& schema() const { return schema_; }

private:
    std::shared_ptr<const Schema> schema_;
    std::mutex mutex_;
    enum class ColumnKind { unknown, numeric, categorical };
    std::map<std::string, ColumnKind> column_kind_;
    std::map<std::string, std::map<std::string, int>> dictionaries_; // column -> category -> code
};

/// Centers each non-constant feature column to zero mean and unit standard
/// deviation (population convention, divide by n). Constant columns map to
/// all zeros so d stays stable across datasets sharing a schema.
Dataset standard_scale(const Dataset& ds);

/// Per-group row counts; entries sum to n.
IntVector group_cardinalities(const Dataset& ds);

} // namespace masc
