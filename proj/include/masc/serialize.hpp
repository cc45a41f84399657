#pragma once

#include "masc/affinity.hpp"
#include "masc/augmentation.hpp"
#include "masc/dataset.hpp"
#include "masc/fairness.hpp"
#include "masc/mmd.hpp"
#include "masc/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace masc {

/// Fixed 6-decimal rendering used for every float that reaches a file, so
/// identical runs emit byte-identical output.
std::string format_double(double v);

/// Rounds to 6 decimals for values embedded in JSON numbers.
double round6(double v);

/// Writes via a temp file in the same directory followed by a rename.
void atomic_write(const std::string& path, const std::string& contents);

/// Symmetric matrix with id row/column labels, e.g. distance or affinity.
std::string matrix_to_csv(const Matrix& values, const std::vector<std::string>& ids);
nlohmann::json matrix_to_json(const Matrix& values, const std::vector<std::string>& ids);

/// Dataset as CSV under its schema's column names: features, protected-group
/// label, binarized target.
std::string dataset_to_csv(const Dataset& ds);

/// Eigenvalues (and optional eigengap vector) as two-column CSV.
std::string eigenvalues_to_csv(const Vector& eigenvalues);
std::string eigengap_to_csv(const Vector& gaps);

nlohmann::json assignment_to_json(const ClusterAssignment& assignment);
nlohmann::json augmentation_to_json(const AugmentationResult& result, std::uint64_t seed,
                                    const std::string& method);
nlohmann::json report_to_json(const FairnessReport& report);

/// Table-style CSV over dataset-level reports: one row per dataset x method,
/// per-group GR columns and per-minority SP/DI columns.
std::string data_reports_to_csv(const std::vector<FairnessReport>& reports, const Schema& schema);

/// Model-performance CSV: accuracy plus per-minority Eq.Odds and
/// prediction-level SP/DI.
std::string model_reports_to_csv(const std::vector<FairnessReport>& reports, const Schema& schema);

/// FNV-1a content hash, for caching cluster assignments by distance matrix.
std::uint64_t content_hash(const std::string& contents);

} // namespace masc
