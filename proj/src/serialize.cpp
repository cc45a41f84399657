#include "masc/serialize.hpp"

#include "masc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace masc {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, target);
}

std::string matrix_to_csv(const Matrix& values, const std::vector<std::string>& ids) {
    std::ostringstream out;
    out << "id";
    for (const auto& id : ids) out << "," << csv_escape(id);
    out << "\n";
    for (Index i = 0; i < values.rows(); ++i) {
        out << csv_escape(ids[i]);
        for (Index j = 0; j < values.cols(); ++j) {
            out << "," << format_double(values(i, j));
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json matrix_to_json(const Matrix& values, const std::vector<std::string>& ids) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < values.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < values.cols(); ++j) {
            row.push_back(round6(values(i, j)));
        }
        rows.push_back(row);
    }
    return nlohmann::json{{"ids", ids}, {"values", rows}};
}

std::string dataset_to_csv(const Dataset& ds) {
    const Schema& schema = *ds.schema;
    std::ostringstream out;
    for (const auto& name : schema.feature_names) out << csv_escape(name) << ",";
    out << csv_escape(schema.protected_attribute) << "," << csv_escape(schema.target) << "\n";
    for (Index i = 0; i < ds.n(); ++i) {
        for (Index j = 0; j < ds.dim(); ++j) {
            out << format_double(ds.features(i, j)) << ",";
        }
        out << csv_escape(schema.protected_groups[ds.group_labels[i]]) << "," << ds.targets[i]
            << "\n";
    }
    return out.str();
}

std::string eigenvalues_to_csv(const Vector& eigenvalues) {
    std::ostringstream out;
    out << "index,eigenvalue\n";
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        out << i + 1 << "," << format_double(eigenvalues[i]) << "\n";
    }
    return out.str();
}

std::string eigengap_to_csv(const Vector& gaps) {
    std::ostringstream out;
    out << "k,gap\n";
    for (Index i = 0; i < gaps.size(); ++i) {
        out << i + 1 << "," << format_double(gaps[i]) << "\n";
    }
    return out.str();
}

nlohmann::json assignment_to_json(const ClusterAssignment& assignment) {
    nlohmann::json j = nlohmann::json::object();
    for (Index i = 0; i < assignment.labels.size(); ++i) {
        j[assignment.dataset_ids[i]] = assignment.labels[i];
    }
    return j;
}

nlohmann::json augmentation_to_json(const AugmentationResult& result, std::uint64_t seed,
                                    const std::string& method) {
    nlohmann::json borrowed = nlohmann::json::array();
    for (const auto& row : result.borrowed) {
        borrowed.push_back({{"donor", row.donor_id}, {"row", row.donor_row}});
    }
    nlohmann::json shortfall = nlohmann::json::object();
    for (const auto& [group, missing] : result.shortfall) {
        shortfall[std::to_string(group)] = missing;
    }
    nlohmann::json before = nlohmann::json::array();
    nlohmann::json after = nlohmann::json::array();
    for (Index g = 0; g < result.per_group_before.size(); ++g) {
        before.push_back(result.per_group_before[g]);
        after.push_back(result.per_group_after[g]);
    }
    return nlohmann::json{{"target", result.augmented.id},
                          {"method", method},
                          {"seed", seed},
                          {"per_group_before", before},
                          {"per_group_after", after},
                          {"shortfall", shortfall},
                          {"borrowed", borrowed}};
}

nlohmann::json report_to_json(const FairnessReport& report) {
    nlohmann::json gr = nlohmann::json::array();
    for (Index g = 0; g < report.gr.size(); ++g) gr.push_back(round6(report.gr[g]));
    auto map_to_json = [](const std::map<int, double>& m) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [group, value] : m) j[std::to_string(group)] = round6(value);
        return j;
    };
    nlohmann::json j{{"dataset", report.dataset_id},
                     {"method", report.method},
                     {"majority_group", report.majority_group},
                     {"gr", gr},
                     {"di", map_to_json(report.di)},
                     {"sp", map_to_json(report.sp)}};
    if (!report.eq_odds.empty()) j["eq_odds"] = map_to_json(report.eq_odds);
    if (report.accuracy) j["accuracy"] = round6(*report.accuracy);
    return j;
}

namespace {

std::string metric_cell(const std::map<int, double>& m, int group) {
    auto it = m.find(group);
    return it == m.end() ? std::string() : format_double(it->second);
}

} // namespace

std::string data_reports_to_csv(const std::vector<FairnessReport>& reports, const Schema& schema) {
    const int p = schema.group_count();
    std::ostringstream out;
    out << "dataset,method,majority";
    for (int g = 0; g < p; ++g) out << ",gr_" << schema.protected_groups[g];
    for (int g = 0; g < p; ++g) out << ",sp_" << schema.protected_groups[g];
    for (int g = 0; g < p; ++g) out << ",di_" << schema.protected_groups[g];
    out << "\n";
    for (const auto& report : reports) {
        out << csv_escape(report.dataset_id) << "," << csv_escape(report.method) << ","
            << csv_escape(schema.protected_groups[report.majority_group]);
        for (int g = 0; g < p; ++g) out << "," << format_double(report.gr[g]);
        for (int g = 0; g < p; ++g) out << "," << metric_cell(report.sp, g);
        for (int g = 0; g < p; ++g) out << "," << metric_cell(report.di, g);
        out << "\n";
    }
    return out.str();
}

std::string model_reports_to_csv(const std::vector<FairnessReport>& reports,
                                 const Schema& schema) {
    const int p = schema.group_count();
    std::ostringstream out;
    out << "dataset,method,accuracy";
    for (int g = 0; g < p; ++g) out << ",eqodds_" << schema.protected_groups[g];
    for (int g = 0; g < p; ++g) out << ",pred_sp_" << schema.protected_groups[g];
    for (int g = 0; g < p; ++g) out << ",pred_di_" << schema.protected_groups[g];
    out << "\n";
    for (const auto& report : reports) {
        out << csv_escape(report.dataset_id) << "," << csv_escape(report.method) << ","
            << (report.accuracy ? format_double(*report.accuracy) : std::string());
        for (int g = 0; g < p; ++g) out << "," << metric_cell(report.eq_odds, g);
        for (int g = 0; g < p; ++g) out << "," << metric_cell(report.sp, g);
        for (int g = 0; g < p; ++g) out << "," << metric_cell(report.di, g);
        out << "\n";
    }
    return out.str();
}

std::uint64_t content_hash(const std::string& contents) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : contents) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace masc
