// masc — measure pairwise dataset discrepancy, cluster, and debias by
// borrowing protected-group instances from cluster neighbors.

#include "masc/augmentation.hpp"
#include "masc/baselines.hpp"
#include "masc/benchmark.hpp"
#include "masc/evaluator.hpp"
#include "masc/rng.hpp"
#include "masc/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string schema_path;
    std::vector<std::pair<std::string, std::string>> datasets; // (id, path)
    masc::KernelSpec kernel = masc::KernelSpec::linear();
    std::optional<double> kernel_gamma; // gaussian bandwidth; unset = median heuristic
    double affinity_gamma = 1.0;
    bool normalize_distances = true;
    std::optional<int> k_override; // unset = eigengap
    int l_max = 10;
    std::uint64_t cluster_seed = 42;
    std::uint64_t augment_seed = 42;
    std::uint64_t split_seed = 42;
    std::vector<std::string> methods = {"masc", "smote", "rus", "geo", "none"};
    int smote_k = 5;
    std::optional<std::string> region_map_path;
    bool scale = false;
    std::string out_dir = "out";
};

std::string resolve(const fs::path& base, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return p.string();
    return (base / p).lexically_normal().string();
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw masc::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw masc::ConfigError("config file " + path + ": " + e.what());
    }

    const fs::path base = fs::path(path).parent_path();
    RunConfig cfg;
    try {
        cfg.schema_path = resolve(base, j.at("schema").get<std::string>());
        for (const auto& entry : j.at("datasets")) {
            cfg.datasets.emplace_back(entry.at("id").get<std::string>(),
                                      resolve(base, entry.at("path").get<std::string>()));
        }
        if (j.contains("kernel")) {
            const std::string kind = j.at("kernel").get<std::string>();
            if (kind == "linear") {
                cfg.kernel = masc::KernelSpec::linear();
            } else if (kind == "gaussian") {
                cfg.kernel = masc::KernelSpec::gaussian(1.0);
            } else {
                throw masc::ConfigError("config: unknown kernel '" + kind + "'");
            }
        }
        if (j.contains("kernel_gamma")) cfg.kernel_gamma = j.at("kernel_gamma").get<double>();
        cfg.affinity_gamma = j.value("gamma", cfg.affinity_gamma);
        cfg.normalize_distances = j.value("normalize_distances", cfg.normalize_distances);
        if (j.contains("k") && !j.at("k").is_null()) {
            if (j.at("k").is_number_integer()) {
                cfg.k_override = j.at("k").get<int>();
            } else if (j.at("k").get<std::string>() != "auto") {
                throw masc::ConfigError("config: k must be an integer or \"auto\"");
            }
        }
        cfg.l_max = j.value("l_max", cfg.l_max);
        if (j.contains("seeds")) {
            const auto& seeds = j.at("seeds");
            cfg.cluster_seed = seeds.value("cluster", cfg.cluster_seed);
            cfg.augment_seed = seeds.value("augment", cfg.augment_seed);
            cfg.split_seed = seeds.value("split", cfg.split_seed);
        }
        if (j.contains("methods")) {
            cfg.methods = j.at("methods").get<std::vector<std::string>>();
        }
        cfg.smote_k = j.value("smote_k", cfg.smote_k);
        if (j.contains("region_map") && !j.at("region_map").is_null()) {
            cfg.region_map_path = resolve(base, j.at("region_map").get<std::string>());
        }
        cfg.scale = j.value("scale", cfg.scale);
        if (j.contains("out_dir")) {
            cfg.out_dir = resolve(base, j.at("out_dir").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw masc::ConfigError("config file " + path + ": " + e.what());
    }

    if (cfg.datasets.empty()) throw masc::ConfigError("config: datasets list is empty");
    if (!fs::exists(cfg.schema_path)) {
        throw masc::ConfigError("config: schema file does not exist: " + cfg.schema_path);
    }
    for (const auto& [id, file] : cfg.datasets) {
        if (!fs::exists(file)) {
            throw masc::ConfigError("config: dataset file does not exist: " + file);
        }
    }
    if (cfg.region_map_path && !fs::exists(*cfg.region_map_path)) {
        throw masc::ConfigError("config: region map does not exist: " + *cfg.region_map_path);
    }
    return cfg;
}

std::vector<masc::Dataset> load_datasets(const RunConfig& cfg) {
    auto schema = std::make_shared<masc::Schema>(masc::Schema::from_json_file(cfg.schema_path));
    masc::DatasetLoader loader(schema);
    std::vector<masc::Dataset> datasets;
    datasets.reserve(cfg.datasets.size());
    for (const auto& [id, path] : cfg.datasets) {
        masc::LoadReport report;
        masc::Dataset ds = loader.load_csv(path, id, &report);
        if (report.rows_dropped > 0) {
            std::cerr << "note: " << id << ": dropped " << report.rows_dropped
                      << " row(s) with missing values\n";
        }
        datasets.push_back(cfg.scale ? masc::standard_scale(ds) : std::move(ds));
    }
    return datasets;
}

masc::PipelineConfig pipeline_config(const RunConfig& cfg,
                                     const std::vector<masc::Dataset>& datasets) {
    masc::PipelineConfig pc;
    pc.kernel = cfg.kernel;
    if (pc.kernel.kind == masc::KernelSpec::Kind::gaussian) {
        pc.kernel.gamma = cfg.kernel_gamma ? *cfg.kernel_gamma
                                           : masc::median_heuristic_gamma(datasets);
    }
    pc.normalize_distances = cfg.normalize_distances;
    pc.affinity_gamma = cfg.affinity_gamma;
    pc.l_max = cfg.l_max;
    pc.k_override = cfg.k_override;
    pc.cluster_seed = cfg.cluster_seed;
    pc.augment_seed = cfg.augment_seed;
    return pc;
}

std::string clustering_cache_key(const masc::DistanceMatrix& distances,
                                 const masc::PipelineConfig& pc) {
    std::ostringstream params;
    params << masc::matrix_to_csv(distances.values, distances.dataset_ids)
           << "|gamma=" << masc::format_double(pc.affinity_gamma) << "|l_max=" << pc.l_max
           << "|k=" << (pc.k_override ? std::to_string(*pc.k_override) : "auto")
           << "|seed=" << pc.cluster_seed;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(masc::content_hash(params.str())));
    return hex;
}

std::optional<masc::ClusterAssignment> load_cached_assignment(const std::string& cache_file) {
    std::ifstream in(cache_file);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        masc::ClusterAssignment assignment;
        assignment.k = j.at("k").get<int>();
        assignment.dataset_ids = j.at("ids").get<std::vector<std::string>>();
        const auto labels = j.at("labels").get<std::vector<int>>();
        assignment.labels.resize(static_cast<masc::Index>(labels.size()));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            assignment.labels[static_cast<masc::Index>(i)] = labels[i];
        }
        const auto gaps = j.at("eigengap").get<std::vector<double>>();
        assignment.eigengap_vector.resize(static_cast<masc::Index>(gaps.size()));
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            assignment.eigengap_vector[static_cast<masc::Index>(i)] = gaps[i];
        }
        return assignment;
    } catch (const json::exception&) {
        return std::nullopt; // stale or foreign cache file; recompute
    }
}

void store_cached_assignment(const std::string& cache_file,
                             const masc::ClusterAssignment& assignment) {
    json j;
    j["k"] = assignment.k;
    j["ids"] = assignment.dataset_ids;
    std::vector<int> labels(assignment.labels.data(),
                            assignment.labels.data() + assignment.labels.size());
    j["labels"] = labels;
    std::vector<double> gaps(assignment.eigengap_vector.data(),
                             assignment.eigengap_vector.data() +
                                 assignment.eigengap_vector.size());
    j["eigengap"] = gaps;
    masc::atomic_write(cache_file, j.dump(2) + "\n");
}

/// Clusters with assignment caching keyed on the distance matrix content.
masc::ClusteringRun cluster_with_cache(const std::vector<masc::Dataset>& datasets,
                                       const masc::PipelineConfig& pc,
                                       const std::string& out_dir, bool* cache_hit = nullptr) {
    masc::ClusteringRun run;
    run.distances = masc::pairwise_distance_matrix(datasets, pc.kernel, pc.normalize_distances);
    run.affinity = masc::to_affinity(run.distances, pc.affinity_gamma);
    run.decomposition = masc::decompose(masc::laplacian(run.affinity));

    const std::string cache_file =
        (fs::path(out_dir) / "cache" / ("assignment_" + clustering_cache_key(run.distances, pc) +
                                        ".json"))
            .string();
    if (auto cached = load_cached_assignment(cache_file)) {
        run.assignment = std::move(*cached);
        if (cache_hit) *cache_hit = true;
        return run;
    }
    const int k = pc.k_override ? *pc.k_override
                                : masc::select_k(run.decomposition, pc.l_max).first;
    run.assignment = masc::embed_and_cluster(run.decomposition, k, pc.cluster_seed,
                                             run.distances.dataset_ids);
    store_cached_assignment(cache_file, run.assignment);
    if (cache_hit) *cache_hit = false;
    return run;
}

void emit_matrix(const std::string& path, const masc::Matrix& values,
                 const std::vector<std::string>& ids) {
    if (fs::path(path).extension() == ".json") {
        masc::atomic_write(path, masc::matrix_to_json(values, ids).dump(2) + "\n");
    } else {
        masc::atomic_write(path, masc::matrix_to_csv(values, ids));
    }
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

int cmd_cluster(const RunConfig& cfg, const std::string& emit_distances,
                const std::string& emit_eigenvalues) {
    const auto datasets = load_datasets(cfg);
    const auto pc = pipeline_config(cfg, datasets);
    const masc::ClusteringRun run = cluster_with_cache(datasets, pc, cfg.out_dir);

    const fs::path out(cfg.out_dir);
    masc::atomic_write((out / "distances.csv").string(),
                       masc::matrix_to_csv(run.distances.values, run.distances.dataset_ids));
    masc::atomic_write(
        (out / "distances.json").string(),
        masc::matrix_to_json(run.distances.values, run.distances.dataset_ids).dump(2) + "\n");
    masc::atomic_write((out / "eigenvalues.csv").string(),
                       masc::eigenvalues_to_csv(run.decomposition.eigenvalues));
    masc::atomic_write((out / "eigengap.csv").string(),
                       masc::eigengap_to_csv(run.assignment.eigengap_vector));
    masc::atomic_write((out / "assignment.json").string(),
                       masc::assignment_to_json(run.assignment).dump(2) + "\n");
    if (!emit_distances.empty()) {
        emit_matrix(emit_distances, run.distances.values, run.distances.dataset_ids);
    }
    if (!emit_eigenvalues.empty()) {
        masc::atomic_write(emit_eigenvalues,
                           masc::eigenvalues_to_csv(run.decomposition.eigenvalues));
    }
    std::cout << "clustered " << datasets.size() << " datasets into k=" << run.assignment.k
              << " (outputs in " << cfg.out_dir << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// augment
// ---------------------------------------------------------------------------

masc::DerivedDataset derive(const std::vector<masc::Dataset>& datasets, masc::Index target_index,
                            const std::string& method, const RunConfig& cfg,
                            const masc::ClusterAssignment* assignment,
                            const masc::RegionMap* regions, json* provenance) {
    const masc::Dataset& target = datasets[target_index];
    const std::uint64_t seed = masc::derive_seed(cfg.augment_seed, target.id + "/" + method);
    masc::DerivedDataset derived;

    if (method == "none") {
        derived = masc::DerivedDataset::identity(target);
        if (provenance) {
            *provenance = json{{"target", target.id}, {"method", method}};
        }
    } else if (method == "masc") {
        masc::AugmentationResult result =
            masc::augment_target(datasets, *assignment, target.id, seed);
        if (provenance) *provenance = masc::augmentation_to_json(result, seed, method);
        derived.origin_rows.resize(result.augmented.n());
        for (masc::Index i = 0; i < target.n(); ++i) derived.origin_rows[i] = i;
        for (masc::Index i = target.n(); i < result.augmented.n(); ++i) {
            derived.origin_rows[i] = -1;
        }
        derived.data = std::move(result.augmented);
    } else if (method == "smote") {
        masc::SmoteResult result = masc::group_smote(target, cfg.smote_k, seed);
        if (provenance) {
            json rows = json::array();
            for (const auto& s : result.synthetic) {
                rows.push_back({{"base_row", s.base_row},
                                {"neighbor_row", s.neighbor_row},
                                {"factor", masc::round6(s.factor)}});
            }
            *provenance =
                json{{"target", target.id}, {"method", method}, {"seed", seed},
                     {"synthetic", rows}};
        }
        derived.origin_rows.resize(result.data.n());
        for (masc::Index i = 0; i < target.n(); ++i) derived.origin_rows[i] = i;
        for (masc::Index i = target.n(); i < result.data.n(); ++i) derived.origin_rows[i] = -1;
        derived.data = std::move(result.data);
    } else if (method == "rus") {
        masc::RusResult result = masc::group_rus(target, seed);
        if (provenance) {
            *provenance = json{{"target", target.id},
                               {"method", method},
                               {"seed", seed},
                               {"kept_rows", result.kept_rows}};
        }
        derived.origin_rows = result.kept_rows;
        derived.data = std::move(result.data);
    } else if (method == "geo") {
        if (regions == nullptr) {
            throw masc::ConfigError("method 'geo' needs a region_map in the config");
        }
        masc::GeoConcatResult result = masc::geo_concat(datasets, *regions, target.id);
        if (provenance) {
            *provenance = json{{"target", target.id}, {"method", method}};
        }
        derived.origin_rows = std::move(result.origin_rows);
        derived.data = std::move(result.data);
    } else {
        throw masc::ConfigError("unknown method '" + method + "'");
    }
    return derived;
}

int cmd_augment(const RunConfig& cfg, const std::string& target_id, bool all,
                const std::string& method) {
    const auto datasets = load_datasets(cfg);

    std::vector<masc::Index> targets;
    if (all) {
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            targets.push_back(static_cast<masc::Index>(i));
        }
    } else {
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            if (datasets[i].id == target_id) targets.push_back(static_cast<masc::Index>(i));
        }
        if (targets.empty()) {
            throw masc::ConfigError("unknown target id '" + target_id + "'");
        }
    }

    masc::ClusterAssignment assignment;
    if (method == "masc") {
        const auto pc = pipeline_config(cfg, datasets);
        assignment = cluster_with_cache(datasets, pc, cfg.out_dir).assignment;
    }
    std::optional<masc::RegionMap> regions;
    if (cfg.region_map_path) regions = masc::RegionMap::from_json_file(*cfg.region_map_path);

    const fs::path out(cfg.out_dir);
    for (masc::Index index : targets) {
        json provenance;
        const masc::DerivedDataset derived =
            derive(datasets, index, method, cfg, &assignment, regions ? &*regions : nullptr,
                   &provenance);
        const std::string stem = "augmented_" + datasets[index].id + "_" + method;
        masc::atomic_write((out / (stem + ".csv")).string(),
                           masc::dataset_to_csv(derived.data));
        masc::atomic_write((out / (stem + ".provenance.json")).string(),
                           provenance.dump(2) + "\n");
    }
    std::cout << "augmented " << targets.size() << " dataset(s) with method '" << method
              << "' into " << cfg.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

std::string display_name(const std::string& method) {
    if (method == "none") return "Initial";
    if (method == "masc") return "MASC";
    if (method == "smote") return "SMOTE";
    if (method == "rus") return "RUS";
    if (method == "geo") return "Geo-nei";
    return method;
}

int cmd_evaluate(const RunConfig& cfg, const std::vector<std::string>& target_filter) {
    const auto datasets = load_datasets(cfg);

    std::vector<masc::Index> targets;
    if (target_filter.empty()) {
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            targets.push_back(static_cast<masc::Index>(i));
        }
    } else {
        for (const std::string& id : target_filter) {
            bool found = false;
            for (std::size_t i = 0; i < datasets.size(); ++i) {
                if (datasets[i].id == id) {
                    targets.push_back(static_cast<masc::Index>(i));
                    found = true;
                }
            }
            if (!found) throw masc::ConfigError("unknown target id '" + id + "'");
        }
    }

    const bool needs_masc =
        std::find(cfg.methods.begin(), cfg.methods.end(), "masc") != cfg.methods.end();
    masc::ClusterAssignment assignment;
    if (needs_masc) {
        const auto pc = pipeline_config(cfg, datasets);
        assignment = cluster_with_cache(datasets, pc, cfg.out_dir).assignment;
    }
    std::optional<masc::RegionMap> regions;
    if (cfg.region_map_path) regions = masc::RegionMap::from_json_file(*cfg.region_map_path);

    std::vector<masc::FairnessReport> data_reports;
    std::vector<masc::FairnessReport> model_reports;
    for (masc::Index index : targets) {
        const masc::Dataset& original = datasets[index];
        for (const std::string& method : cfg.methods) {
            const masc::DerivedDataset derived = derive(
                datasets, index, method, cfg, &assignment, regions ? &*regions : nullptr, nullptr);
            data_reports.push_back(
                masc::dataset_fairness_report(derived.data, display_name(method)));
            masc::FairnessReport model = masc::evaluate_method(
                original, derived, display_name(method),
                masc::derive_seed(cfg.split_seed, original.id));
            model_reports.push_back(std::move(model));
        }
    }

    const masc::Schema& schema = *datasets.front().schema;
    const fs::path out(cfg.out_dir);
    masc::atomic_write((out / "report_data.csv").string(),
                       masc::data_reports_to_csv(data_reports, schema));
    masc::atomic_write((out / "report_model.csv").string(),
                       masc::model_reports_to_csv(model_reports, schema));

    json full;
    full["data"] = json::array();
    for (const auto& report : data_reports) full["data"].push_back(masc::report_to_json(report));
    full["model"] = json::array();
    for (const auto& report : model_reports) {
        full["model"].push_back(masc::report_to_json(report));
    }
    full["seeds"] = {{"cluster", cfg.cluster_seed},
                     {"augment", cfg.augment_seed},
                     {"split", cfg.split_seed}};
    full["lr"] = {{"learning_rate", 0.1}, {"max_epochs", 2000}, {"tolerance", 1e-6}};
    masc::atomic_write((out / "report.json").string(), full.dump(2) + "\n");

    std::cout << "evaluated " << targets.size() << " target(s) x " << cfg.methods.size()
              << " method(s) into " << cfg.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// report --make-benchmark
// ---------------------------------------------------------------------------

json schema_to_json(const masc::Schema& schema) {
    json agg = json::object();
    for (const auto& [raw, group] : schema.aggregation_map) agg[raw] = group;
    return json{{"feature_names", schema.feature_names},
                {"protected_attribute", schema.protected_attribute},
                {"protected_groups", schema.protected_groups},
                {"aggregation_map", agg},
                {"target", schema.target},
                {"positive_label", schema.positive_label}};
}

int cmd_make_benchmark(const std::string& spec_path, const std::string& out_dir) {
    const masc::BenchmarkSpec spec = spec_path.empty()
                                         ? masc::BenchmarkSpec{}
                                         : masc::BenchmarkSpec::from_json_file(spec_path);
    const masc::Benchmark bench = masc::generate(spec);

    const fs::path out(out_dir);
    json dataset_list = json::array();
    json regions = json::object();
    for (std::size_t i = 0; i < bench.datasets.size(); ++i) {
        const masc::Dataset& ds = bench.datasets[i];
        const std::string rel = "data/" + ds.id + ".csv";
        masc::atomic_write((out / rel).string(), masc::dataset_to_csv(ds));
        dataset_list.push_back({{"id", ds.id}, {"path", rel}});
        regions[ds.id] = "region_F" + std::to_string(bench.family[i]);
    }
    masc::atomic_write((out / "schema.json").string(),
                       schema_to_json(*bench.schema).dump(2) + "\n");
    masc::atomic_write((out / "regions.json").string(), regions.dump(2) + "\n");

    json config{{"schema", "schema.json"},
                {"datasets", dataset_list},
                {"kernel", "linear"},
                {"gamma", 1.0},
                {"normalize_distances", true},
                {"k", "auto"},
                {"l_max", 10},
                {"seeds", {{"cluster", 42}, {"augment", 42}, {"split", 42}}},
                {"methods", {"masc", "smote", "rus", "geo", "none"}},
                {"region_map", "regions.json"},
                {"out_dir", "results"}};
    masc::atomic_write((out / "config.json").string(), config.dump(2) + "\n");

    std::cout << "benchmark with " << bench.datasets.size() << " datasets written to " << out_dir
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MASC: minority augmentation through spectral clustering of similar datasets"};
    app.require_subcommand(1);

    std::string config_path;
    std::string emit_distances, emit_eigenvalues;
    std::string k_arg, kernel_arg;
    double gamma_arg = 0.0;
    std::uint64_t seed_arg = 0;
    std::string target_id, method = "masc", out_override;
    bool all_targets = false;
    std::vector<std::string> methods_arg, targets_arg;
    std::uint64_t split_seed_arg = 0;
    std::string benchmark_spec, benchmark_out = "benchmark";

    auto* cluster = app.add_subcommand("cluster", "pairwise MMD + spectral clustering");
    cluster->add_option("--config", config_path, "run config JSON")->required();
    cluster->add_option("--gamma", gamma_arg, "affinity bandwidth (Gaussian map on distances)");
    cluster->add_option("--kernel", kernel_arg, "MMD kernel: linear or gaussian");
    cluster->add_option("--k", k_arg, "cluster count, integer or 'auto' (eigengap)");
    cluster->add_option("--seed", seed_arg, "k-means seed");
    cluster->add_option("--emit-distances", emit_distances,
                        "extra path for the distance matrix (.csv or .json)");
    cluster->add_option("--emit-eigenvalues", emit_eigenvalues,
                        "extra path for the eigenvalue CSV");
    cluster->add_option("--out", out_override, "output directory override");

    auto* augment = app.add_subcommand("augment", "debias targets by in-cluster borrowing");
    augment->add_option("--config", config_path, "run config JSON")->required();
    augment->add_option("--target", target_id, "target dataset id");
    augment->add_flag("--all", all_targets, "augment every dataset");
    augment->add_option("--method", method, "masc, smote, rus, geo, or none");
    augment->add_option("--seed", seed_arg, "augmentation seed");
    augment->add_option("--gamma", gamma_arg, "affinity bandwidth");
    augment->add_option("--k", k_arg, "cluster count, integer or 'auto'");
    augment->add_option("--out", out_override, "output directory override");

    auto* evaluate = app.add_subcommand("evaluate", "fairness + LR performance per method");
    evaluate->add_option("--config", config_path, "run config JSON")->required();
    evaluate->add_option("--methods", methods_arg, "comma-separated methods")->delimiter(',');
    evaluate->add_option("--targets", targets_arg, "comma-separated target ids")->delimiter(',');
    evaluate->add_option("--split-seed", split_seed_arg, "train/test split seed");
    evaluate->add_option("--gamma", gamma_arg, "affinity bandwidth");
    evaluate->add_option("--k", k_arg, "cluster count, integer or 'auto'");
    evaluate->add_option("--out", out_override, "output directory override");

    auto* report = app.add_subcommand("report", "generate artifacts");
    report->add_option("--make-benchmark", benchmark_spec,
                       "benchmark spec JSON ('default' for built-in defaults)");
    report->add_option("--out", benchmark_out, "benchmark output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            if (benchmark_spec.empty()) {
                throw masc::ConfigError("report: nothing to do (use --make-benchmark)");
            }
            const std::string spec = benchmark_spec == "default" ? "" : benchmark_spec;
            if (!spec.empty() && !fs::exists(spec)) {
                throw masc::ConfigError("benchmark spec does not exist: " + spec);
            }
            return cmd_make_benchmark(spec, benchmark_out);
        }

        RunConfig cfg = load_config(config_path);
        if (cluster->count("--gamma") || augment->count("--gamma") ||
            evaluate->count("--gamma")) {
            cfg.affinity_gamma = gamma_arg;
        }
        if (!kernel_arg.empty()) {
            if (kernel_arg == "linear") {
                cfg.kernel = masc::KernelSpec::linear();
            } else if (kernel_arg == "gaussian") {
                cfg.kernel = masc::KernelSpec::gaussian(1.0);
            } else {
                throw masc::ConfigError("unknown kernel '" + kernel_arg + "'");
            }
        }
        if (!k_arg.empty()) {
            if (k_arg == "auto") {
                cfg.k_override.reset();
            } else {
                try {
                    cfg.k_override = std::stoi(k_arg);
                } catch (const std::exception&) {
                    throw masc::ConfigError("--k must be an integer or 'auto', got '" + k_arg +
                                            "'");
                }
            }
        }
        if (!out_override.empty()) cfg.out_dir = out_override;

        if (cluster->parsed()) {
            if (cluster->count("--seed")) cfg.cluster_seed = seed_arg;
            return cmd_cluster(cfg, emit_distances, emit_eigenvalues);
        }
        if (augment->parsed()) {
            if (augment->count("--seed")) cfg.augment_seed = seed_arg;
            if (!all_targets && target_id.empty()) {
                throw masc::ConfigError("augment: give --target <id> or --all");
            }
            return cmd_augment(cfg, target_id, all_targets, method);
        }
        if (evaluate->parsed()) {
            if (evaluate->count("--split-seed")) cfg.split_seed = split_seed_arg;
            if (!methods_arg.empty()) cfg.methods = methods_arg;
            return cmd_evaluate(cfg, targets_arg);
        }
        throw masc::ConfigError("no subcommand given");
    } catch (const masc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
