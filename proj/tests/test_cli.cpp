#include "test_util.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_binary() {
    const char* bin = std::getenv("MASC_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "MASC_BIN must point at the masc binary");
    return bin;
}

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = cli_binary() + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Small planted corpus on disk: 3 families x 3 datasets, 150 rows each.
fs::path make_benchmark_dir(const std::string& tag) {
    const fs::path dir = testutil::temp_dir(tag);
    testutil::write_file(dir / "bench_spec.json", R"({
      "n_families": 3,
      "datasets_per_family": 3,
      "d": 4,
      "samples_min": 150,
      "samples_max": 150,
      "shift_magnitude": 5.0,
      "group_ratios": [[0.6, 0.2, 0.2]],
      "positive_rates": [0.3, 0.5, 0.5],
      "seed": 7
    })");
    const int code = run("report --make-benchmark " + (dir / "bench_spec.json").string() +
                             " --out " + (dir / "bench").string(),
                         dir / "make.log");
    REQUIRE(code == 0);
    return dir;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("cluster on a valid config emits one assignment entry per dataset") {
    const fs::path dir = make_benchmark_dir("cli_cluster");
    const fs::path bench = dir / "bench";
    const int code = run("cluster --config " + (bench / "config.json").string() + " --gamma 5 " +
                             "--out " + (dir / "out").string() + " --emit-distances " +
                             (dir / "w.csv").string(),
                         dir / "cluster.log");
    CHECK(code == 0);

    const json assignment = json::parse(slurp(dir / "out" / "assignment.json"));
    CHECK(assignment.size() == 9);
    int max_cluster = 0;
    for (const auto& [id, cluster] : assignment.items()) {
        max_cluster = std::max(max_cluster, cluster.get<int>());
    }
    CHECK(max_cluster + 1 == 3); // --k auto found the 3 planted families

    CHECK(fs::exists(dir / "w.csv"));
    CHECK(fs::exists(dir / "out" / "eigenvalues.csv"));
    CHECK(fs::exists(dir / "out" / "eigengap.csv"));
    CHECK(fs::exists(dir / "out" / "distances.json"));
}

TEST_CASE("missing schema file exits 2 and names the path") {
    const fs::path dir = testutil::temp_dir("cli_bad_schema");
    testutil::write_file(dir / "data.csv", "f0,group,label\n1,g0,1\n");
    testutil::write_file(dir / "config.json", R"({
      "schema": "nope_schema.json",
      "datasets": [{"id": "a", "path": "data.csv"}]
    })");
    const int code =
        run("cluster --config " + (dir / "config.json").string(), dir / "cluster.log");
    CHECK(code == 2);
    CHECK(slurp(dir / "cluster.log").find("nope_schema.json") != std::string::npos);
}

TEST_CASE("augment writes CSVs plus provenance sidecars") {
    const fs::path dir = make_benchmark_dir("cli_augment");
    const fs::path bench = dir / "bench";
    const int code = run("augment --config " + (bench / "config.json").string() +
                             " --target F0_D0 --method masc --gamma 5 --out " +
                             (dir / "aug").string(),
                         dir / "augment.log");
    CHECK(code == 0);

    CHECK(fs::exists(dir / "aug" / "augmented_F0_D0_masc.csv"));
    const json provenance =
        json::parse(slurp(dir / "aug" / "augmented_F0_D0_masc.provenance.json"));
    CHECK(provenance.at("target") == "F0_D0");
    CHECK(provenance.at("borrowed").is_array());
    CHECK(!provenance.at("borrowed").empty());
    // donors come from the same planted family
    for (const auto& row : provenance.at("borrowed")) {
        const std::string donor = row.at("donor").get<std::string>();
        CHECK(donor.substr(0, 2) == "F0");
        CHECK(donor != "F0_D0");
    }

    const int bad = run("augment --config " + (bench / "config.json").string() +
                            " --target NOPE --method masc --out " + (dir / "aug2").string(),
                        dir / "augment2.log");
    CHECK(bad == 2);
}

TEST_CASE("evaluate with --methods none emits only Initial rows") {
    const fs::path dir = make_benchmark_dir("cli_eval_none");
    const fs::path bench = dir / "bench";
    const int code = run("evaluate --config " + (bench / "config.json").string() +
                             " --methods none --targets F0_D0,F1_D0 --out " +
                             (dir / "eval").string(),
                         dir / "evaluate.log");
    CHECK(code == 0);

    const std::string table = slurp(dir / "eval" / "report_data.csv");
    std::istringstream lines(table);
    std::string line;
    std::getline(lines, line); // header
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        CHECK(line.find("Initial") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("full evaluate: row cardinality and MASC GR identity") {
    const fs::path dir = make_benchmark_dir("cli_eval_full");
    const fs::path bench = dir / "bench";
    const int code =
        run("evaluate --config " + (bench / "config.json").string() +
                " --methods masc,smote,rus,geo,none --targets F0_D0,F2_1 --gamma 5 --out " +
                (dir / "eval").string(),
            dir / "evaluate.log");
    // F2_1 is a typo'd id: must fail validation
    CHECK(code == 2);

    const int good =
        run("evaluate --config " + (bench / "config.json").string() +
                " --methods masc,smote,rus,geo,none --targets F0_D0,F2_D1 --gamma 5 --out " +
                (dir / "eval").string(),
            dir / "evaluate2.log");
    CHECK(good == 0);

    const json report = json::parse(slurp(dir / "eval" / "report.json"));
    CHECK(report.at("data").size() == 10);  // 2 targets x 5 methods
    CHECK(report.at("model").size() == 10);

    for (const auto& entry : report.at("data")) {
        if (entry.at("method") == "MASC") {
            double total = 0.0;
            for (const auto& v : entry.at("gr")) total += v.get<double>();
            CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
            // sufficient pool in the planted corpus: perfectly balanced
            for (const auto& v : entry.at("gr")) {
                CHECK(v.get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("identical configs produce byte-identical outputs") {
    const fs::path dir = make_benchmark_dir("cli_determinism");
    const fs::path bench = dir / "bench";
    for (const std::string out : {"run1", "run2"}) {
        const int code = run("evaluate --config " + (bench / "config.json").string() +
                                 " --methods masc,rus,none --targets F0_D0 --gamma 5 --out " +
                                 (dir / out).string(),
                             dir / (out + ".log"));
        REQUIRE(code == 0);
    }
    for (const std::string file : {"report_data.csv", "report_model.csv", "report.json"}) {
        CHECK(slurp(dir / "run1" / file) == slurp(dir / "run2" / file));
    }
}

} // TEST_SUITE
