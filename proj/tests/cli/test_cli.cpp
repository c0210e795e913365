// End-to-end checks of the sobolhd binary: every verb, determinism, error
// exits, and the config-file mirror.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string command = std::string(SOBOLHD_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sobolhd_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

constexpr const char* kTinyCorpus =
    "synthetic:classes=3,per-class=20,length=60,seed=5,separation=0.8";

}  // namespace

TEST_CASE("sobol verb") {
    TempDir dir;
    auto out = (dir.path / "sobol.csv").string();

    SUBCASE("matches the sequence examples") {
        auto result = run("sobol --dims 2 --points 4 --out " + out);
        CHECK(result.exit_code == 0);
        std::string csv = slurp(out);
        CHECK(csv.find("1,0,0.5,0.25,0.75") != std::string::npos);
        CHECK(csv.find("2,0,0.5,0.75,0.25") != std::string::npos);
        CHECK(csv.find("# config:") != std::string::npos);
    }
    SUBCASE("explicit direction file gives the same points") {
        auto result = run("--direction-file " + std::string(SOBOLHD_DATA_DIR) +
                          "/sobol-directions-1111.txt sobol --dims 2 --points 4 --out " + out);
        CHECK(result.exit_code == 0);
        CHECK(slurp(out).find("2,0,0.5,0.75,0.25") != std::string::npos);
    }
    SUBCASE("zero dims is a usage error") {
        auto result = run("sobol --dims 0 --points 4 --out " + out);
        CHECK(result.exit_code != 0);
    }
    SUBCASE("the 1111 cap is enforced") {
        auto result = run("sobol --dims 1112 --points 4 --out " + out);
        CHECK(result.exit_code != 0);
        CHECK(result.output.find("1111") != std::string::npos);
    }
}

TEST_CASE("select verb") {
    TempDir dir;
    auto out = (dir.path / "sel.json").string();

    SUBCASE("writes the report with unique indexes and stats") {
        auto result = run("select --dim 128 --t 0.34 --k 28 --out " + out);
        CHECK(result.exit_code == 0);
        json report = json::parse(slurp(out));
        CHECK(report["D"] == 128);
        CHECK(report["T"] == 0.34);
        CHECK(report["k"] == 28);
        CHECK(report["indexes"].size() == 28);
        CHECK(report["mean_abs_scc"].is_number());
        CHECK(report["config"]["command"] == "select");
    }
    SUBCASE("identical invocations agree modulo the timestamp") {
        auto out2 = (dir.path / "sel2.json").string();
        CHECK(run("select --dim 128 --t 0.34 --k 8 --out " + out).exit_code == 0);
        CHECK(run("select --dim 128 --t 0.34 --k 8 --out " + out2).exit_code == 0);
        json a = json::parse(slurp(out));
        json b = json::parse(slurp(out2));
        a.erase("timestamp");
        b.erase("timestamp");
        CHECK(a == b);
    }
    SUBCASE("k beyond capacity fails") {
        auto result = run("select --dim 64 --t 0.3 --k 1112 --out " + out);
        CHECK(result.exit_code != 0);
        CHECK(result.output.find("capacity") != std::string::npos);
    }
}

TEST_CASE("sweep verb") {
    TempDir dir;
    auto out = (dir.path / "sweep.csv").string();
    auto svg = (dir.path / "sweep.svg").string();
    std::string base = std::string("sweep --data ") + kTinyCorpus +
                       " --source sobol --dims 64 --ngram 3 --out ";

    SUBCASE("default grid has 49 rows with an argmax marker") {
        auto result = run(base + out);
        CHECK(result.exit_code == 0);
        std::string csv = slurp(out);
        int rows = 0, best = 0;
        std::istringstream lines(csv);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("dim,", 0) == 0) continue;
            ++rows;
            if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++best;
        }
        CHECK(rows == 49);
        CHECK(best == 1);
    }
    SUBCASE("re-running yields identical output and renders an svg") {
        auto out2 = (dir.path / "sweep2.csv").string();
        CHECK(run(base + out + " --svg " + svg).exit_code == 0);
        CHECK(run(base + out2).exit_code == 0);
        CHECK(slurp(out) == slurp(out2));
        CHECK(slurp(svg).find("<polyline") != std::string::npos);
    }
}

TEST_CASE("train, infer, eval round trip") {
    TempDir dir;
    auto model = (dir.path / "model.shdm").string();
    auto predictions = (dir.path / "pred.csv").string();
    auto table = (dir.path / "eval.csv").string();

    auto trained = run(std::string("train --data ") + kTinyCorpus +
                       " --source sobol --dim 128 --t 0.3 --ngram 3 --out " + model);
    REQUIRE(trained.exit_code == 0);

    SUBCASE("infer labels the dataset") {
        auto result = run("infer --model " + model + " --data " + kTinyCorpus + " --out " +
                          predictions);
        CHECK(result.exit_code == 0);
        std::string csv = slurp(predictions);
        CHECK(csv.find("index,label,predicted") != std::string::npos);
        CHECK(csv.find("class0") != std::string::npos);
    }
    SUBCASE("a different direction table is rejected by the fingerprint") {
        // same format, one initial value changed for dimension 3
        auto modified = dir.path / "modified-directions.txt";
        {
            std::ifstream in(std::string(SOBOLHD_DATA_DIR) + "/sobol-directions-1111.txt");
            std::ofstream out_file(modified);
            std::string line;
            while (std::getline(in, line)) {
                if (line.rfind("3 2 1 ", 0) == 0) {
                    out_file << "3 2 1 1 3\n";
                } else {
                    out_file << line << '\n';
                }
            }
        }
        auto result = run("--direction-file " + modified.string() + " infer --model " + model +
                          " --data " + kTinyCorpus + " --out " + predictions);
        CHECK(result.exit_code != 0);
        CHECK(result.output.find("incompatible") != std::string::npos);
    }
    SUBCASE("eval reports the accuracy-table columns") {
        auto result = run(std::string("eval --data ") + kTinyCorpus +
                          " --source random --dim 128 --t 0.5 --ngram 3 --trials 4 --out " + table);
        CHECK(result.exit_code == 0);
        std::string csv = slurp(table);
        CHECK(csv.find("source,dim,t,ngram,trials,min_acc,max_acc,std_dev,avg_acc") !=
              std::string::npos);
        CHECK(csv.find("random,128,0.5,3,4,") != std::string::npos);

        auto sobol_eval = run(std::string("eval --data ") + kTinyCorpus +
                              " --source sobol --dim 128 --t 0.3 --ngram 3 --trials 7 --out " +
                              table);
        CHECK(sobol_eval.exit_code == 0);
        CHECK(slurp(table).find("sobol,128,0.3,3,1,") != std::string::npos);  // deterministic source
    }
}

TEST_CASE("bench verb") {
    TempDir dir;
    auto out = (dir.path / "bench.csv").string();
    auto result = run("bench --dims 64 --sources sobol,lfsr --texts 10 --out " + out);
    CHECK(result.exit_code == 0);
    std::string csv = slurp(out);
    CHECK(csv.find("source,dim,build_ms,encode_texts_per_s,memory_bytes") != std::string::npos);
    CHECK(csv.find("sobol,64,") != std::string::npos);
    CHECK(csv.find("sobol-first-k,64,") != std::string::npos);
    CHECK(csv.find("lfsr,64,") != std::string::npos);
    CHECK(csv.find(",224") != std::string::npos);  // 28 * 64 / 8 bytes
}

TEST_CASE("config file mirrors flags and flags win") {
    TempDir dir;
    auto config_path = (dir.path / "config.json").string();
    auto out = (dir.path / "out.csv").string();
    {
        std::ofstream config(config_path);
        config << R"({"dims": 3, "points": 4, "out": ")" << out << R"("})";
    }
    auto from_config = run("sobol --config " + config_path);
    CHECK(from_config.exit_code == 0);
    std::string csv = slurp(out);
    CHECK(csv.find("3,0,0.5,0.25,0.75") != std::string::npos);  // 3 rows generated

    auto overridden = run("sobol --config " + config_path + " --dims 1");
    CHECK(overridden.exit_code == 0);
    std::string csv2 = slurp(out);
    CHECK(csv2.find("1,0,0.5,0.25,0.75") != std::string::npos);
    CHECK(csv2.find("\n2,") == std::string::npos);  // only one row
}

TEST_CASE("unknown source and missing data fail with nonzero exit") {
    TempDir dir;
    auto out = (dir.path / "x.csv").string();
    CHECK(run(std::string("eval --data ") + kTinyCorpus + " --source foo --out " + out).exit_code !=
          0);
    CHECK(run("eval --data /no/such/dir --source sobol --out " + out).exit_code != 0);
    CHECK(run("train --data /no/such/dir --source sobol --out " + out).exit_code != 0);
}
