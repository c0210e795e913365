#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "core/classifier.hpp"
#include "core/errors.hpp"
#include "core/model_io.hpp"
#include "oracles.hpp"

using namespace sobolhd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sobolhd_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

}  // namespace

TEST_CASE("hypervector set round-trip") {
    TempDir dir;
    std::mt19937 gen(31);
    std::vector<Hypervector> vectors;
    for (int i = 0; i < 5; ++i) {
        vectors.emplace_back(std::span<const int8_t>(oracles::random_bipolar(77, gen)));
    }
    auto path = (dir.path / "set.hv").string();
    save_hypervector_set(path, vectors, R"({"T": 0.5, "generator": "random", "seed": 31})");

    auto loaded = load_hypervector_set(path);
    REQUIRE(loaded.vectors.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(loaded.vectors[i] == vectors[i]);
    }
    REQUIRE(loaded.sidecar_json.has_value());
    auto sidecar = nlohmann::json::parse(*loaded.sidecar_json);
    CHECK(sidecar["generator"] == "random");
    CHECK(sidecar["T"] == 0.5);

    SUBCASE("bad magic is rejected") {
        auto bad = (dir.path / "bad.hv").string();
        std::ofstream out(bad, std::ios::binary);
        out << "NOTAMAGICFILE";
        out.close();
        CHECK_THROWS_AS(load_hypervector_set(bad), Error);
    }
    SUBCASE("truncation is detected") {
        auto truncated = (dir.path / "trunc.hv").string();
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string bytes = buf.str();
        std::ofstream out(truncated, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 7));
        out.close();
        CHECK_THROWS_AS(load_hypervector_set(truncated), Error);
    }
}

TEST_CASE("model round-trip") {
    TempDir dir;
    const auto& table = DirectionTable::builtin();
    GeneratorSpec spec;
    spec.source = Source::sobol;
    spec.sobol_selected = false;
    EncoderConfig config{3, 96, 0.34};
    auto memory = build_item_memory(&table, kAlphabet, spec, config);

    SyntheticSpec corpus_spec;
    corpus_spec.num_classes = 3;
    corpus_spec.texts_per_class = 12;
    corpus_spec.text_length = 48;
    corpus_spec.seed = 5;
    auto corpus = synthetic_corpus(corpus_spec);
    auto split = split_per_class(corpus, 9);
    auto model = train(split.train.items, memory, config);

    auto path = (dir.path / "model.shdm").string();
    save_model(path, model);
    auto loaded = load_model(path);

    CHECK(loaded.labels == model.labels);
    CHECK(loaded.config.dim == model.config.dim);
    CHECK(loaded.config.ngram == model.config.ngram);
    CHECK(loaded.config.threshold == model.config.threshold);
    CHECK(loaded.item_memory_fingerprint == model.item_memory_fingerprint);
    CHECK(loaded.symbols == model.symbols);
    CHECK(loaded.sobol_indexes == model.sobol_indexes);
    for (std::size_t c = 0; c < model.labels.size(); ++c) {
        CHECK(loaded.class_vectors[c] == model.class_vectors[c]);
        CHECK(loaded.accumulators[c].sums == model.accumulators[c].sums);
    }

    // the loaded model still classifies with a rebuilt item memory
    auto rebuilt = rebuild_item_memory(&table, loaded);
    auto eval = evaluate(split.test.items, loaded, rebuilt);
    CHECK(eval.total == split.test.items.size());

    SUBCASE("wrong file type is rejected") {
        auto set_path = (dir.path / "set.hv").string();
        save_hypervector_set(set_path, model.class_vectors, "");
        CHECK_THROWS_AS(load_model(set_path), Error);
    }
}

TEST_CASE("selection report") {
    TempDir dir;
    const auto& table = DirectionTable::builtin();
    SelectionStats stats;
    auto result = select_sobol_hypervectors(table, 16, 0.3, 4, ModeStrategy::column_mode, &stats);
    auto path = (dir.path / "selection.json").string();
    write_selection_report(path, result, stats, 16, R"({"dim": 16, "t": 0.3, "k": 4})");

    std::ifstream in(path);
    nlohmann::json report = nlohmann::json::parse(in);
    CHECK(report["D"] == 16);
    CHECK(report["T"] == 0.3);
    CHECK(report["k"] == 4);
    CHECK(report["indexes"].size() == 4);
    CHECK(report["mean_abs_scc"].is_number());
    CHECK(report["population_mean_abs_scc"].is_number());
    CHECK(report["timestamp"].is_string());
    CHECK(report["config"]["dim"] == 16);
}
