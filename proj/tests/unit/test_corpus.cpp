#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "core/corpus.hpp"
#include "core/errors.hpp"

using namespace sobolhd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sobolhd_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

TEST_CASE("normalize_text") {
    CHECK(normalize_text("Hello, World") == "hello* world");
    CHECK(normalize_text("") == "");
    CHECK(normalize_text("\xc3\x81\xc3\x89") == "**");  // two non-ASCII codepoints
    CHECK(normalize_text("a\t\n  b") == "a b");
    CHECK(normalize_text("MiXeD CaSe") == "mixed case");
    CHECK(normalize_text("7 numbers 42!") == "* numbers ***");

    SUBCASE("idempotent on its own output") {
        for (const char* raw : {"Hello, World", "  ÁÉ  ü ", "tabs\tand\nnewlines", "123"}) {
            std::string once = normalize_text(raw);
            CHECK(normalize_text(once) == once);
        }
    }
    SUBCASE("output stays inside the alphabet") {
        std::string out = normalize_text("z@#$%^&*()ÄÖÜ abc");
        for (char c : out) {
            CHECK(kAlphabet.find(c) != std::string_view::npos);
        }
    }
}

TEST_CASE("language corpus loading") {
    TempDir dir;
    write_file(dir.path / "eng.txt", "Hello World\nSecond Line\n");
    write_file(dir.path / "deu.txt", "Hallo Welt\n");

    SUBCASE("per-line items with labels from file names") {
        auto ds = load_language_corpus(dir.path.string());
        REQUIRE(ds.items.size() == 3);
        CHECK(ds.items[0].label == "deu");  // sorted by name
        CHECK(ds.items[0].symbols == "hallo welt");
        CHECK(ds.items[1].label == "eng");
        CHECK(ds.items[2].symbols == "second line");
    }
    SUBCASE("per-file granularity") {
        LanguageLoadOptions options;
        options.per_file = true;
        auto ds = load_language_corpus(dir.path.string(), options);
        REQUIRE(ds.items.size() == 2);
        CHECK(ds.items[1].symbols == "hello world second line ");
    }
    SUBCASE("per-class cap") {
        LanguageLoadOptions options;
        options.max_items_per_class = 1;
        auto ds = load_language_corpus(dir.path.string(), options);
        CHECK(ds.items.size() == 2);
    }
    SUBCASE("missing directory and empty class file") {
        CHECK_THROWS_AS(load_language_corpus((dir.path / "nope").string()), Error);
        write_file(dir.path / "empty.txt", "");
        CHECK_THROWS_AS(load_language_corpus(dir.path.string()), Error);
    }
}

TEST_CASE("headline loading") {
    TempDir dir;
    auto csv = dir.path / "toy.csv";
    std::string content = "category,headline\n";
    for (int i = 0; i < 15; ++i) content += "politics,Political headline " + std::to_string(i) + "\n";
    for (int i = 0; i < 15; ++i) content += "parenting,\"Kids, headline " + std::to_string(i) + "\"\n";
    for (int i = 0; i < 4; ++i) content += "sports,Sports headline " + std::to_string(i) + "\n";
    write_file(csv, content);

    SUBCASE("caps split train and test deterministically") {
        HeadlineLoadOptions options;
        options.classes = {"politics", "parenting"};
        options.train_cap = 10;
        options.test_cap = 2;
        auto split = load_headline_csv(csv.string(), options);
        CHECK(split.train.items.size() == 20);
        CHECK(split.test.items.size() == 4);
        CHECK(split.train.items[0].label == "politics");
        CHECK(split.train.items[0].symbols == "political headline *");
        // unknown category rows are skipped entirely
        for (const auto& item : split.train.items) {
            CHECK(item.label != "sports");
        }
    }
    SUBCASE("quoted CSV fields keep their commas") {
        HeadlineLoadOptions options;
        options.classes = {"parenting"};
        options.train_cap = 1;
        options.test_cap = 0;
        auto split = load_headline_csv(csv.string(), options);
        REQUIRE(split.train.items.size() == 1);
        CHECK(split.train.items[0].symbols == "kids* headline *");
    }
    SUBCASE("json-lines input") {
        auto jsonl = dir.path / "toy.jsonl";
        write_file(jsonl,
                   "{\"headline\": \"Hello World\", \"category\": \"POLITICS\"}\n"
                   "{\"headline\": \"Second\", \"category\": \"SPORTS\"}\n");
        auto split = load_headline_csv(jsonl.string(), {});
        REQUIRE(split.train.items.size() == 2);
        CHECK(split.train.items[0].label == "politics");  // categories lowercased
        CHECK(split.train.items[0].symbols == "hello world");
    }
    SUBCASE("missing fields error") {
        auto bad = dir.path / "bad.csv";
        write_file(bad, "title,text\nfoo,bar\n");
        CHECK_THROWS_AS(load_headline_csv(bad.string(), {}), Error);
    }
}

TEST_CASE("synthetic corpus") {
    SUBCASE("separation 1 keeps class letter sets disjoint") {
        SyntheticSpec spec;
        spec.num_classes = 2;
        spec.texts_per_class = 5;
        spec.text_length = 200;
        spec.separation = 1.0;
        auto ds = synthetic_corpus(spec);
        std::map<std::string, std::set<char>> letters;
        for (const auto& item : ds.items) {
            for (char c : item.symbols) {
                if (c != kSpaceSymbol) letters[item.label].insert(c);
            }
        }
        for (char c : letters["class0"]) {
            CHECK(letters["class1"].count(c) == 0);
        }
    }
    SUBCASE("deterministic per seed") {
        SyntheticSpec spec;
        spec.seed = 99;
        spec.texts_per_class = 3;
        auto a = synthetic_corpus(spec);
        auto b = synthetic_corpus(spec);
        REQUIRE(a.items.size() == b.items.size());
        for (std::size_t i = 0; i < a.items.size(); ++i) {
            CHECK(a.items[i].symbols == b.items[i].symbols);
        }
        spec.seed = 100;
        auto c = synthetic_corpus(spec);
        CHECK(a.items[0].symbols != c.items[0].symbols);
    }
    SUBCASE("shape and alphabet") {
        SyntheticSpec spec;
        spec.num_classes = 3;
        spec.texts_per_class = 4;
        spec.text_length = 57;
        auto ds = synthetic_corpus(spec);
        CHECK(ds.items.size() == 12);
        for (const auto& item : ds.items) {
            CHECK(item.symbols.size() == 57);
            for (char c : item.symbols) {
                CHECK(kAlphabet.find(c) != std::string_view::npos);
            }
        }
    }
    SUBCASE("argument validation") {
        SyntheticSpec spec;
        spec.separation = 1.5;
        CHECK_THROWS_AS(synthetic_corpus(spec), Error);
    }
}

TEST_CASE("per-class split and language round-trip") {
    SyntheticSpec spec;
    spec.num_classes = 3;
    spec.texts_per_class = 10;
    spec.text_length = 40;
    auto ds = synthetic_corpus(spec);

    auto split = split_per_class(ds, 7);
    CHECK(split.train.items.size() == 21);
    CHECK(split.test.items.size() == 9);

    TempDir dir;
    save_language_corpus(ds, dir.path.string());
    auto loaded = load_language_corpus(dir.path.string());
    REQUIRE(loaded.items.size() == ds.items.size());
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        CHECK(loaded.items[i].label == ds.items[i].label);
        CHECK(loaded.items[i].symbols == ds.items[i].symbols);
    }
}
