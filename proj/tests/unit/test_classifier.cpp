#include <doctest.h>

#include <cmath>
#include <set>

#include "core/classifier.hpp"
#include "core/errors.hpp"
#include "core/similarity.hpp"
#include "oracles.hpp"

using namespace sobolhd;

namespace {

Hypervector from_list(std::initializer_list<int8_t> elements) {
    return Hypervector(std::span<const int8_t>(elements.begin(), elements.size()));
}

// Hand-built item memory over a tiny alphabet, bypassing generation.
ItemMemory manual_memory(std::string symbols, std::vector<Hypervector> vectors) {
    ItemMemory memory;
    memory.symbols = std::move(symbols);
    memory.dim = vectors.front().dim();
    memory.vectors = std::move(vectors);
    memory.threshold = 0.5;
    memory.source = Source::random;
    return memory;
}

PerClassSplit synthetic_split(uint64_t seed, uint32_t classes = 2, uint32_t per_class = 30,
                              uint32_t length = 60, double separation = 1.0) {
    SyntheticSpec spec;
    spec.num_classes = classes;
    spec.texts_per_class = per_class;
    spec.text_length = length;
    spec.seed = seed;
    spec.separation = separation;
    return split_per_class(synthetic_corpus(spec), per_class * 4 / 5);
}

}  // namespace

TEST_CASE("item memory construction") {
    const auto& table = DirectionTable::builtin();

    SUBCASE("sobol selected assigns selection indexes in alphabet order") {
        GeneratorSpec spec;
        spec.source = Source::sobol;
        EncoderConfig config{4, 256, 0.38};
        auto memory = build_item_memory(&table, kAlphabet, spec, config);
        REQUIRE(memory.vectors.size() == 28);
        REQUIRE(memory.sobol_indexes.size() == 28);
        std::set<uint32_t> unique(memory.sobol_indexes.begin(), memory.sobol_indexes.end());
        CHECK(unique.size() == 28);
        auto selection = select_sobol_hypervectors(table, 256, 0.38, 28);
        CHECK(memory.sobol_indexes == selection.indexes);
        CHECK(memory.vectors[3] ==
              threshold_encode(sobol_dimension(table, selection.indexes[3], 256), 0.38));
    }
    SUBCASE("sobol first-K mode") {
        GeneratorSpec spec;
        spec.source = Source::sobol;
        spec.sobol_selected = false;
        EncoderConfig config{4, 64, 0.3};
        auto memory = build_item_memory(&table, "abc", spec, config);
        CHECK(memory.sobol_indexes == std::vector<uint32_t>{1, 2, 3});
    }
    SUBCASE("random source is reproducible per master seed") {
        GeneratorSpec spec;
        spec.source = Source::random;
        spec.seed = 42;
        EncoderConfig config{4, 128, 0.5};
        auto a = build_item_memory(nullptr, "ab", spec, config);
        auto b = build_item_memory(nullptr, "ab", spec, config);
        CHECK(a.vectors[0] == b.vectors[0]);
        CHECK(a.vectors[1] == b.vectors[1]);
        CHECK(a.vectors[0] != a.vectors[1]);
        CHECK(a.fingerprint() == b.fingerprint());
    }
    SUBCASE("lfsr modes differ and report pairwise correlation") {
        GeneratorSpec spec;
        spec.source = Source::lfsr;
        spec.seed = 3;
        EncoderConfig config{4, 64, 0.5};
        auto per_symbol = build_item_memory(nullptr, kAlphabet, spec, config);
        spec.lfsr_shared_stream = true;
        auto shared = build_item_memory(nullptr, kAlphabet, spec, config);
        CHECK(per_symbol.vectors.size() == 28);
        CHECK(shared.vectors.size() == 28);
        auto range = scc_range_monitor(per_symbol.vectors);
        CHECK(range.min_scc >= -1.0);
        CHECK(range.max_scc <= 1.0);
    }
    SUBCASE("degenerate and invalid configurations") {
        GeneratorSpec spec;
        spec.source = Source::sobol;
        CHECK_THROWS_AS(build_item_memory(&table, kAlphabet, spec, EncoderConfig{4, 64, 0.0}),
                        Error);
        CHECK_THROWS_AS(build_item_memory(nullptr, kAlphabet, spec, EncoderConfig{4, 64, 0.5}),
                        Error);
        CHECK_THROWS_AS(build_item_memory(&table, kAlphabet, spec, EncoderConfig{4, 8, 0.5}),
                        Error);
        CHECK_THROWS_AS(build_item_memory(&table, "", spec, EncoderConfig{4, 64, 0.5}), Error);
    }
}

TEST_CASE("ngram encoding") {
    SUBCASE("n=1 returns the symbol vector") {
        auto memory = manual_memory("ab", {from_list({1, -1, 1, -1}), from_list({1, 1, -1, -1})});
        CHECK(encode_ngram("a", memory) == memory.vectors[0]);
        CHECK(encode_ngram("b", memory) == memory.vectors[1]);
    }
    SUBCASE("n=2 hand evaluation with right rotation") {
        auto memory = manual_memory("ab", {from_list({1, -1, 1, -1}), from_list({1, 1, -1, -1})});
        auto encoded = encode_ngram("ab", memory);
        CHECK(encoded.to_elements() == std::vector<int8_t>{-1, -1, 1, 1});
    }
    SUBCASE("re-encoding is identical") {
        auto memory = manual_memory("ab", {from_list({1, -1, 1, -1}), from_list({1, 1, -1, -1})});
        CHECK(encode_ngram("aa", memory) == encode_ngram("aa", memory));
    }
    SUBCASE("unknown symbol names the offender") {
        auto memory = manual_memory("ab", {from_list({1, -1}), from_list({-1, 1})});
        try {
            encode_ngram("ax", memory);
            FAIL("expected encoding error");
        } catch (const Error& e) {
            CHECK(e.status() == Status::encoding);
            CHECK(std::string(e.what()).find('x') != std::string::npos);
        }
    }
}

TEST_CASE("text encoding") {
    const auto& table = DirectionTable::builtin();
    GeneratorSpec spec;
    spec.source = Source::sobol;
    spec.sobol_selected = false;
    EncoderConfig config{4, 64, 0.3};
    auto memory = build_item_memory(&table, kAlphabet, spec, config);

    SUBCASE("window count matches a recomputation oracle") {
        std::string text = "the quick brown fox";
        Accumulator oracle(64);
        for (std::size_t w = 0; w + 4 <= text.size(); ++w) {
            oracle.add(encode_ngram(text.substr(w, 4), memory));
        }
        CHECK(encode_text(text, memory, config) == sign_threshold(oracle));
        CHECK(text.size() - 4 + 1 == 16);  // L - n + 1 windows
    }
    SUBCASE("text of exactly n symbols is its own sign") {
        std::string gram = "abcd";
        auto encoded = encode_text(gram, memory, config);
        CHECK(encoded == encode_ngram(gram, memory));  // sign of a single +-1 vector
    }
    SUBCASE("repeated symbol text is deterministic") {
        CHECK(encode_text("aaaa", memory, config) == encode_text("aaaa", memory, config));
    }
    SUBCASE("too-short text errors") {
        CHECK_THROWS_AS(encode_text("abc", memory, config), Error);
    }
}

TEST_CASE("training") {
    const auto& table = DirectionTable::builtin();
    GeneratorSpec spec;
    spec.source = Source::sobol;
    spec.sobol_selected = false;
    EncoderConfig config{4, 128, 0.3};
    auto memory = build_item_memory(&table, kAlphabet, spec, config);

    SUBCASE("one class, one text: class vector equals the text vector") {
        std::vector<LabeledText> data{{"only", "hello world text"}};
        auto model = train(data, memory, config);
        REQUIRE(model.labels == std::vector<std::string>{"only"});
        CHECK(model.class_vectors[0] == encode_text(data[0].symbols, memory, config));
    }
    SUBCASE("disjoint-alphabet classes are near orthogonal") {
        // random-projection concentration, |cos| <~ 3/sqrt(D); needs an
        // unbiased item memory (T=0.5), biased vectors share a mean component
        int within = 0;
        const int runs = 20;
        for (int run = 0; run < runs; ++run) {
            GeneratorSpec unbiased;
            unbiased.source = Source::random;
            unbiased.seed = 7000 + run;
            EncoderConfig half{4, 128, 0.5};
            auto unbiased_memory = build_item_memory(nullptr, kAlphabet, unbiased, half);
            auto split = synthetic_split(500 + run);
            auto model = train(split.train.items, unbiased_memory, half);
            REQUIRE(model.labels.size() == 2);
            double cos = cosine(model.class_vectors[0], model.class_vectors[1]);
            if (std::abs(cos) <= 3.0 / std::sqrt(128.0)) ++within;
        }
        CHECK(within >= 17);
    }
    SUBCASE("duplicating the training set leaves class vectors unchanged") {
        auto split = synthetic_split(7);
        auto model = train(split.train.items, memory, config);
        std::vector<LabeledText> doubled(split.train.items);
        doubled.insert(doubled.end(), split.train.items.begin(), split.train.items.end());
        auto model2 = train(doubled, memory, config);
        for (std::size_t c = 0; c < model.class_vectors.size(); ++c) {
            CHECK(model.class_vectors[c] == model2.class_vectors[c]);
        }
    }
    SUBCASE("single-pass accumulators equal the sum of text vectors") {
        auto split = synthetic_split(8);
        auto model = train(split.train.items, memory, config);
        std::vector<Accumulator> expected;
        for (std::size_t c = 0; c < model.labels.size(); ++c) expected.emplace_back(128);
        for (const auto& item : split.train.items) {
            std::size_t c = item.label == model.labels[0] ? 0 : 1;
            expected[c].add(encode_text(item.symbols, memory, config));
        }
        for (std::size_t c = 0; c < model.labels.size(); ++c) {
            CHECK(model.accumulators[c].sums == expected[c].sums);
        }
    }
    SUBCASE("empty dataset errors") {
        CHECK_THROWS_AS(train({}, memory, config), Error);
    }
    SUBCASE("fixed inputs give a bit-identical model") {
        auto split = synthetic_split(9);
        auto a = train(split.train.items, memory, config);
        auto b = train(split.train.items, memory, config);
        CHECK(a.item_memory_fingerprint == b.item_memory_fingerprint);
        for (std::size_t c = 0; c < a.class_vectors.size(); ++c) {
            CHECK(a.class_vectors[c] == b.class_vectors[c]);
            CHECK(a.accumulators[c].sums == b.accumulators[c].sums);
        }
    }
}

TEST_CASE("classification and evaluation") {
    const auto& table = DirectionTable::builtin();
    GeneratorSpec spec;
    spec.source = Source::sobol;
    spec.sobol_selected = false;
    EncoderConfig config{4, 256, 0.3};
    auto memory = build_item_memory(&table, kAlphabet, spec, config);

    SUBCASE("training text of a single-class model classifies to that class") {
        std::vector<LabeledText> data{{"only", "some training text here"}};
        auto model = train(data, memory, config);
        auto result = classify(data[0].symbols, model, memory);
        CHECK(result.label == "only");
        CHECK(result.scores.size() == 1);
    }
    SUBCASE("disjoint two-class task is perfectly separable at D=256") {
        // uniform letters give few repeated 4-grams at desk scale, so the
        // learnable signal lives in bigrams here
        EncoderConfig bigram{2, 256, 0.3};
        auto bigram_memory = build_item_memory(&table, kAlphabet, spec, bigram);
        auto split = synthetic_split(11);
        auto model = train(split.train.items, bigram_memory, bigram);
        auto eval = evaluate(split.test.items, model, bigram_memory);
        CHECK(eval.accuracy == 1.0);
        CHECK(eval.total == split.test.items.size());
        CHECK(eval.correct == eval.total);
        // confusion concentrates on the diagonal
        CHECK(eval.confusion[0 * 2 + 1] == 0);
        CHECK(eval.confusion[1 * 2 + 0] == 0);
    }
    SUBCASE("scores vector length equals the class count") {
        auto split = synthetic_split(12, 3);
        auto model = train(split.train.items, memory, config);
        auto result = classify(split.test.items[0].symbols, model, memory);
        CHECK(result.scores.size() == 3);
    }
    SUBCASE("raw accumulator scoring also works") {
        auto split = synthetic_split(13);
        auto model = train(split.train.items, memory, config);
        auto result = classify(split.test.items[0].symbols, model, memory, true);
        CHECK((result.label == model.labels[0] || result.label == model.labels[1]));
    }
    SUBCASE("fingerprint mismatch is rejected") {
        auto split = synthetic_split(14);
        auto model = train(split.train.items, memory, config);
        GeneratorSpec other;
        other.source = Source::random;
        other.seed = 5;
        auto wrong_memory = build_item_memory(nullptr, kAlphabet, other, config);
        try {
            classify(split.test.items[0].symbols, model, wrong_memory);
            FAIL("expected incompatibility error");
        } catch (const Error& e) {
            CHECK(e.status() == Status::incompatible);
        }
        CHECK_THROWS_AS(evaluate(split.test.items, model, wrong_memory), Error);
    }
    SUBCASE("unknown test label is rejected") {
        auto split = synthetic_split(15);
        auto model = train(split.train.items, memory, config);
        std::vector<LabeledText> bad{{"mystery", "some text to challenge the model"}};
        CHECK_THROWS_AS(evaluate(bad, model, memory), Error);
    }
}

TEST_CASE("item memory rebuild round-trip") {
    const auto& table = DirectionTable::builtin();
    for (Source source : {Source::sobol, Source::lfsr, Source::random}) {
        GeneratorSpec spec;
        spec.source = source;
        spec.seed = 21;
        EncoderConfig config{4, 64, 0.3};
        auto memory = build_item_memory(source == Source::sobol ? &table : nullptr, kAlphabet,
                                        spec, config);
        auto split = synthetic_split(16);
        auto model = train(split.train.items, memory, config);
        auto rebuilt = rebuild_item_memory(source == Source::sobol ? &table : nullptr, model);
        CHECK(rebuilt.fingerprint() == model.item_memory_fingerprint);
        auto eval = evaluate(split.test.items, model, rebuilt);
        CHECK(eval.total == split.test.items.size());
    }
}

TEST_CASE("threshold sweep") {
    const auto& table = DirectionTable::builtin();
    auto split = synthetic_split(17, 2, 20, 40, 0.8);
    std::vector<double> grid{0.2, 0.3, 0.5, 0.7};

    GeneratorSpec spec;
    spec.source = Source::sobol;
    auto result = threshold_sweep(split.train.items, split.test.items, &table, spec, 64, 3, grid);
    REQUIRE(result.points.size() == 4);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(result.points[i].threshold == grid[i]);
        CHECK(result.points[i].accuracy >= 0.0);
        CHECK(result.points[i].accuracy <= 1.0);
        CHECK(!std::isnan(result.points[i].accuracy));
    }
    CHECK(result.best_accuracy ==
          std::max_element(result.points.begin(), result.points.end(),
                           [](const SweepPoint& a, const SweepPoint& b) {
                               return a.accuracy < b.accuracy;
                           })->accuracy);

    SUBCASE("re-run equality") {
        auto again = threshold_sweep(split.train.items, split.test.items, &table, spec, 64, 3, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(again.points[i].accuracy == result.points[i].accuracy);
        }
        CHECK(again.best_threshold == result.best_threshold);
    }
    SUBCASE("grid endpoints are rejected") {
        std::vector<double> bad{0.0, 0.5};
        CHECK_THROWS_AS(
            threshold_sweep(split.train.items, split.test.items, &table, spec, 64, 3, bad), Error);
    }
}

TEST_CASE("accuracy is statistically non-decreasing in D on the synthetic task") {
    const auto& table = DirectionTable::builtin();
    const std::vector<uint32_t> dims{16, 64, 256, 1024};
    std::vector<double> mean_acc;
    for (uint32_t dim : dims) {
        GeneratorSpec spec;
        spec.source = Source::sobol;
        spec.sobol_selected = false;
        EncoderConfig config{4, dim, 0.3};
        auto memory = build_item_memory(&table, kAlphabet, spec, config);
        double total = 0.0;
        const int runs = 10;
        for (int run = 0; run < runs; ++run) {
            auto split = synthetic_split(900 + run, 4, 25, 60, 0.5);
            auto model = train(split.train.items, memory, config);
            total += evaluate(split.test.items, model, memory).accuracy;
        }
        mean_acc.push_back(total / runs);
    }
    int inversions = 0;
    for (std::size_t i = 1; i < mean_acc.size(); ++i) {
        if (mean_acc[i] < mean_acc[i - 1]) ++inversions;
    }
    CHECK(inversions <= 1);
}
