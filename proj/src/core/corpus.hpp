#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sobolhd {

// 26 letters, one space, one catch-all for everything else: K = 28 symbols.
inline constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz *";
inline constexpr char kSpaceSymbol = ' ';
inline constexpr char kExtraSymbol = '*';

// Total mapping into the 28-symbol alphabet: ASCII letters lowercase,
// whitespace runs collapse to one space, any other codepoint becomes the
// extra symbol. Idempotent on its own output.
std::string normalize_text(std::string_view raw);

struct LabeledText {
    std::string label;
    std::string symbols;  // over kAlphabet
};

struct Dataset {
    std::vector<LabeledText> items;
    std::string alphabet{kAlphabet};
};

struct LanguageLoadOptions {
    bool per_file = false;            // one item per file instead of per line
    uint32_t max_items_per_class = 0; // 0 = unlimited
};

// Directory of UTF-8 <label>.txt files, labels sorted by name.
Dataset load_language_corpus(const std::string& dir, const LanguageLoadOptions& options = {});

void save_language_corpus(const Dataset& dataset, const std::string& dir);

struct HeadlineLoadOptions {
    std::vector<std::string> classes;  // empty = accept every category
    uint32_t train_cap = 3400;
    uint32_t test_cap = 1000;
};

struct HeadlineSplit {
    Dataset train;
    Dataset test;
};

// JSON-lines records with "headline" and "category" fields, or CSV with a
// header naming those two columns. The first train_cap rows of a class go to
// the train split, the next test_cap rows to the test split, in file order.
HeadlineSplit load_headline_csv(const std::string& path, const HeadlineLoadOptions& options = {});

struct SyntheticSpec {
    uint32_t num_classes = 5;
    uint32_t texts_per_class = 250;
    uint32_t text_length = 120;
    uint64_t seed = 1;
    double separation = 0.6;  // 1 = disjoint class letter groups, 0 = identical distributions
};

// Words of 3..8 letters separated by single spaces; letters drawn from
// separation * uniform(class group) + (1 - separation) * uniform(a..z),
// groups assigned round-robin over the letters. Deterministic per seed.
Dataset synthetic_corpus(const SyntheticSpec& spec);

struct PerClassSplit {
    Dataset train;
    Dataset test;
};

// First train_per_class items of every class to train, the rest to test.
PerClassSplit split_per_class(const Dataset& dataset, uint32_t train_per_class);

}  // namespace sobolhd
