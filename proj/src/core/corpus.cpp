#include "core/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace fs = std::filesystem;

namespace sobolhd {

namespace {

// Decodes one UTF-8 codepoint; malformed bytes consume one byte and yield
// an out-of-range codepoint (mapped to the extra symbol).
uint32_t next_codepoint(std::string_view text, std::size_t& pos) {
    unsigned char c = static_cast<unsigned char>(text[pos]);
    if (c < 0x80) {
        ++pos;
        return c;
    }
    int extra = c >= 0xf0 ? 3 : c >= 0xe0 ? 2 : c >= 0xc0 ? 1 : 0;
    if (extra == 0 || pos + static_cast<std::size_t>(extra) >= text.size()) {
        ++pos;
        return 0xfffd;
    }
    uint32_t cp = c & (0x3fu >> extra);
    for (int i = 1; i <= extra; ++i) {
        unsigned char cont = static_cast<unsigned char>(text[pos + i]);
        if ((cont & 0xc0) != 0x80) {
            ++pos;
            return 0xfffd;
        }
        cp = (cp << 6) | (cont & 0x3f);
    }
    pos += extra + 1;
    return cp;
}

bool is_ascii_space(uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool in_space_run = false;
    std::size_t pos = 0;
    while (pos < raw.size()) {
        uint32_t cp = next_codepoint(raw, pos);
        if (is_ascii_space(cp)) {
            if (!in_space_run) {
                out += kSpaceSymbol;
                in_space_run = true;
            }
            continue;
        }
        in_space_run = false;
        if (cp >= 'A' && cp <= 'Z') {
            out += static_cast<char>(cp - 'A' + 'a');
        } else if (cp >= 'a' && cp <= 'z') {
            out += static_cast<char>(cp);
        } else {
            out += kExtraSymbol;
        }
    }
    return out;
}

Dataset load_language_corpus(const std::string& dir, const LanguageLoadOptions& options) {
    if (!fs::is_directory(dir)) {
        throw_error(Status::io, "language corpus directory '" + dir + "' does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw_error(Status::io, "language corpus directory '" + dir + "' has no .txt files");
    }
    Dataset dataset;
    for (const auto& file : files) {
        std::string label = file.stem().string();
        std::ifstream in(file);
        if (!in) {
            throw_error(Status::io, "cannot open '" + file.string() + "'");
        }
        uint32_t added = 0;
        if (options.per_file) {
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string symbols = normalize_text(buf.str());
            if (!symbols.empty()) {
                dataset.items.push_back({label, std::move(symbols)});
                ++added;
            }
        } else {
            std::string line;
            while (std::getline(in, line)) {
                if (options.max_items_per_class != 0 && added >= options.max_items_per_class) break;
                std::string symbols = normalize_text(line);
                if (symbols.empty() || symbols == " ") continue;
                dataset.items.push_back({label, std::move(symbols)});
                ++added;
            }
        }
        if (added == 0) {
            throw_error(Status::io, "class file '" + file.string() + "' contains no usable text");
        }
    }
    return dataset;
}

void save_language_corpus(const Dataset& dataset, const std::string& dir) {
    fs::create_directories(dir);
    std::map<std::string, std::ofstream> files;
    for (const auto& item : dataset.items) {
        auto it = files.find(item.label);
        if (it == files.end()) {
            auto path = fs::path(dir) / (item.label + ".txt");
            it = files.emplace(item.label, std::ofstream(path)).first;
            if (!it->second) {
                throw_error(Status::io, "cannot write '" + path.string() + "'");
            }
        }
        it->second << item.symbols << '\n';
    }
}

HeadlineSplit load_headline_csv(const std::string& path, const HeadlineLoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw_error(Status::io, "cannot open headline file '" + path + "'");
    }
    const bool want_all = options.classes.empty();
    auto wanted = [&](const std::string& category) {
        return want_all || std::find(options.classes.begin(), options.classes.end(), category) !=
                               options.classes.end();
    };

    HeadlineSplit split;
    std::map<std::string, uint32_t> taken;
    auto add = [&](const std::string& category, const std::string& headline) {
        if (!wanted(category)) return;
        uint32_t& count = taken[category];
        std::string symbols = normalize_text(headline);
        if (symbols.empty()) return;
        if (count < options.train_cap) {
            split.train.items.push_back({category, std::move(symbols)});
        } else if (count < options.train_cap + options.test_cap) {
            split.test.items.push_back({category, std::move(symbols)});
        } else {
            return;
        }
        ++count;
    };

    std::string line;
    if (!std::getline(in, line)) {
        throw_error(Status::parse, path + ": empty headline file");
    }
    bool jsonl = !line.empty() && line.front() == '{';
    if (jsonl) {
        int line_no = 0;
        do {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
            if (record.is_discarded() || !record.is_object()) {
                throw_error(Status::parse, path + ": line " + std::to_string(line_no) +
                                               ": invalid JSON record");
            }
            if (!record.contains("headline") || !record.contains("category")) {
                throw_error(Status::parse, path + ": line " + std::to_string(line_no) +
                                               ": record lacks headline/category fields");
            }
            add(lowercase(record["category"].get<std::string>()),
                record["headline"].get<std::string>());
        } while (std::getline(in, line));
    } else {
        auto header = split_csv_row(line);
        int headline_col = -1, category_col = -1;
        for (std::size_t i = 0; i < header.size(); ++i) {
            std::string name = lowercase(header[i]);
            if (name == "headline") headline_col = static_cast<int>(i);
            if (name == "category") category_col = static_cast<int>(i);
        }
        if (headline_col < 0 || category_col < 0) {
            throw_error(Status::parse, path + ": CSV header must name headline and category columns");
        }
        int line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto fields = split_csv_row(line);
            if (static_cast<int>(fields.size()) <= std::max(headline_col, category_col)) {
                throw_error(Status::parse, path + ": line " + std::to_string(line_no) +
                                               ": too few CSV fields");
            }
            add(lowercase(fields[category_col]), fields[headline_col]);
        }
    }
    return split;
}

Dataset synthetic_corpus(const SyntheticSpec& spec) {
    if (spec.num_classes < 1 || spec.texts_per_class < 1 || spec.text_length < 1) {
        throw_error(Status::argument, "synthetic corpus sizes must be >= 1");
    }
    if (!(spec.separation >= 0.0 && spec.separation <= 1.0)) {
        throw_error(Status::argument, "separation must be in [0, 1]");
    }
    constexpr uint32_t kLetters = 26;
    Dataset dataset;
    dataset.items.reserve(static_cast<std::size_t>(spec.num_classes) * spec.texts_per_class);
    for (uint32_t cls = 0; cls < spec.num_classes; ++cls) {
        std::string label = "class" + std::to_string(cls);
        // letter distribution: separation mass on this class's round-robin
        // group, the rest spread uniformly
        std::vector<double> cumulative(kLetters, 0.0);
        uint32_t group_size = kLetters / spec.num_classes + (cls < kLetters % spec.num_classes ? 1 : 0);
        double total = 0.0;
        for (uint32_t l = 0; l < kLetters; ++l) {
            double in_group = (l % spec.num_classes == cls && group_size > 0)
                                  ? spec.separation / group_size
                                  : 0.0;
            total += in_group + (1.0 - spec.separation) / kLetters;
            cumulative[l] = total;
        }
        std::mt19937_64 gen(derive_seed(spec.seed, cls));
        for (uint32_t t = 0; t < spec.texts_per_class; ++t) {
            std::string symbols;
            symbols.reserve(spec.text_length);
            while (symbols.size() < spec.text_length) {
                uint32_t word_len = 3 + static_cast<uint32_t>(gen() % 6);
                for (uint32_t w = 0; w < word_len && symbols.size() < spec.text_length; ++w) {
                    double u = uniform01(gen) * total;
                    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                    uint32_t letter = static_cast<uint32_t>(it - cumulative.begin());
                    if (letter >= kLetters) letter = kLetters - 1;
                    symbols += static_cast<char>('a' + letter);
                }
                if (symbols.size() < spec.text_length) symbols += kSpaceSymbol;
            }
            dataset.items.push_back({label, std::move(symbols)});
        }
    }
    return dataset;
}

PerClassSplit split_per_class(const Dataset& dataset, uint32_t train_per_class) {
    PerClassSplit split;
    std::map<std::string, uint32_t> seen;
    for (const auto& item : dataset.items) {
        uint32_t& count = seen[item.label];
        (count < train_per_class ? split.train : split.test).items.push_back(item);
        ++count;
    }
    return split;
}

}  // namespace sobolhd
