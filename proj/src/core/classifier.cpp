#include "core/classifier.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>

#include "core/errors.hpp"
#include "core/lfsr.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/similarity.hpp"

namespace sobolhd {

std::string_view source_name(Source source) {
    switch (source) {
        case Source::sobol: return "sobol";
        case Source::lfsr: return "lfsr";
        case Source::random: return "random";
    }
    return "unknown";
}

Source source_from_name(std::string_view name) {
    if (name == "sobol") return Source::sobol;
    if (name == "lfsr") return Source::lfsr;
    if (name == "random") return Source::random;
    throw_error(Status::argument, "unknown hypervector source '" + std::string(name) + "'");
}

void EncoderConfig::validate() const {
    if (ngram < 1) {
        throw_error(Status::argument, "ngram size must be >= 1");
    }
    if (dim < 16) {
        throw_error(Status::argument, "hypervector dimension must be >= 16");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw_error(Status::argument, "threshold must be in [0, 1]");
    }
}

uint32_t ItemMemory::symbol_index(char symbol) const {
    auto pos = symbols.find(symbol);
    if (pos == std::string::npos) {
        throw_error(Status::encoding,
                    "symbol '" + std::string(1, symbol) + "' is not in the item memory alphabet");
    }
    return static_cast<uint32_t>(pos);
}

uint64_t ItemMemory::fingerprint() const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto absorb = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    absorb(symbols.data(), symbols.size());
    absorb(&dim, sizeof(dim));
    absorb(&threshold, sizeof(threshold));
    auto src = static_cast<uint32_t>(source);
    absorb(&src, sizeof(src));
    for (const auto& hv : vectors) {
        auto words = hv.words();
        absorb(words.data(), words.size_bytes());
    }
    return h;
}

namespace {

uint64_t lfsr_seed_from(uint64_t master, uint64_t counter, uint32_t width) {
    return derive_seed(master, counter) % ((1ull << width) - 1) + 1;
}

}  // namespace

std::vector<Hypervector> lfsr_hypervectors(std::size_t count, uint32_t dim, double threshold,
                                           uint64_t master_seed, bool shared_stream) {
    uint32_t width = lfsr_width_for_dim(dim);
    uint32_t taps = maximal_taps_for_width(width);
    std::vector<Hypervector> vectors;
    vectors.reserve(count);
    if (shared_stream) {
        LfsrConfig lc{width, taps, lfsr_seed_from(master_seed, 0, width)};
        auto stream = lfsr_sequence(lc, static_cast<uint32_t>(count * dim));
        for (std::size_t s = 0; s < count; ++s) {
            std::span<const double> chunk(stream.data() + s * dim, dim);
            vectors.push_back(threshold_encode(chunk, threshold));
        }
    } else {
        for (std::size_t s = 0; s < count; ++s) {
            LfsrConfig lc{width, taps, lfsr_seed_from(master_seed, s, width)};
            vectors.push_back(threshold_encode(lfsr_sequence(lc, dim), threshold));
        }
    }
    return vectors;
}

ItemMemory build_item_memory(const DirectionTable* table, std::string_view symbols,
                             const GeneratorSpec& spec, const EncoderConfig& config) {
    config.validate();
    if (symbols.empty()) {
        throw_error(Status::argument, "item memory alphabet is empty");
    }
    ItemMemory memory;
    memory.symbols = std::string(symbols);
    memory.dim = config.dim;
    memory.threshold = config.threshold;
    memory.source = spec.source;
    memory.spec = spec;
    const auto count = symbols.size();

    switch (spec.source) {
        case Source::sobol: {
            if (table == nullptr) {
                throw_error(Status::argument, "sobol source requires a direction table");
            }
            if (count > table->max_dimensions()) {
                throw_error(Status::capacity, "alphabet needs " + std::to_string(count) +
                                                  " sequences, table provides " +
                                                  std::to_string(table->max_dimensions()));
            }
            if (spec.sobol_selected) {
                auto selection = select_sobol_hypervectors(*table, config.dim, config.threshold,
                                                           static_cast<uint32_t>(count), spec.strategy);
                memory.sobol_indexes = selection.indexes;
            } else {
                memory.sobol_indexes.resize(count);
                for (std::size_t s = 0; s < count; ++s) {
                    memory.sobol_indexes[s] = static_cast<uint32_t>(s + 1);
                }
            }
            if (config.threshold == 0.0 || config.threshold == 1.0) {
                throw_error(Status::degenerate, "threshold " + std::to_string(config.threshold) +
                                                    " produces constant hypervectors");
            }
            memory.vectors.reserve(count);
            for (uint32_t index : memory.sobol_indexes) {
                auto points = sobol_dimension(*table, index, config.dim);
                memory.vectors.push_back(threshold_encode(points, config.threshold));
            }
            break;
        }
        case Source::lfsr:
            memory.vectors = lfsr_hypervectors(count, config.dim, config.threshold, spec.seed,
                                               spec.lfsr_shared_stream);
            break;
        case Source::random:
            memory.vectors.reserve(count);
            for (std::size_t s = 0; s < count; ++s) {
                memory.vectors.push_back(
                    random_hypervector(config.dim, config.threshold, derive_seed(spec.seed, s)));
            }
            break;
    }
    return memory;
}

ItemMemory rebuild_item_memory(const DirectionTable* table, const ClassModel& model) {
    EncoderConfig config = model.config;
    if (model.spec.source != Source::sobol) {
        return build_item_memory(table, model.symbols, model.spec, config);
    }
    if (table == nullptr) {
        throw_error(Status::argument, "rebuilding a sobol item memory requires a direction table");
    }
    ItemMemory memory;
    memory.symbols = model.symbols;
    memory.dim = config.dim;
    memory.threshold = config.threshold;
    memory.source = Source::sobol;
    memory.spec = model.spec;
    memory.sobol_indexes = model.sobol_indexes;
    memory.vectors.reserve(model.sobol_indexes.size());
    for (uint32_t index : model.sobol_indexes) {
        memory.vectors.push_back(
            threshold_encode(sobol_dimension(*table, index, config.dim), config.threshold));
    }
    return memory;
}

namespace {

// Item memory with every symbol pre-rotated for each window position.
class NgramEncoder {
public:
    NgramEncoder(const ItemMemory& memory, uint32_t ngram) : memory_(memory), ngram_(ngram) {
        rotated_.resize(ngram);
        for (uint32_t p = 0; p < ngram; ++p) {
            rotated_[p].reserve(memory.vectors.size());
            for (const auto& hv : memory.vectors) {
                rotated_[p].push_back(rotate(hv, p));
            }
        }
    }

    Hypervector encode_text(std::string_view symbols) const {
        if (symbols.size() < ngram_) {
            throw_error(Status::encoding, "text of length " + std::to_string(symbols.size()) +
                                              " is shorter than the ngram size " +
                                              std::to_string(ngram_));
        }
        std::vector<uint32_t> ids(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            ids[i] = memory_.symbol_index(symbols[i]);
        }
        Accumulator acc(memory_.dim);
        const std::size_t windows = symbols.size() - ngram_ + 1;
        for (std::size_t w = 0; w < windows; ++w) {
            Hypervector gram = rotated_[0][ids[w]];
            for (uint32_t p = 1; p < ngram_; ++p) {
                gram = bind(gram, rotated_[p][ids[w + p]]);
            }
            acc.add(gram);
        }
        return sign_threshold(acc);
    }

private:
    const ItemMemory& memory_;
    uint32_t ngram_;
    std::vector<std::vector<Hypervector>> rotated_;
};

std::vector<Hypervector> encode_all(const NgramEncoder& encoder, std::span<const LabeledText> items) {
    std::vector<Hypervector> encoded(items.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(items.size(), [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) {
                encoded[i] = encoder.encode_text(items[i].symbols);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return encoded;
}

}  // namespace

Hypervector encode_ngram(std::string_view gram, const ItemMemory& memory) {
    if (gram.empty()) {
        throw_error(Status::argument, "ngram is empty");
    }
    Hypervector out = memory.vectors[memory.symbol_index(gram[0])];
    for (std::size_t p = 1; p < gram.size(); ++p) {
        out = bind(out, rotate(memory.vectors[memory.symbol_index(gram[p])], p));
    }
    return out;
}

Hypervector encode_text(std::string_view symbols, const ItemMemory& memory,
                        const EncoderConfig& config) {
    return NgramEncoder(memory, config.ngram).encode_text(symbols);
}

ClassModel train(std::span<const LabeledText> dataset, const ItemMemory& memory,
                 const EncoderConfig& config) {
    config.validate();
    if (dataset.empty()) {
        throw_error(Status::training, "training dataset is empty");
    }
    ClassModel model;
    model.config = config;
    model.item_memory_fingerprint = memory.fingerprint();
    model.spec = memory.spec;
    model.symbols = memory.symbols;
    model.sobol_indexes = memory.sobol_indexes;

    std::map<std::string, uint32_t> class_ids;
    for (const auto& item : dataset) {
        if (class_ids.emplace(item.label, static_cast<uint32_t>(model.labels.size())).second) {
            model.labels.push_back(item.label);
            model.accumulators.emplace_back(memory.dim);
        }
    }

    NgramEncoder encoder(memory, config.ngram);
    constexpr std::size_t kChunk = 4096;
    for (std::size_t start = 0; start < dataset.size(); start += kChunk) {
        auto chunk = dataset.subspan(start, std::min(kChunk, dataset.size() - start));
        auto encoded = encode_all(encoder, chunk);
        for (std::size_t i = 0; i < chunk.size(); ++i) {
            model.accumulators[class_ids[chunk[i].label]].add(encoded[i]);
        }
    }
    model.class_vectors.reserve(model.labels.size());
    for (const auto& acc : model.accumulators) {
        model.class_vectors.push_back(sign_threshold(acc));
    }
    return model;
}

namespace {

void check_fingerprint(const ClassModel& model, const ItemMemory& memory) {
    if (model.item_memory_fingerprint != memory.fingerprint()) {
        throw_error(Status::incompatible,
                    "item memory does not match the one this model was trained with");
    }
}

uint32_t argmax_class(std::span<const double> scores) {
    uint32_t best = 0;
    for (uint32_t c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) best = c;  // ties keep the earlier label
    }
    return best;
}

}  // namespace

Classification classify(std::string_view symbols, const ClassModel& model, const ItemMemory& memory,
                        bool raw_accumulators) {
    check_fingerprint(model, memory);
    Hypervector query = encode_text(symbols, memory, model.config);
    Classification result;
    result.scores.reserve(model.labels.size());
    if (raw_accumulators) {
        auto query_elements = query.to_elements();
        std::vector<int32_t> query_int(query_elements.begin(), query_elements.end());
        for (const auto& acc : model.accumulators) {
            result.scores.push_back(cosine_int(query_int, acc.sums));
        }
    } else {
        for (const auto& cls : model.class_vectors) {
            result.scores.push_back(cosine(query, cls));
        }
    }
    result.label = model.labels[argmax_class(result.scores)];
    return result;
}

Evaluation evaluate(std::span<const LabeledText> testset, const ClassModel& model,
                    const ItemMemory& memory) {
    check_fingerprint(model, memory);
    if (testset.empty()) {
        throw_error(Status::argument, "test set is empty");
    }
    std::map<std::string, uint32_t> class_ids;
    for (uint32_t c = 0; c < model.labels.size(); ++c) {
        class_ids[model.labels[c]] = c;
    }
    std::vector<uint32_t> truth(testset.size());
    for (std::size_t i = 0; i < testset.size(); ++i) {
        auto it = class_ids.find(testset[i].label);
        if (it == class_ids.end()) {
            throw_error(Status::argument,
                        "test label '" + testset[i].label + "' is not in the trained model");
        }
        truth[i] = it->second;
    }

    NgramEncoder encoder(memory, model.config.ngram);
    const auto classes = static_cast<uint32_t>(model.labels.size());
    Evaluation eval;
    eval.confusion.assign(static_cast<std::size_t>(classes) * classes, 0);
    eval.total = static_cast<uint32_t>(testset.size());

    std::vector<uint32_t> predicted(testset.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(testset.size(), [&](std::size_t begin, std::size_t end) {
        try {
            std::vector<double> scores(classes);
            for (std::size_t i = begin; i < end; ++i) {
                Hypervector query = encoder.encode_text(testset[i].symbols);
                for (uint32_t c = 0; c < classes; ++c) {
                    scores[c] = cosine(query, model.class_vectors[c]);
                }
                predicted[i] = argmax_class(scores);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < testset.size(); ++i) {
        eval.confusion[static_cast<std::size_t>(truth[i]) * classes + predicted[i]] += 1;
        if (truth[i] == predicted[i]) eval.correct += 1;
    }
    eval.accuracy = static_cast<double>(eval.correct) / eval.total;
    return eval;
}

SweepResult threshold_sweep(std::span<const LabeledText> train_set,
                            std::span<const LabeledText> validation_set,
                            const DirectionTable* table, const GeneratorSpec& spec,
                            uint32_t dim, uint32_t ngram, std::span<const double> grid,
                            std::string_view symbols) {
    if (grid.empty()) {
        throw_error(Status::argument, "threshold grid is empty");
    }
    for (double t : grid) {
        if (!(t > 0.0 && t < 1.0)) {
            throw_error(Status::argument, "grid thresholds must lie strictly inside (0, 1)");
        }
    }
    GeneratorSpec sweep_spec = spec;
    sweep_spec.sobol_selected = false;  // pre-analysis runs on the first-K sequences
    SweepResult result;
    result.points.reserve(grid.size());
    for (double t : grid) {
        EncoderConfig config{ngram, dim, t};
        ItemMemory memory = build_item_memory(table, symbols, sweep_spec, config);
        ClassModel model = train(train_set, memory, config);
        Evaluation eval = evaluate(validation_set, model, memory);
        result.points.push_back({t, eval.accuracy});
        if (result.points.size() == 1 || eval.accuracy > result.best_accuracy) {
            result.best_threshold = t;
            result.best_accuracy = eval.accuracy;
        }
    }
    return result;
}

}  // namespace sobolhd
