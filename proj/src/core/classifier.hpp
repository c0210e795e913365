#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/corpus.hpp"
#include "core/hypervector.hpp"
#include "core/selection.hpp"
#include "core/sobol.hpp"

namespace sobolhd {

enum class Source { sobol, lfsr, random };

std::string_view source_name(Source source);
Source source_from_name(std::string_view name);

struct EncoderConfig {
    uint32_t ngram = 4;
    uint32_t dim = 0;
    double threshold = 0.5;

    void validate() const;  // ngram >= 1, dim >= 16, threshold in [0,1]
};

struct GeneratorSpec {
    Source source = Source::sobol;
    uint64_t seed = 1;                // master seed for lfsr/random symbol streams
    bool sobol_selected = true;       // false: first-K sequences (pre-analysis mode)
    ModeStrategy strategy = ModeStrategy::column_mode;
    bool lfsr_shared_stream = false;  // one LFSR chunked across symbols instead of per-symbol seeds
};

// One hypervector per alphabet symbol, all generated from one source.
struct ItemMemory {
    std::string symbols;
    std::vector<Hypervector> vectors;
    uint32_t dim = 0;
    double threshold = 0.5;
    Source source = Source::sobol;
    GeneratorSpec spec;
    std::vector<uint32_t> sobol_indexes;  // per symbol, when source == sobol

    uint32_t symbol_index(char symbol) const;  // encoding error on unknown symbol
    uint64_t fingerprint() const;
};

// Maximal-period LFSR hypervectors, width matched to dim. Either one LFSR
// per vector (seeds derived from the master) or one shared run chunked
// across vectors.
std::vector<Hypervector> lfsr_hypervectors(std::size_t count, uint32_t dim, double threshold,
                                           uint64_t master_seed, bool shared_stream);

// table may be null for lfsr/random sources.
ItemMemory build_item_memory(const DirectionTable* table, std::string_view symbols,
                             const GeneratorSpec& spec, const EncoderConfig& config);

// Bind of rotate(L_p, p) over gram positions p = 0..n-1 (first symbol
// unrotated).
Hypervector encode_ngram(std::string_view gram, const ItemMemory& memory);

// Slide an ngram window with stride 1, accumulate the window encodings,
// sign-threshold the accumulator.
Hypervector encode_text(std::string_view symbols, const ItemMemory& memory,
                        const EncoderConfig& config);

struct ClassModel {
    std::vector<std::string> labels;        // first-appearance order
    std::vector<Accumulator> accumulators;  // per class
    std::vector<Hypervector> class_vectors; // sign_threshold(accumulators[c])
    EncoderConfig config;
    uint64_t item_memory_fingerprint = 0;
    // enough to rebuild the item memory deterministically
    GeneratorSpec spec;
    std::string symbols;
    std::vector<uint32_t> sobol_indexes;
};

// Single pass: texts are encoded (in parallel), each thresholded text vector
// is added to its class accumulator, class vectors are the accumulator signs.
ClassModel train(std::span<const LabeledText> dataset, const ItemMemory& memory,
                 const EncoderConfig& config);

// Reconstructs the item memory a model was trained with; sobol models reuse
// their stored sequence indexes instead of re-running the selection.
ItemMemory rebuild_item_memory(const DirectionTable* table, const ClassModel& model);

struct Classification {
    std::string label;
    std::vector<double> scores;  // cosine per class, model.labels order
};

// Nearest class by cosine; ties toward the earlier label. With
// raw_accumulators the comparison runs against the un-thresholded integer
// accumulators (diagnostics only).
Classification classify(std::string_view symbols, const ClassModel& model, const ItemMemory& memory,
                        bool raw_accumulators = false);

struct Evaluation {
    double accuracy = 0.0;
    uint32_t total = 0;
    uint32_t correct = 0;
    std::vector<uint32_t> confusion;  // row = true class, column = predicted
};

Evaluation evaluate(std::span<const LabeledText> testset, const ClassModel& model,
                    const ItemMemory& memory);

struct SweepPoint {
    double threshold = 0.0;
    double accuracy = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double best_threshold = 0.0;
    double best_accuracy = 0.0;  // ties resolved toward the smaller threshold
};

// For each grid threshold: rebuild the item memory (sobol uses the first-K
// sequences, matching the pre-analysis protocol), train, evaluate.
SweepResult threshold_sweep(std::span<const LabeledText> train_set,
                            std::span<const LabeledText> validation_set,
                            const DirectionTable* table, const GeneratorSpec& spec,
                            uint32_t dim, uint32_t ngram, std::span<const double> grid,
                            std::string_view symbols = kAlphabet);

}  // namespace sobolhd
