// extern-C surface over the sobolhd core: opaque handles, status codes,
// thread-local error detail.

#include "sobolhd.h"

#include <cstring>
#include <new>
#include <string>

#include "core/classifier.hpp"
#include "core/corpus.hpp"
#include "core/errors.hpp"
#include "core/lfsr.hpp"
#include "core/model_io.hpp"
#include "core/rng.hpp"
#include "core/selection.hpp"
#include "core/similarity.hpp"
#include "core/sobol.hpp"

using namespace sobolhd;

struct shd_table {
    DirectionTable table;
};

struct shd_hvset {
    std::vector<Hypervector> vectors;
};

struct shd_selection {
    SelectionResult result;
    SelectionStats stats;
    uint32_t dim = 0;
};

struct shd_dataset {
    Dataset dataset;
};

struct shd_item_memory {
    ItemMemory memory;
};

struct shd_model {
    ClassModel model;
};

namespace {

thread_local std::string t_last_error;

shd_status to_status(Status status) {
    switch (status) {
        case Status::ok: return SHD_OK;
        case Status::argument: return SHD_ERR_ARGUMENT;
        case Status::parse: return SHD_ERR_PARSE;
        case Status::validation: return SHD_ERR_VALIDATION;
        case Status::capacity: return SHD_ERR_CAPACITY;
        case Status::degenerate: return SHD_ERR_DEGENERATE;
        case Status::io: return SHD_ERR_IO;
        case Status::encoding: return SHD_ERR_ENCODING;
        case Status::training: return SHD_ERR_TRAINING;
        case Status::incompatible: return SHD_ERR_INCOMPATIBLE;
        case Status::internal: return SHD_ERR_INTERNAL;
    }
    return SHD_ERR_INTERNAL;
}

template <typename Fn>
shd_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return SHD_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return to_status(e.status());
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return SHD_ERR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SHD_ERR_INTERNAL;
    }
}

shd_status require(bool condition, const char* message) {
    if (condition) return SHD_OK;
    t_last_error = message;
    return SHD_ERR_ARGUMENT;
}

GeneratorSpec make_spec(shd_source source, uint64_t seed, int sobol_use_selection,
                        shd_mode_strategy strategy, int lfsr_shared_stream) {
    GeneratorSpec spec;
    spec.source = source == SHD_SOURCE_SOBOL   ? Source::sobol
                  : source == SHD_SOURCE_LFSR ? Source::lfsr
                                              : Source::random;
    spec.seed = seed;
    spec.sobol_selected = sobol_use_selection != 0;
    spec.strategy = strategy == SHD_MODE_PREFIX_FREQUENCY ? ModeStrategy::prefix_frequency
                                                          : ModeStrategy::column_mode;
    spec.lfsr_shared_stream = lfsr_shared_stream != 0;
    return spec;
}

Hypervector hv_from_buffer(const int8_t* data, uint32_t dim) {
    return Hypervector(std::span<const int8_t>(data, dim));
}

void hv_to_buffer(const Hypervector& hv, int8_t* out) {
    for (uint32_t i = 0; i < hv.dim(); ++i) out[i] = hv.element(i);
}

void fill_range(const SimilarityRange& range, double* min_scc, double* max_scc, double* min_cos,
                double* max_cos) {
    if (min_scc) *min_scc = range.min_scc;
    if (max_scc) *max_scc = range.max_scc;
    if (min_cos) *min_cos = range.min_cos;
    if (max_cos) *max_cos = range.max_cos;
}

}  // namespace

extern "C" {

const char* shd_status_name(shd_status status) {
    switch (status) {
        case SHD_OK: return "ok";
        case SHD_ERR_ARGUMENT: return "argument";
        case SHD_ERR_PARSE: return "parse";
        case SHD_ERR_VALIDATION: return "validation";
        case SHD_ERR_CAPACITY: return "capacity";
        case SHD_ERR_DEGENERATE: return "degenerate";
        case SHD_ERR_IO: return "io";
        case SHD_ERR_ENCODING: return "encoding";
        case SHD_ERR_TRAINING: return "training";
        case SHD_ERR_INCOMPATIBLE: return "incompatible";
        case SHD_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* shd_last_error(void) { return t_last_error.c_str(); }

uint64_t shd_derive_seed(uint64_t master, uint64_t counter) { return derive_seed(master, counter); }

const char* shd_default_alphabet(void) {
    static const std::string alphabet{kAlphabet};
    return alphabet.c_str();
}

/* ---------- tables ---------- */

shd_status shd_table_open(const char* path, uint32_t max_dimensions, shd_table** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] {
        uint32_t cap = max_dimensions == 0 ? DirectionTable::kMaxSupportedDimensions : max_dimensions;
        *out = new shd_table{DirectionTable::parse_file(path, cap)};
    });
}

shd_status shd_table_builtin(shd_table** out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] { *out = new shd_table{DirectionTable::builtin()}; });
}

uint32_t shd_table_max_dimensions(const shd_table* table) { return table->table.max_dimensions(); }

void shd_table_free(shd_table* table) { delete table; }

shd_status shd_sobol_points(const shd_table* table, uint32_t dim, uint64_t skip, uint32_t count,
                            double* out) {
    if (auto s = require(table && out, "table and out must be non-null")) return s;
    return guarded([&] {
        auto points = sobol_dimension(table->table, dim, count, skip);
        std::memcpy(out, points.data(), points.size() * sizeof(double));
    });
}

/* ---------- hypervector sets ---------- */

shd_status shd_hvset_sobol(const shd_table* table, uint32_t count, uint32_t dim, double t,
                           shd_hvset** out) {
    if (auto s = require(table && out, "table and out must be non-null")) return s;
    return guarded([&] {
        auto matrix = sobol_matrix(table->table, count, dim);
        *out = new shd_hvset{generate_sobol_hypervectors(matrix, t)};
    });
}

shd_status shd_hvset_lfsr(uint32_t count, uint32_t dim, double t, uint64_t seed, int shared_stream,
                          shd_hvset** out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        if (count == 0) throw_error(Status::argument, "count must be >= 1");
        *out = new shd_hvset{lfsr_hypervectors(count, dim, t, seed, shared_stream != 0)};
    });
}

shd_status shd_hvset_random(uint32_t count, uint32_t dim, double t, uint64_t seed, shd_hvset** out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        if (count == 0) throw_error(Status::argument, "count must be >= 1");
        std::vector<Hypervector> vectors;
        vectors.reserve(count);
        for (uint32_t i = 0; i < count; ++i) {
            vectors.push_back(random_hypervector(dim, t, derive_seed(seed, i)));
        }
        *out = new shd_hvset{std::move(vectors)};
    });
}

uint32_t shd_hvset_count(const shd_hvset* set) { return static_cast<uint32_t>(set->vectors.size()); }

uint32_t shd_hvset_dim(const shd_hvset* set) { return set->vectors.front().dim(); }

shd_status shd_hvset_elements(const shd_hvset* set, uint32_t index, int8_t* out) {
    if (auto s = require(set && out, "set and out must be non-null")) return s;
    if (auto s = require(index < set->vectors.size(), "vector index out of range")) return s;
    hv_to_buffer(set->vectors[index], out);
    return SHD_OK;
}

shd_status shd_hvset_scc(const shd_hvset* set, uint32_t i, uint32_t j, double* out) {
    if (auto s = require(set && out, "set and out must be non-null")) return s;
    if (auto s = require(i < set->vectors.size() && j < set->vectors.size(), "index out of range"))
        return s;
    return guarded([&] { *out = scc(set->vectors[i], set->vectors[j]); });
}

shd_status shd_hvset_cosine(const shd_hvset* set, uint32_t i, uint32_t j, double* out) {
    if (auto s = require(set && out, "set and out must be non-null")) return s;
    if (auto s = require(i < set->vectors.size() && j < set->vectors.size(), "index out of range"))
        return s;
    return guarded([&] { *out = cosine(set->vectors[i], set->vectors[j]); });
}

shd_status shd_hvset_range(const shd_hvset* set, double* min_scc, double* max_scc, double* min_cos,
                           double* max_cos) {
    if (auto s = require(set != nullptr, "set must be non-null")) return s;
    return guarded([&] { fill_range(scc_range_monitor(set->vectors), min_scc, max_scc, min_cos, max_cos); });
}

shd_status shd_hvset_save(const shd_hvset* set, const char* path, const char* sidecar_json) {
    if (auto s = require(set && path, "set and path must be non-null")) return s;
    return guarded([&] {
        save_hypervector_set(path, set->vectors, sidecar_json ? sidecar_json : "");
    });
}

shd_status shd_hvset_load(const char* path, shd_hvset** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new shd_hvset{load_hypervector_set(path).vectors}; });
}

void shd_hvset_free(shd_hvset* set) { delete set; }

shd_status shd_scc(const int8_t* x, const int8_t* y, uint32_t dim, double* out) {
    if (auto s = require(x && y && out, "x, y, and out must be non-null")) return s;
    return guarded([&] { *out = scc(hv_from_buffer(x, dim), hv_from_buffer(y, dim)); });
}

shd_status shd_cosine(const int8_t* x, const int8_t* y, uint32_t dim, double* out) {
    if (auto s = require(x && y && out, "x, y, and out must be non-null")) return s;
    return guarded([&] { *out = cosine(hv_from_buffer(x, dim), hv_from_buffer(y, dim)); });
}

/* ---------- selection ---------- */

shd_status shd_select(const shd_table* table, uint32_t dim, double t, uint32_t k,
                      shd_mode_strategy strategy, shd_selection** out) {
    if (auto s = require(table && out, "table and out must be non-null")) return s;
    return guarded([&] {
        auto* sel = new shd_selection;
        sel->dim = dim;
        sel->result = select_sobol_hypervectors(table->table, dim, t, k,
                                                strategy == SHD_MODE_PREFIX_FREQUENCY
                                                    ? ModeStrategy::prefix_frequency
                                                    : ModeStrategy::column_mode,
                                                &sel->stats);
        *out = sel;
    });
}

uint32_t shd_selection_k(const shd_selection* sel) { return sel->result.k; }

shd_status shd_selection_indexes(const shd_selection* sel, uint32_t* out) {
    if (auto s = require(sel && out, "selection and out must be non-null")) return s;
    std::memcpy(out, sel->result.indexes.data(), sel->result.indexes.size() * sizeof(uint32_t));
    return SHD_OK;
}

double shd_selection_mean_abs_scc(const shd_selection* sel) { return sel->stats.mean_abs_scc; }

double shd_selection_population_mean_abs_scc(const shd_selection* sel) {
    return sel->stats.population_mean_abs_scc;
}

shd_status shd_selection_write_report(const shd_selection* sel, const char* path,
                                      const char* config_json) {
    if (auto s = require(sel && path, "selection and path must be non-null")) return s;
    return guarded([&] {
        write_selection_report(path, sel->result, sel->stats, sel->dim,
                               config_json ? config_json : "");
    });
}

void shd_selection_free(shd_selection* sel) { delete sel; }

/* ---------- datasets ---------- */

shd_status shd_normalize_text(const char* raw, char* out, size_t out_capacity, size_t* out_length) {
    if (auto s = require(raw != nullptr, "raw must be non-null")) return s;
    return guarded([&] {
        std::string normalized = normalize_text(raw);
        if (out_length) *out_length = normalized.size();
        if (out == nullptr) return;
        if (out_capacity < normalized.size() + 1) {
            throw_error(Status::argument, "output buffer too small for normalized text");
        }
        std::memcpy(out, normalized.c_str(), normalized.size() + 1);
    });
}

shd_status shd_dataset_load_language_dir(const char* dir, int per_file, uint32_t max_items_per_class,
                                         shd_dataset** out) {
    if (auto s = require(dir && out, "dir and out must be non-null")) return s;
    return guarded([&] {
        LanguageLoadOptions options;
        options.per_file = per_file != 0;
        options.max_items_per_class = max_items_per_class;
        *out = new shd_dataset{load_language_corpus(dir, options)};
    });
}

shd_status shd_dataset_load_headlines(const char* path, const char* classes_csv, uint32_t train_cap,
                                      uint32_t test_cap, shd_dataset** train_out,
                                      shd_dataset** test_out) {
    if (auto s = require(path && train_out && test_out, "path and outputs must be non-null")) return s;
    return guarded([&] {
        HeadlineLoadOptions options;
        options.train_cap = train_cap;
        options.test_cap = test_cap;
        if (classes_csv != nullptr && *classes_csv != '\0') {
            std::string_view rest(classes_csv);
            while (!rest.empty()) {
                auto comma = rest.find(',');
                options.classes.emplace_back(rest.substr(0, comma));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        }
        auto split = load_headline_csv(path, options);
        *train_out = new shd_dataset{std::move(split.train)};
        *test_out = new shd_dataset{std::move(split.test)};
    });
}

shd_status shd_dataset_synthetic(uint32_t classes, uint32_t texts_per_class, uint32_t text_length,
                                 uint64_t seed, double separation, shd_dataset** out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        *out = new shd_dataset{synthetic_corpus({classes, texts_per_class, text_length, seed, separation})};
    });
}

shd_status shd_dataset_split_per_class(const shd_dataset* set, uint32_t train_per_class,
                                       shd_dataset** train_out, shd_dataset** test_out) {
    if (auto s = require(set && train_out && test_out, "set and outputs must be non-null")) return s;
    return guarded([&] {
        auto split = split_per_class(set->dataset, train_per_class);
        *train_out = new shd_dataset{std::move(split.train)};
        *test_out = new shd_dataset{std::move(split.test)};
    });
}

shd_status shd_dataset_save_language_dir(const shd_dataset* set, const char* dir) {
    if (auto s = require(set && dir, "set and dir must be non-null")) return s;
    return guarded([&] { save_language_corpus(set->dataset, dir); });
}

uint32_t shd_dataset_size(const shd_dataset* set) {
    return static_cast<uint32_t>(set->dataset.items.size());
}

const char* shd_dataset_label(const shd_dataset* set, uint32_t index) {
    return set->dataset.items[index].label.c_str();
}

const char* shd_dataset_text(const shd_dataset* set, uint32_t index) {
    return set->dataset.items[index].symbols.c_str();
}

void shd_dataset_free(shd_dataset* set) { delete set; }

/* ---------- item memory / model ---------- */

shd_status shd_item_memory_build(const shd_table* table, const char* symbols, shd_source source,
                                 uint32_t dim, double t, uint64_t seed, int sobol_use_selection,
                                 shd_mode_strategy strategy, int lfsr_shared_stream,
                                 shd_item_memory** out) {
    if (auto s = require(symbols && out, "symbols and out must be non-null")) return s;
    return guarded([&] {
        GeneratorSpec spec = make_spec(source, seed, sobol_use_selection, strategy, lfsr_shared_stream);
        EncoderConfig config{1, dim, t};
        *out = new shd_item_memory{
            build_item_memory(table ? &table->table : nullptr, symbols, spec, config)};
    });
}

uint64_t shd_item_memory_fingerprint(const shd_item_memory* memory) {
    return memory->memory.fingerprint();
}

uint32_t shd_item_memory_dim(const shd_item_memory* memory) { return memory->memory.dim; }

uint32_t shd_item_memory_count(const shd_item_memory* memory) {
    return static_cast<uint32_t>(memory->memory.vectors.size());
}

shd_status shd_item_memory_sobol_indexes(const shd_item_memory* memory, uint32_t* out) {
    if (auto s = require(memory && out, "memory and out must be non-null")) return s;
    if (auto s = require(!memory->memory.sobol_indexes.empty(), "item memory has no sobol indexes"))
        return s;
    std::memcpy(out, memory->memory.sobol_indexes.data(),
                memory->memory.sobol_indexes.size() * sizeof(uint32_t));
    return SHD_OK;
}

shd_status shd_item_memory_range(const shd_item_memory* memory, double* min_scc, double* max_scc,
                                 double* min_cos, double* max_cos) {
    if (auto s = require(memory != nullptr, "memory must be non-null")) return s;
    return guarded([&] {
        fill_range(scc_range_monitor(memory->memory.vectors), min_scc, max_scc, min_cos, max_cos);
    });
}

void shd_item_memory_free(shd_item_memory* memory) { delete memory; }

shd_status shd_encode_text(const shd_item_memory* memory, uint32_t ngram, const char* symbols,
                           int8_t* out) {
    if (auto s = require(memory && symbols && out, "memory, symbols, and out must be non-null"))
        return s;
    return guarded([&] {
        EncoderConfig config{ngram, memory->memory.dim, memory->memory.threshold};
        hv_to_buffer(encode_text(symbols, memory->memory, config), out);
    });
}

shd_status shd_train(const shd_item_memory* memory, uint32_t ngram, const shd_dataset* trainset,
                     shd_model** out) {
    if (auto s = require(memory && trainset && out, "memory, trainset, and out must be non-null"))
        return s;
    return guarded([&] {
        EncoderConfig config{ngram, memory->memory.dim, memory->memory.threshold};
        *out = new shd_model{train(trainset->dataset.items, memory->memory, config)};
    });
}

uint32_t shd_model_num_classes(const shd_model* model) {
    return static_cast<uint32_t>(model->model.labels.size());
}

const char* shd_model_label(const shd_model* model, uint32_t index) {
    return model->model.labels[index].c_str();
}

uint32_t shd_model_dim(const shd_model* model) { return model->model.config.dim; }

uint32_t shd_model_ngram(const shd_model* model) { return model->model.config.ngram; }

shd_status shd_model_rebuild_item_memory(const shd_model* model, const shd_table* table,
                                         shd_item_memory** out) {
    if (auto s = require(model && out, "model and out must be non-null")) return s;
    return guarded([&] {
        *out = new shd_item_memory{
            rebuild_item_memory(table ? &table->table : nullptr, model->model)};
    });
}

shd_status shd_classify(const shd_model* model, const shd_item_memory* memory, const char* symbols,
                        uint32_t* class_index_out, double* scores_or_null) {
    if (auto s = require(model && memory && symbols && class_index_out,
                         "model, memory, symbols, and class_index_out must be non-null"))
        return s;
    return guarded([&] {
        Classification result = classify(symbols, model->model, memory->memory);
        for (uint32_t c = 0; c < model->model.labels.size(); ++c) {
            if (model->model.labels[c] == result.label) {
                *class_index_out = c;
                break;
            }
        }
        if (scores_or_null != nullptr) {
            std::memcpy(scores_or_null, result.scores.data(), result.scores.size() * sizeof(double));
        }
    });
}

shd_status shd_evaluate(const shd_model* model, const shd_item_memory* memory,
                        const shd_dataset* testset, double* accuracy, uint32_t* confusion_or_null) {
    if (auto s = require(model && memory && testset && accuracy,
                         "model, memory, testset, and accuracy must be non-null"))
        return s;
    return guarded([&] {
        Evaluation eval = evaluate(testset->dataset.items, model->model, memory->memory);
        *accuracy = eval.accuracy;
        if (confusion_or_null != nullptr) {
            std::memcpy(confusion_or_null, eval.confusion.data(),
                        eval.confusion.size() * sizeof(uint32_t));
        }
    });
}

shd_status shd_model_save(const shd_model* model, const char* path) {
    if (auto s = require(model && path, "model and path must be non-null")) return s;
    return guarded([&] { save_model(path, model->model); });
}

shd_status shd_model_load(const char* path, shd_model** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new shd_model{load_model(path)}; });
}

void shd_model_free(shd_model* model) { delete model; }

shd_status shd_threshold_sweep(const shd_table* table, const shd_dataset* trainset,
                               const shd_dataset* validation, shd_source source, uint32_t dim,
                               uint32_t ngram, uint64_t seed, int lfsr_shared_stream,
                               const double* grid, uint32_t grid_size, double* accuracies_out,
                               double* best_t_out) {
    if (auto s = require(trainset && validation && grid && accuracies_out && best_t_out,
                         "datasets, grid, and outputs must be non-null"))
        return s;
    return guarded([&] {
        GeneratorSpec spec = make_spec(source, seed, 0, SHD_MODE_COLUMN, lfsr_shared_stream);
        SweepResult result = threshold_sweep(trainset->dataset.items, validation->dataset.items,
                                             table ? &table->table : nullptr, spec, dim, ngram,
                                             std::span<const double>(grid, grid_size));
        for (uint32_t i = 0; i < grid_size; ++i) {
            accuracies_out[i] = result.points[i].accuracy;
        }
        *best_t_out = result.best_threshold;
    });
}

}  // extern "C"
