/* sobolhd — Sobol-sequence hypervector generation, correlation-driven
 * sequence selection, and an n-gram hyperdimensional text classifier.
 *
 * C API over opaque handles. Every fallible call returns shd_status;
 * SHD_OK means success, anything else leaves a detail message retrievable
 * with shd_last_error() (thread local). Handles are freed with their
 * matching *_free function; accessors on a valid handle do not fail.
 */

#ifndef SOBOLHD_H
#define SOBOLHD_H

#include <stddef.h>
#include <stdint.h>

#ifdef _WIN32
#define SHD_API __declspec(dllexport)
#else
#define SHD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shd_status {
    SHD_OK = 0,
    SHD_ERR_ARGUMENT,
    SHD_ERR_PARSE,
    SHD_ERR_VALIDATION,
    SHD_ERR_CAPACITY,
    SHD_ERR_DEGENERATE,
    SHD_ERR_IO,
    SHD_ERR_ENCODING,
    SHD_ERR_TRAINING,
    SHD_ERR_INCOMPATIBLE,
    SHD_ERR_INTERNAL
} shd_status;

typedef enum shd_source {
    SHD_SOURCE_SOBOL = 0,
    SHD_SOURCE_LFSR = 1,
    SHD_SOURCE_RANDOM = 2
} shd_source;

/* Mode step of the minimum-of-minima selection (see shd_select). */
typedef enum shd_mode_strategy {
    SHD_MODE_COLUMN = 0,
    SHD_MODE_PREFIX_FREQUENCY = 1
} shd_mode_strategy;

SHD_API const char* shd_status_name(shd_status status);
SHD_API const char* shd_last_error(void);

/* Counter scheme deriving per-symbol / per-trial seeds from one master seed. */
SHD_API uint64_t shd_derive_seed(uint64_t master, uint64_t counter);

/* The 28-symbol alphabet used by the text pipeline: a-z, space, '*'. */
SHD_API const char* shd_default_alphabet(void);

/* ---------- Sobol direction tables and points ---------- */

typedef struct shd_table shd_table;

/* Joe-Kuo format text file: "d s a m_1 .. m_s" per line. max_dimensions
 * caps the table (hard limit 1111; pass 0 for the limit). */
SHD_API shd_status shd_table_open(const char* path, uint32_t max_dimensions, shd_table** out);
/* Table embedded in the library (dimensions 1..1111). */
SHD_API shd_status shd_table_builtin(shd_table** out);
SHD_API uint32_t shd_table_max_dimensions(const shd_table* table);
SHD_API void shd_table_free(shd_table* table);

/* Points skip..skip+count-1 of one dimension (1-based; dimension 1 is the
 * van der Corput sequence). out holds count doubles in [0,1). */
SHD_API shd_status shd_sobol_points(const shd_table* table, uint32_t dim, uint64_t skip,
                                    uint32_t count, double* out);

/* ---------- bipolar hypervector sets ---------- */

typedef struct shd_hvset shd_hvset;

/* Rows 1..count of the Sobol matrix thresholded at t: element j of vector i
 * is +1 when point j of dimension i is below t, else -1. */
SHD_API shd_status shd_hvset_sobol(const shd_table* table, uint32_t count, uint32_t dim, double t,
                                   shd_hvset** out);
/* Maximal-period LFSR source; shared_stream != 0 chunks one LFSR run across
 * vectors instead of seeding one LFSR per vector. */
SHD_API shd_status shd_hvset_lfsr(uint32_t count, uint32_t dim, double t, uint64_t seed,
                                  int shared_stream, shd_hvset** out);
/* Seeded uniform source; element +1 with probability t. */
SHD_API shd_status shd_hvset_random(uint32_t count, uint32_t dim, double t, uint64_t seed,
                                    shd_hvset** out);

SHD_API uint32_t shd_hvset_count(const shd_hvset* set);
SHD_API uint32_t shd_hvset_dim(const shd_hvset* set);
/* out receives dim values of +1 / -1. */
SHD_API shd_status shd_hvset_elements(const shd_hvset* set, uint32_t index, int8_t* out);
SHD_API shd_status shd_hvset_scc(const shd_hvset* set, uint32_t i, uint32_t j, double* out);
SHD_API shd_status shd_hvset_cosine(const shd_hvset* set, uint32_t i, uint32_t j, double* out);
/* Extrema over all unordered distinct pairs. */
SHD_API shd_status shd_hvset_range(const shd_hvset* set, double* min_scc, double* max_scc,
                                   double* min_cos, double* max_cos);
/* Bit-packed set file plus optional JSON sidecar (pass NULL to skip). */
SHD_API shd_status shd_hvset_save(const shd_hvset* set, const char* path, const char* sidecar_json);
SHD_API shd_status shd_hvset_load(const char* path, shd_hvset** out);
SHD_API void shd_hvset_free(shd_hvset* set);

/* Metrics over caller-owned +1/-1 buffers. */
SHD_API shd_status shd_scc(const int8_t* x, const int8_t* y, uint32_t dim, double* out);
SHD_API shd_status shd_cosine(const int8_t* x, const int8_t* y, uint32_t dim, double* out);

/* ---------- uncorrelated sequence selection ---------- */

typedef struct shd_selection shd_selection;

/* Thresholds all table sequences at t, builds the |SCC| distance matrix,
 * ranks columns by sum, and selects the k most mutually uncorrelated
 * sequence indexes by the minimum-of-minima mode step. */
SHD_API shd_status shd_select(const shd_table* table, uint32_t dim, double t, uint32_t k,
                              shd_mode_strategy strategy, shd_selection** out);
SHD_API uint32_t shd_selection_k(const shd_selection* sel);
/* k entries, 1-based sequence indexes. */
SHD_API shd_status shd_selection_indexes(const shd_selection* sel, uint32_t* out);
SHD_API double shd_selection_mean_abs_scc(const shd_selection* sel);
SHD_API double shd_selection_population_mean_abs_scc(const shd_selection* sel);
/* JSON report {D, T, k, indexes, mean_abs_scc, population_mean_abs_scc,
 * timestamp, config}; config_json may be NULL. */
SHD_API shd_status shd_selection_write_report(const shd_selection* sel, const char* path,
                                              const char* config_json);
SHD_API void shd_selection_free(shd_selection* sel);

/* ---------- datasets ---------- */

typedef struct shd_dataset shd_dataset;

/* Normalizes raw text into the 28-symbol alphabet. Writes at most
 * out_capacity bytes including the terminator; *out_length receives the
 * full normalized length. Pass out == NULL to query the length. */
SHD_API shd_status shd_normalize_text(const char* raw, char* out, size_t out_capacity,
                                      size_t* out_length);

/* Directory of <label>.txt files; per_file != 0 loads one item per file
 * instead of one per line. max_items_per_class 0 means unlimited. */
SHD_API shd_status shd_dataset_load_language_dir(const char* dir, int per_file,
                                                 uint32_t max_items_per_class, shd_dataset** out);
/* HuffPost-style JSON-lines ({"headline", "category"}) or CSV with those
 * columns. classes_csv is a comma-separated category filter (NULL or ""
 * accepts everything); the first train_cap rows per class feed the train
 * split and the next test_cap rows the test split. */
SHD_API shd_status shd_dataset_load_headlines(const char* path, const char* classes_csv,
                                              uint32_t train_cap, uint32_t test_cap,
                                              shd_dataset** train_out, shd_dataset** test_out);
/* Deterministic class-biased corpus; separation 1 gives disjoint class
 * letter groups, 0 identical distributions. */
SHD_API shd_status shd_dataset_synthetic(uint32_t classes, uint32_t texts_per_class,
                                         uint32_t text_length, uint64_t seed, double separation,
                                         shd_dataset** out);
SHD_API shd_status shd_dataset_split_per_class(const shd_dataset* set, uint32_t train_per_class,
                                               shd_dataset** train_out, shd_dataset** test_out);
SHD_API shd_status shd_dataset_save_language_dir(const shd_dataset* set, const char* dir);
SHD_API uint32_t shd_dataset_size(const shd_dataset* set);
SHD_API const char* shd_dataset_label(const shd_dataset* set, uint32_t index);
SHD_API const char* shd_dataset_text(const shd_dataset* set, uint32_t index);
SHD_API void shd_dataset_free(shd_dataset* set);

/* ---------- item memory, training, inference ---------- */

typedef struct shd_item_memory shd_item_memory;

/* One hypervector per symbol. table may be NULL for non-sobol sources.
 * sobol_use_selection != 0 assigns the selected uncorrelated sequences in
 * alphabet order; 0 assigns the first K sequences. */
SHD_API shd_status shd_item_memory_build(const shd_table* table, const char* symbols,
                                         shd_source source, uint32_t dim, double t, uint64_t seed,
                                         int sobol_use_selection, shd_mode_strategy strategy,
                                         int lfsr_shared_stream, shd_item_memory** out);
SHD_API uint64_t shd_item_memory_fingerprint(const shd_item_memory* memory);
SHD_API uint32_t shd_item_memory_dim(const shd_item_memory* memory);
SHD_API uint32_t shd_item_memory_count(const shd_item_memory* memory);
/* Sobol sources only: the per-symbol 1-based sequence indexes. */
SHD_API shd_status shd_item_memory_sobol_indexes(const shd_item_memory* memory, uint32_t* out);
/* Pairwise scc/cosine extrema over the symbol vectors. */
SHD_API shd_status shd_item_memory_range(const shd_item_memory* memory, double* min_scc,
                                         double* max_scc, double* min_cos, double* max_cos);
SHD_API void shd_item_memory_free(shd_item_memory* memory);

/* n-gram text encoding: windows of ngram symbols, each symbol rotated by its
 * window position and bound, windows accumulated and sign-thresholded.
 * out receives dim values of +1 / -1. */
SHD_API shd_status shd_encode_text(const shd_item_memory* memory, uint32_t ngram,
                                   const char* symbols, int8_t* out);

typedef struct shd_model shd_model;

/* Single-pass training over the labeled dataset. */
SHD_API shd_status shd_train(const shd_item_memory* memory, uint32_t ngram,
                             const shd_dataset* trainset, shd_model** out);
SHD_API uint32_t shd_model_num_classes(const shd_model* model);
SHD_API const char* shd_model_label(const shd_model* model, uint32_t index);
SHD_API uint32_t shd_model_dim(const shd_model* model);
SHD_API uint32_t shd_model_ngram(const shd_model* model);
/* Rebuilds the item memory this model was trained with (table required for
 * sobol models). */
SHD_API shd_status shd_model_rebuild_item_memory(const shd_model* model, const shd_table* table,
                                                 shd_item_memory** out);
/* class_index_out receives the winning class; scores_or_null, when non-NULL,
 * receives one cosine score per class. */
SHD_API shd_status shd_classify(const shd_model* model, const shd_item_memory* memory,
                                const char* symbols, uint32_t* class_index_out,
                                double* scores_or_null);
/* confusion_or_null, when non-NULL, receives num_classes^2 counts
 * (row = true class, column = predicted). */
SHD_API shd_status shd_evaluate(const shd_model* model, const shd_item_memory* memory,
                                const shd_dataset* testset, double* accuracy,
                                uint32_t* confusion_or_null);
SHD_API shd_status shd_model_save(const shd_model* model, const char* path);
SHD_API shd_status shd_model_load(const char* path, shd_model** out);
SHD_API void shd_model_free(shd_model* model);

/* For each grid threshold: rebuild the item memory (sobol uses the first K
 * sequences), train on trainset, evaluate on validation. accuracies_out
 * receives grid_size values; best_t_out the argmax threshold (ties toward
 * the smaller threshold). */
SHD_API shd_status shd_threshold_sweep(const shd_table* table, const shd_dataset* trainset,
                                       const shd_dataset* validation, shd_source source,
                                       uint32_t dim, uint32_t ngram, uint64_t seed,
                                       int lfsr_shared_stream, const double* grid,
                                       uint32_t grid_size, double* accuracies_out,
                                       double* best_t_out);

#ifdef __cplusplus
}
#endif

#endif /* SOBOLHD_H */
