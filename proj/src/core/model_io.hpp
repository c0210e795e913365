#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/hypervector.hpp"
#include "core/selection.hpp"

namespace sobolhd {

// Hypervector set file: "SHDV" magic, u32 version, u32 encoding (1 =
// bit-packed), u32 dim, u64 count, then ceil(dim/8) bytes per vector
// (bit 1 = +1, LSB-first), row-major. A JSON sidecar at <path>.json records
// the generator parameters.
void save_hypervector_set(const std::string& path, std::span<const Hypervector> vectors,
                          const std::string& sidecar_json);

struct HypervectorSet {
    std::vector<Hypervector> vectors;
    std::optional<std::string> sidecar_json;
};

HypervectorSet load_hypervector_set(const std::string& path);

// Model file: "SHDM" magic, u32 version, u64 header length, JSON header
// {labels, dim, ngram, t, source, item_memory_fingerprint, rebuild
// parameters}, then per class the bit-packed class vector followed by dim
// little-endian int32 accumulator sums.
void save_model(const std::string& path, const ClassModel& model);
ClassModel load_model(const std::string& path);

// Selection report: JSON {D, T, k, indexes, mean_abs_scc,
// population_mean_abs_scc, timestamp, config}.
void write_selection_report(const std::string& path, const SelectionResult& result,
                            const SelectionStats& stats, uint32_t dim,
                            const std::string& config_json);

}  // namespace sobolhd
