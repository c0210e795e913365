#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/hypervector.hpp"
#include "core/sobol.hpp"

namespace sobolhd {

// Symmetric matrix of |SCC| over all hypervector pairs; diagonal is 1.
struct DistanceMatrix {
    uint32_t n = 0;
    std::vector<double> values;            // row-major n x n
    std::vector<uint8_t> degenerate;       // per-vector: constant input flag
    bool any_degenerate = false;

    double at(uint32_t i, uint32_t j) const {
        return values[static_cast<std::size_t>(i) * n + j];
    }
};

DistanceMatrix distance_matrix(std::span<const Hypervector> hvs);

// Column sums (diagonal included) sorted ascending; idxs hold the original
// 1-based sequence indexes, ties broken toward the smaller index.
struct RankedColumns {
    std::vector<double> vals;
    std::vector<uint32_t> idxs;
};

RankedColumns rank_by_column_sum(const DistanceMatrix& dm);

// How the final mode step of the minimum-of-minima pass reads its K sorted
// neighbor-index rows; see min_of_minima.
enum class ModeStrategy {
    // Walk rank positions left to right; at each position take the most
    // frequent index across the K rows (ties toward the smaller index) and
    // keep first-seen ones until K unique indexes are collected.
    column_mode,
    // Count index frequencies over the first-K prefix of every row; order by
    // frequency, then earliest appearance, then index.
    prefix_frequency,
};

struct SelectionResult {
    std::vector<uint32_t> indexes;  // K unique 1-based sequence indexes
    double threshold = 0.0;
    uint32_t k = 0;
};

// Top-k ranked columns each contribute their distance row sorted ascending
// (self index excluded); the concatenated index rows are reduced by mode to
// the K most repetitive neighbor indexes. Runs short of K unique candidates
// are filled from the ranked column order.
SelectionResult min_of_minima(const RankedColumns& ranked, const DistanceMatrix& dm, uint32_t k,
                              ModeStrategy strategy = ModeStrategy::column_mode);

struct SelectionStats {
    double mean_abs_scc = 0.0;             // over the selected subset's pairs
    double population_mean_abs_scc = 0.0;  // over all off-diagonal pairs
};

SelectionStats selection_stats(const DistanceMatrix& dm, std::span<const uint32_t> indexes);

// Full pipeline: sobol_matrix -> threshold -> distance matrix -> ranking ->
// minimum of minima. Deterministic. Raises a degenerate-input error when the
// threshold produces constant vectors (T in {0,1}).
SelectionResult select_sobol_hypervectors(const DirectionTable& table, uint32_t dim, double threshold,
                                          uint32_t k,
                                          ModeStrategy strategy = ModeStrategy::column_mode,
                                          SelectionStats* stats = nullptr);

}  // namespace sobolhd
