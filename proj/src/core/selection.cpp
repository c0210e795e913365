#include "core/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/similarity.hpp"

namespace sobolhd {

DistanceMatrix distance_matrix(std::span<const Hypervector> hvs) {
    const std::size_t n = hvs.size();
    if (n < 2) {
        throw_error(Status::argument, "distance_matrix requires at least two hypervectors");
    }
    for (const auto& hv : hvs) {
        if (hv.dim() != hvs.front().dim()) {
            throw_error(Status::argument, "distance_matrix dimension mismatch");
        }
    }
    DistanceMatrix dm;
    dm.n = static_cast<uint32_t>(n);
    dm.values.assign(n * n, 0.0);
    dm.degenerate.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (hvs[i].constant()) {
            dm.degenerate[i] = 1;
            dm.any_degenerate = true;
        }
        dm.values[i * n + i] = 1.0;
    }
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = std::fabs(scc_from_counts(overlap_counts(hvs[i], hvs[j])).value);
                dm.values[i * n + j] = v;
                dm.values[j * n + i] = v;
            }
        }
    });
    return dm;
}

RankedColumns rank_by_column_sum(const DistanceMatrix& dm) {
    const uint32_t n = dm.n;
    std::vector<double> sums(n, 0.0);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            sums[j] += dm.at(i, j);
        }
    }
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&sums](uint32_t a, uint32_t b) { return sums[a] < sums[b]; });
    RankedColumns ranked;
    ranked.vals.reserve(n);
    ranked.idxs.reserve(n);
    for (uint32_t col : order) {
        ranked.vals.push_back(sums[col]);
        ranked.idxs.push_back(col + 1);
    }
    return ranked;
}

namespace {

// Distance row of `col` sorted ascending (ties toward the smaller index),
// self excluded; entries are 1-based sequence indexes.
std::vector<uint32_t> sorted_neighbor_row(const DistanceMatrix& dm, uint32_t col) {
    std::vector<uint32_t> order(dm.n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&dm, col](uint32_t a, uint32_t b) {
        return dm.at(col, a) < dm.at(col, b);
    });
    std::vector<uint32_t> row;
    row.reserve(dm.n - 1);
    for (uint32_t j : order) {
        if (j != col) row.push_back(j + 1);
    }
    return row;
}

void fill_from_ranked(const RankedColumns& ranked, uint32_t k, std::vector<uint32_t>& result,
                      std::unordered_set<uint32_t>& taken) {
    for (uint32_t idx : ranked.idxs) {
        if (result.size() == k) break;
        if (taken.insert(idx).second) result.push_back(idx);
    }
}

std::vector<uint32_t> mode_column_wise(const std::vector<std::vector<uint32_t>>& rows,
                                       const RankedColumns& ranked, uint32_t n, uint32_t k) {
    std::vector<uint32_t> result;
    std::unordered_set<uint32_t> taken;
    std::vector<uint32_t> counts(n + 1, 0);
    const std::size_t positions = rows.front().size();
    for (std::size_t p = 0; p < positions && result.size() < k; ++p) {
        // rank position p holds every row's p-th nearest neighbor; emit its
        // distinct indexes by repetition count, smaller index on ties
        std::vector<uint32_t> distinct;
        for (const auto& row : rows) {
            if (counts[row[p]]++ == 0) distinct.push_back(row[p]);
        }
        std::sort(distinct.begin(), distinct.end(), [&counts](uint32_t a, uint32_t b) {
            if (counts[a] != counts[b]) return counts[a] > counts[b];
            return a < b;
        });
        for (uint32_t idx : distinct) {
            if (result.size() < k && taken.insert(idx).second) result.push_back(idx);
        }
        for (const auto& row : rows) counts[row[p]] = 0;
    }
    fill_from_ranked(ranked, k, result, taken);
    return result;
}

std::vector<uint32_t> mode_prefix_frequency(const std::vector<std::vector<uint32_t>>& rows,
                                            const RankedColumns& ranked, uint32_t n, uint32_t k) {
    // Frequency over the first-k prefix of each row; earliest concatenated
    // appearance breaks frequency ties, then the smaller index.
    const std::size_t prefix = std::min<std::size_t>(k, rows.front().size());
    std::vector<uint32_t> freq(n + 1, 0);
    std::vector<std::size_t> first_pos(n + 1, SIZE_MAX);
    std::size_t pos = 0;
    for (const auto& row : rows) {
        for (std::size_t p = 0; p < prefix; ++p, ++pos) {
            uint32_t idx = row[p];
            ++freq[idx];
            first_pos[idx] = std::min(first_pos[idx], pos);
        }
    }
    std::vector<uint32_t> candidates;
    for (uint32_t idx = 1; idx <= n; ++idx) {
        if (freq[idx] > 0) candidates.push_back(idx);
    }
    std::sort(candidates.begin(), candidates.end(), [&](uint32_t a, uint32_t b) {
        if (freq[a] != freq[b]) return freq[a] > freq[b];
        if (first_pos[a] != first_pos[b]) return first_pos[a] < first_pos[b];
        return a < b;
    });
    std::vector<uint32_t> result;
    std::unordered_set<uint32_t> taken;
    for (uint32_t idx : candidates) {
        if (result.size() == k) break;
        if (taken.insert(idx).second) result.push_back(idx);
    }
    fill_from_ranked(ranked, k, result, taken);
    return result;
}

}  // namespace

SelectionResult min_of_minima(const RankedColumns& ranked, const DistanceMatrix& dm, uint32_t k,
                              ModeStrategy strategy) {
    if (k < 2 || k > dm.n) {
        throw_error(Status::argument, "selection size k must be in [2, " + std::to_string(dm.n) + "]");
    }
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(k);
    for (uint32_t r = 0; r < k; ++r) {
        rows.push_back(sorted_neighbor_row(dm, ranked.idxs[r] - 1));
    }
    SelectionResult result;
    result.k = k;
    result.threshold = std::numeric_limits<double>::quiet_NaN();
    result.indexes = strategy == ModeStrategy::column_mode
                         ? mode_column_wise(rows, ranked, dm.n, k)
                         : mode_prefix_frequency(rows, ranked, dm.n, k);
    return result;
}

SelectionStats selection_stats(const DistanceMatrix& dm, std::span<const uint32_t> indexes) {
    SelectionStats stats;
    double total = 0.0;
    for (uint32_t i = 0; i < dm.n; ++i) {
        for (uint32_t j = i + 1; j < dm.n; ++j) {
            total += dm.at(i, j);
        }
    }
    stats.population_mean_abs_scc = total / (0.5 * dm.n * (dm.n - 1));
    double sel = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < indexes.size(); ++i) {
        for (std::size_t j = i + 1; j < indexes.size(); ++j) {
            sel += dm.at(indexes[i] - 1, indexes[j] - 1);
            ++pairs;
        }
    }
    stats.mean_abs_scc = pairs == 0 ? 0.0 : sel / static_cast<double>(pairs);
    return stats;
}

SelectionResult select_sobol_hypervectors(const DirectionTable& table, uint32_t dim, double threshold,
                                          uint32_t k, ModeStrategy strategy, SelectionStats* stats) {
    if (dim < 16) {
        throw_error(Status::argument, "selection requires dim >= 16");
    }
    if (k > DirectionTable::kMaxSupportedDimensions) {
        throw_error(Status::capacity, "selection size k exceeds the " +
                                          std::to_string(DirectionTable::kMaxSupportedDimensions) +
                                          "-sequence capacity");
    }
    auto matrix = sobol_matrix(table, table.max_dimensions(), dim);
    auto hvs = generate_sobol_hypervectors(matrix, threshold);
    auto dm = distance_matrix(hvs);
    if (dm.any_degenerate) {
        throw_error(Status::degenerate,
                    "threshold " + std::to_string(threshold) + " produces constant hypervectors");
    }
    auto ranked = rank_by_column_sum(dm);
    SelectionResult result = min_of_minima(ranked, dm, k, strategy);
    result.threshold = threshold;
    if (stats != nullptr) {
        *stats = selection_stats(dm, result.indexes);
    }
    return result;
}

}  // namespace sobolhd
