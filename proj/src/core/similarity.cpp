#include "core/similarity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "core/errors.hpp"

namespace sobolhd {

OverlapCounts overlap_counts(const Hypervector& x, const Hypervector& y) {
    if (x.dim() != y.dim()) {
        throw_error(Status::argument, "overlap_counts dimension mismatch");
    }
    auto xw = x.words();
    auto yw = y.words();
    uint32_t agree_plus = 0;   // a
    uint32_t x_plus = 0, y_plus = 0;
    for (std::size_t w = 0; w < xw.size(); ++w) {
        agree_plus += static_cast<uint32_t>(std::popcount(xw[w] & yw[w]));
        x_plus += static_cast<uint32_t>(std::popcount(xw[w]));
        y_plus += static_cast<uint32_t>(std::popcount(yw[w]));
    }
    OverlapCounts counts;
    counts.dim = x.dim();
    counts.a = agree_plus;
    counts.b = x_plus - agree_plus;
    counts.c = y_plus - agree_plus;
    counts.d = counts.dim - counts.a - counts.b - counts.c;
    return counts;
}

SccValue scc_from_counts(const OverlapCounts& counts) {
    const int64_t a = counts.a, b = counts.b, c = counts.c, d = counts.d;
    const int64_t dim = counts.dim;
    const int64_t numerator = a * d - b * c;
    int64_t denominator;
    if (numerator > 0) {  // ad > bc
        denominator = dim * std::min(a + b, a + c) - (a + b) * (a + c);
    } else {
        denominator = (a + b) * (a + c) - dim * std::max<int64_t>(a - d, 0);
    }
    if (denominator == 0) {
        return {0.0, true};
    }
    return {static_cast<double>(numerator) / static_cast<double>(denominator), false};
}

double scc(const Hypervector& x, const Hypervector& y) {
    return scc_from_counts(overlap_counts(x, y)).value;
}

double cosine(const Hypervector& x, const Hypervector& y) {
    OverlapCounts n = overlap_counts(x, y);
    return static_cast<double>(static_cast<int64_t>(n.a) + n.d - n.b - n.c) /
           static_cast<double>(n.dim);
}

double cosine_int(std::span<const int32_t> x, std::span<const int32_t> y) {
    if (x.size() != y.size() || x.empty()) {
        throw_error(Status::argument, "cosine_int requires equal nonempty dimensions");
    }
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += static_cast<double>(x[i]) * y[i];
        nx += static_cast<double>(x[i]) * x[i];
        ny += static_cast<double>(y[i]) * y[i];
    }
    if (nx == 0.0 || ny == 0.0) {
        throw_error(Status::degenerate, "cosine_int is undefined for a zero-norm vector");
    }
    return dot / std::sqrt(nx * ny);
}

SimilarityRange scc_range_monitor(std::span<const Hypervector> hvs) {
    if (hvs.size() < 2) {
        throw_error(Status::argument, "scc_range_monitor requires at least two hypervectors");
    }
    SimilarityRange range{1.0, -1.0, 1.0, -1.0};
    for (std::size_t i = 0; i < hvs.size(); ++i) {
        for (std::size_t j = i + 1; j < hvs.size(); ++j) {
            OverlapCounts n = overlap_counts(hvs[i], hvs[j]);
            double s = scc_from_counts(n).value;
            double cos = static_cast<double>(static_cast<int64_t>(n.a) + n.d - n.b - n.c) /
                         static_cast<double>(n.dim);
            range.min_scc = std::min(range.min_scc, s);
            range.max_scc = std::max(range.max_scc, s);
            range.min_cos = std::min(range.min_cos, cos);
            range.max_cos = std::max(range.max_cos, cos);
        }
    }
    return range;
}

}  // namespace sobolhd
