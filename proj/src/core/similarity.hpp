#pragma once

#include <cstdint>
#include <span>

#include "core/hypervector.hpp"

namespace sobolhd {

// Contingency counts over element pairs: a = (+1,+1), b = (+1,-1),
// c = (-1,+1), d = (-1,-1); a+b+c+d = dim.
struct OverlapCounts {
    uint32_t a = 0, b = 0, c = 0, d = 0;
    uint32_t dim = 0;
};

OverlapCounts overlap_counts(const Hypervector& x, const Hypervector& y);

struct SccValue {
    double value = 0.0;
    bool degenerate = false;  // zero denominator (a constant vector involved)
};

// Stochastic cross-correlation, exact integer arithmetic until the final
// division:
//   ad > bc:  (ad-bc) / (dim*min(a+b, a+c) - (a+b)(a+c))
//   else:     (ad-bc) / ((a+b)(a+c) - dim*max(a-d, 0))
// A zero selected denominator means a constant vector; the pair is flagged
// degenerate and valued 0 so it cannot poison a distance matrix with NaN.
SccValue scc_from_counts(const OverlapCounts& counts);
double scc(const Hypervector& x, const Hypervector& y);

// For bipolar vectors, dot(x,y)/(|x||y|) reduces to (a+d-b-c)/dim.
double cosine(const Hypervector& x, const Hypervector& y);

// Cosine over signed integer vectors (e.g. raw accumulators), for diagnostics.
double cosine_int(std::span<const int32_t> x, std::span<const int32_t> y);

struct SimilarityRange {
    double min_scc = 0.0, max_scc = 0.0;
    double min_cos = 0.0, max_cos = 0.0;
};

// Extrema of scc and cosine over all unordered distinct pairs (self-pairs
// excluded).
SimilarityRange scc_range_monitor(std::span<const Hypervector> hvs);

}  // namespace sobolhd
