#include "core/hypervector.hpp"

#include <bit>
#include <random>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/sobol.hpp"

namespace sobolhd {

namespace {

std::size_t word_count(uint32_t dim) { return (static_cast<std::size_t>(dim) + 63) / 64; }

void check_same_dim(const Hypervector& x, const Hypervector& y) {
    if (x.dim() != y.dim()) {
        throw_error(Status::argument, "hypervector dimension mismatch: " + std::to_string(x.dim()) +
                                          " vs " + std::to_string(y.dim()));
    }
}

}  // namespace

Hypervector::Hypervector(uint32_t dim) : dim_(dim), words_(word_count(dim), 0) {
    if (dim < 1) {
        throw_error(Status::argument, "hypervector dimension must be >= 1");
    }
}

Hypervector::Hypervector(std::span<const int8_t> elements)
    : Hypervector(static_cast<uint32_t>(elements.size())) {
    for (uint32_t i = 0; i < dim_; ++i) {
        if (elements[i] == 1) {
            set_plus(i);
        } else if (elements[i] != -1) {
            throw_error(Status::argument, "hypervector elements must be +1 or -1");
        }
    }
}

void Hypervector::clear_tail() {
    uint32_t rem = dim_ & 63;
    if (rem != 0) {
        words_.back() &= (1ull << rem) - 1;
    }
}

uint32_t Hypervector::popcount() const {
    uint32_t n = 0;
    for (uint64_t w : words_) n += static_cast<uint32_t>(std::popcount(w));
    return n;
}

std::vector<int8_t> Hypervector::to_elements() const {
    std::vector<int8_t> out(dim_);
    for (uint32_t i = 0; i < dim_; ++i) out[i] = element(i);
    return out;
}

Hypervector threshold_encode(std::span<const double> sequence, double threshold) {
    if (sequence.empty()) {
        throw_error(Status::argument, "threshold_encode requires a nonempty sequence");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw_error(Status::argument, "threshold must be in [0, 1]");
    }
    Hypervector hv(static_cast<uint32_t>(sequence.size()));
    for (uint32_t i = 0; i < hv.dim(); ++i) {
        if (sequence[i] < threshold) hv.set_plus(i);
    }
    return hv;
}

std::vector<Hypervector> generate_sobol_hypervectors(const SobolMatrix& matrix, double threshold) {
    if (matrix.num_sequences == 0 || matrix.num_points == 0) {
        throw_error(Status::argument, "empty Sobol matrix");
    }
    std::vector<Hypervector> out;
    out.reserve(matrix.num_sequences);
    for (uint32_t i = 0; i < matrix.num_sequences; ++i) {
        out.push_back(threshold_encode(matrix.row(i), threshold));
    }
    return out;
}

Hypervector random_hypervector(uint32_t dim, double threshold, uint64_t seed) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw_error(Status::argument, "threshold must be in [0, 1]");
    }
    Hypervector hv(dim);
    std::mt19937_64 gen(seed);
    for (uint32_t i = 0; i < dim; ++i) {
        if (uniform01(gen) < threshold) hv.set_plus(i);
    }
    return hv;
}

Hypervector rotate(const Hypervector& hv, uint64_t k) {
    const uint32_t dim = hv.dim();
    k %= dim;
    if (k == 0) return hv;
    Hypervector out(dim);
    // out = (hv << k | hv >> (dim - k)) over a dim-bit register
    const auto& src = hv.words_;
    auto& dst = out.words_;
    for (uint32_t i = 0; i < dim; ++i) {
        uint32_t j = i + static_cast<uint32_t>(k);
        if (j >= dim) j -= dim;
        dst[j >> 6] |= ((src[i >> 6] >> (i & 63)) & 1ull) << (j & 63);
    }
    return out;
}

Hypervector bind(const Hypervector& x, const Hypervector& y) {
    check_same_dim(x, y);
    Hypervector out(x.dim());
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = ~(x.words_[w] ^ y.words_[w]);
    }
    out.clear_tail();
    return out;
}

Hypervector negate(const Hypervector& hv) {
    Hypervector out(hv.dim());
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = ~hv.words_[w];
    }
    out.clear_tail();
    return out;
}

void Accumulator::add(const Hypervector& hv) {
    if (hv.dim() != dim) {
        throw_error(Status::argument, "accumulator dimension mismatch");
    }
    auto words = hv.words();
    for (uint32_t i = 0; i < dim; ++i) {
        sums[i] += static_cast<int32_t>((words[i >> 6] >> (i & 63)) & 1ull) * 2 - 1;
    }
}

Accumulator accumulate(std::span<const Hypervector> vectors) {
    if (vectors.empty()) {
        throw_error(Status::argument, "accumulate requires at least one hypervector");
    }
    Accumulator acc(vectors.front().dim());
    for (const auto& hv : vectors) acc.add(hv);
    return acc;
}

Hypervector sign_threshold(const Accumulator& acc) {
    Hypervector hv(acc.dim);
    for (uint32_t i = 0; i < acc.dim; ++i) {
        if (acc.sums[i] >= 0) hv.set_plus(i);
    }
    return hv;
}

}  // namespace sobolhd
