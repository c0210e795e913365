#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sobolhd {

// Bipolar vector over {+1,-1}, stored bit-packed: bit 1 = +1, bit 0 = -1,
// element j = bit (j % 64) of word (j / 64). Bits at positions >= dim are
// kept zero so popcount kernels can run over whole words.
class Hypervector {
public:
    Hypervector() = default;
    explicit Hypervector(uint32_t dim);                       // all -1
    explicit Hypervector(std::span<const int8_t> elements);   // from +1/-1 values

    uint32_t dim() const { return dim_; }
    std::span<const uint64_t> words() const { return words_; }

    int8_t element(uint32_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1 ? int8_t{1} : int8_t{-1};
    }
    void set_plus(uint32_t i) { words_[i >> 6] |= 1ull << (i & 63); }

    // Number of +1 elements.
    uint32_t popcount() const;
    bool constant() const { uint32_t p = popcount(); return p == 0 || p == dim_; }

    std::vector<int8_t> to_elements() const;

    bool operator==(const Hypervector& other) const = default;

private:
    friend Hypervector bind(const Hypervector&, const Hypervector&);
    friend Hypervector negate(const Hypervector&);
    friend Hypervector rotate(const Hypervector&, uint64_t);

    void clear_tail();

    uint32_t dim_ = 0;
    std::vector<uint64_t> words_;
};

// element[j] = -1 when threshold <= sequence[j], else +1; P(+1) ~ threshold.
Hypervector threshold_encode(std::span<const double> sequence, double threshold);

struct SobolMatrix;
std::vector<Hypervector> generate_sobol_hypervectors(const SobolMatrix& matrix, double threshold);

// Each element independently +1 with probability `threshold`; deterministic
// per seed (mt19937_64 with fixed bit extraction).
Hypervector random_hypervector(uint32_t dim, double threshold, uint64_t seed);

// Circular right rotation: element i moves to (i + k) % dim.
Hypervector rotate(const Hypervector& hv, uint64_t k);

// Element-wise product over {+1,-1} (XNOR in the bit domain).
Hypervector bind(const Hypervector& x, const Hypervector& y);

Hypervector negate(const Hypervector& hv);

struct Accumulator {
    uint32_t dim = 0;
    std::vector<int32_t> sums;

    Accumulator() = default;
    explicit Accumulator(uint32_t d) : dim(d), sums(d, 0) {}

    void add(const Hypervector& hv);
};

Accumulator accumulate(std::span<const Hypervector> vectors);

// +1 where sum > 0, -1 where sum < 0, +1 at the zero tie.
Hypervector sign_threshold(const Accumulator& acc);

}  // namespace sobolhd
