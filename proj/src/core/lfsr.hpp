#pragma once

#include <cstdint>
#include <vector>

namespace sobolhd {

struct LfsrConfig {
    uint32_t width = 0;   // w >= 2, state in [1, 2^w - 1]
    uint32_t taps = 0;    // feedback mask over state bits (bit w-e per polynomial term x^e)
    uint64_t seed = 0;    // nonzero

    void validate() const;
};

// Known maximal-period feedback mask for widths 2..24 (exhaustively
// period-checked for w <= 16 in the test suite).
uint32_t maximal_taps_for_width(uint32_t width);

// Smallest width whose state space covers dim: ceil(log2(dim)), clamped to [2, 24].
uint32_t lfsr_width_for_dim(uint32_t dim);

// Fibonacci stepping: feedback = parity(state & taps),
// state' = (state >> 1) | (feedback << (w-1)). Output t = state_t / 2^w with
// state_0 = seed, so a maximal configuration emits each nonzero state once
// per 2^w - 1 steps.
class Lfsr {
public:
    explicit Lfsr(const LfsrConfig& config);

    uint64_t state() const { return state_; }
    double value() const;
    void step();

private:
    uint32_t width_;
    uint32_t taps_;
    uint64_t state_;
};

std::vector<double> lfsr_sequence(const LfsrConfig& config, uint32_t count);

}  // namespace sobolhd
