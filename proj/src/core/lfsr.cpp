#include "core/lfsr.hpp"

#include <bit>
#include <string>

#include "core/errors.hpp"

namespace sobolhd {

namespace {

// Exponents of one maximal-period polynomial per width (x^w + .. + 1).
constexpr uint32_t kMaxTableWidth = 24;
constexpr uint8_t kMaximalExponents[kMaxTableWidth + 1][4] = {
    {}, {},
    {2, 1},            // x^2+x+1
    {3, 2},            // x^3+x^2+1
    {4, 3},            // x^4+x^3+1
    {5, 3},            // x^5+x^3+1
    {6, 5},            // x^6+x^5+1
    {7, 6},            // x^7+x^6+1
    {8, 6, 5, 4},      // x^8+x^6+x^5+x^4+1
    {9, 5},            // x^9+x^5+1
    {10, 7},           // x^10+x^7+1
    {11, 9},           // x^11+x^9+1
    {12, 11, 10, 4},   // x^12+x^11+x^10+x^4+1
    {13, 12, 11, 8},   // x^13+x^12+x^11+x^8+1
    {14, 13, 12, 2},   // x^14+x^13+x^12+x^2+1
    {15, 14},          // x^15+x^14+1
    {16, 15, 13, 4},   // x^16+x^15+x^13+x^4+1
    {17, 14},          // x^17+x^14+1
    {18, 11},          // x^18+x^11+1
    {19, 18, 17, 14},  // x^19+x^18+x^17+x^14+1
    {20, 17},          // x^20+x^17+1
    {21, 19},          // x^21+x^19+1
    {22, 21},          // x^22+x^21+1
    {23, 18},          // x^23+x^18+1
    {24, 23, 22, 17},  // x^24+x^23+x^22+x^17+1
};

}  // namespace

void LfsrConfig::validate() const {
    if (width < 2 || width > kMaxTableWidth) {
        throw_error(Status::argument, "LFSR width must be in [2, " + std::to_string(kMaxTableWidth) + "]");
    }
    if (seed == 0) {
        throw_error(Status::argument, "LFSR seed must be nonzero (zero is the lock-up state)");
    }
    if (seed >= (1ull << width)) {
        throw_error(Status::argument, "LFSR seed must be < 2^width");
    }
    if (taps == 0 || taps >= (1u << width)) {
        throw_error(Status::argument, "LFSR tap mask must be a nonzero width-bit mask");
    }
}

uint32_t maximal_taps_for_width(uint32_t width) {
    if (width < 2 || width > kMaxTableWidth) {
        throw_error(Status::argument, "no maximal tap entry for width " + std::to_string(width));
    }
    uint32_t mask = 0;
    for (uint8_t e : kMaximalExponents[width]) {
        if (e != 0) mask |= 1u << (width - e);
    }
    return mask;
}

uint32_t lfsr_width_for_dim(uint32_t dim) {
    uint32_t width = dim <= 1 ? 1u : static_cast<uint32_t>(std::bit_width(dim - 1));
    if (width < 2) width = 2;
    if (width > kMaxTableWidth) {
        throw_error(Status::capacity, "no maximal LFSR configuration for dimension " + std::to_string(dim));
    }
    return width;
}

Lfsr::Lfsr(const LfsrConfig& config) : width_(config.width), taps_(config.taps), state_(config.seed) {
    config.validate();
}

double Lfsr::value() const {
    return static_cast<double>(state_) / static_cast<double>(1ull << width_);
}

void Lfsr::step() {
    uint64_t feedback = std::popcount(state_ & taps_) & 1ull;
    state_ = (state_ >> 1) | (feedback << (width_ - 1));
}

std::vector<double> lfsr_sequence(const LfsrConfig& config, uint32_t count) {
    if (count < 1) {
        throw_error(Status::argument, "lfsr_sequence count must be >= 1");
    }
    Lfsr lfsr(config);
    std::vector<double> out(count);
    for (uint32_t i = 0; i < count; ++i) {
        out[i] = lfsr.value();
        lfsr.step();
    }
    return out;
}

}  // namespace sobolhd
