#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sobolhd {

// One line of a Joe-Kuo style direction-number file: the degree-s primitive
// polynomial x^s + a_1 x^(s-1) + ... + a_(s-1) x + 1 (interior coefficients
// packed in `poly_coeffs`, most significant first) and the s odd initial
// values m_k < 2^k.
struct DirectionEntry {
    uint32_t dimension = 0;  // >= 2; dimension 1 is the implicit van der Corput dimension
    uint32_t degree = 0;
    uint32_t poly_coeffs = 0;
    std::vector<uint32_t> initial_m;

    void validate() const;
};

class DirectionTable {
public:
    static constexpr uint32_t kMaxSupportedDimensions = 1111;

    // Text format: whitespace-separated "d s a m_1 .. m_s" per line, `#`
    // comments ignored, a single header line tolerated. Entries beyond
    // `max_dimensions` are ignored.
    static DirectionTable parse_file(const std::string& path,
                                     uint32_t max_dimensions = kMaxSupportedDimensions);
    static DirectionTable parse_text(std::string_view text,
                                     uint32_t max_dimensions = kMaxSupportedDimensions,
                                     std::string_view source_name = "<memory>");

    // Table shipped with the library (dimensions 2..1111).
    static const DirectionTable& builtin();

    uint32_t max_dimensions() const { return max_dimensions_; }

    // dim in [2, max_dimensions]
    const DirectionEntry& entry(uint32_t dim) const;

private:
    std::vector<DirectionEntry> entries_;  // entries_[i] = dimension i + 2
    uint32_t max_dimensions_ = 1;
};

// Direction numbers v_k = m_k / 2^k for k = 1..count, as exact 52-fractional-
// bit fixed point values (value = fixed / 2^52). count <= 52.
std::vector<uint64_t> direction_numbers_fixed(const DirectionEntry& entry, int count);
std::vector<uint64_t> van_der_corput_directions_fixed(int count);

// Same values as real numbers in (0,1). Exact: every v_k fits a double.
std::vector<double> direction_numbers(const DirectionEntry& entry, int count);

struct SobolMatrix {
    uint32_t num_sequences = 0;
    uint32_t num_points = 0;
    std::vector<double> values;  // row-major, row = dimension

    std::span<const double> row(uint32_t i) const {
        return {values.data() + static_cast<std::size_t>(i) * num_points, num_points};
    }
};

// Points x_skip .. x_(skip+num_points-1) of one dimension, natural index
// order; x_0 = 0. All values in [0,1), exact in double.
std::vector<double> sobol_dimension(const DirectionTable& table, uint32_t dim,
                                    uint32_t num_points, uint64_t skip = 0);

// Rows 1..num_sequences, each row = sobol_dimension(table, row, num_points, skip).
SobolMatrix sobol_matrix(const DirectionTable& table, uint32_t num_sequences,
                         uint32_t num_points, uint64_t skip = 0);

}  // namespace sobolhd
