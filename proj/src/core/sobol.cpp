#include "core/sobol.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace sobolhd {

namespace {

constexpr int kFractionBits = 52;
constexpr double kScale = 1.0 / 4503599627370496.0;  // 2^-52

bool is_integer_token(std::string_view tok) {
    if (tok.empty()) return false;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

uint32_t parse_u32(std::string_view tok, int line_no, std::string_view source) {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw_error(Status::parse, std::string(source) + ": line " + std::to_string(line_no) +
                                       ": expected unsigned integer, got '" + std::string(tok) + "'");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

void DirectionEntry::validate() const {
    if (dimension < 2) {
        throw_error(Status::validation, "direction entry dimension must be >= 2");
    }
    if (degree < 1) {
        throw_error(Status::validation, "dimension " + std::to_string(dimension) + ": degree must be >= 1");
    }
    if (degree > 1 && poly_coeffs >= (1u << (degree - 1))) {
        throw_error(Status::validation, "dimension " + std::to_string(dimension) +
                                            ": polynomial coefficients exceed degree - 1 bits");
    }
    if (degree == 1 && poly_coeffs != 0) {
        throw_error(Status::validation, "dimension " + std::to_string(dimension) +
                                            ": degree-1 polynomial has no interior coefficients");
    }
    if (initial_m.size() != degree) {
        throw_error(Status::validation, "dimension " + std::to_string(dimension) + ": expected " +
                                            std::to_string(degree) + " initial m values, got " +
                                            std::to_string(initial_m.size()));
    }
    for (std::size_t k = 0; k < initial_m.size(); ++k) {
        uint32_t m = initial_m[k];
        if (m % 2 == 0) {
            throw_error(Status::validation, "dimension " + std::to_string(dimension) + ": m_" +
                                                std::to_string(k + 1) + " = " + std::to_string(m) +
                                                " is even");
        }
        if (m >= (1u << (k + 1))) {
            throw_error(Status::validation, "dimension " + std::to_string(dimension) + ": m_" +
                                                std::to_string(k + 1) + " = " + std::to_string(m) +
                                                " is not < 2^" + std::to_string(k + 1));
        }
    }
}

DirectionTable DirectionTable::parse_text(std::string_view text, uint32_t max_dimensions,
                                          std::string_view source_name) {
    if (max_dimensions < 1 || max_dimensions > kMaxSupportedDimensions) {
        throw_error(Status::argument, "max_dimensions must be in [1, " +
                                          std::to_string(kMaxSupportedDimensions) + "]");
    }
    DirectionTable table;
    uint32_t next_dimension = 2;
    bool seen_data = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;
        if (!seen_data && !is_integer_token(tokens[0])) continue;  // header line
        seen_data = true;

        if (tokens.size() < 3) {
            throw_error(Status::parse, std::string(source_name) + ": line " + std::to_string(line_no) +
                                           ": expected 'd s a m_1 .. m_s'");
        }
        DirectionEntry entry;
        entry.dimension = parse_u32(tokens[0], line_no, source_name);
        entry.degree = parse_u32(tokens[1], line_no, source_name);
        entry.poly_coeffs = parse_u32(tokens[2], line_no, source_name);
        if (entry.degree == 0 || tokens.size() != 3 + entry.degree) {
            throw_error(Status::parse, std::string(source_name) + ": line " + std::to_string(line_no) +
                                           ": expected " + std::to_string(entry.degree) +
                                           " m values after 'd s a'");
        }
        entry.initial_m.reserve(entry.degree);
        for (uint32_t k = 0; k < entry.degree; ++k) {
            entry.initial_m.push_back(parse_u32(tokens[3 + k], line_no, source_name));
        }
        if (entry.dimension != next_dimension) {
            throw_error(Status::validation, std::string(source_name) + ": line " +
                                                std::to_string(line_no) + ": expected dimension " +
                                                std::to_string(next_dimension) + ", got " +
                                                std::to_string(entry.dimension));
        }
        entry.validate();
        if (entry.dimension > max_dimensions) {
            ++next_dimension;
            continue;  // past the requested maximum; still counted for contiguity
        }
        table.entries_.push_back(std::move(entry));
        ++next_dimension;
    }
    table.max_dimensions_ = 1 + static_cast<uint32_t>(table.entries_.size());
    return table;
}

DirectionTable DirectionTable::parse_file(const std::string& path, uint32_t max_dimensions) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Status::io, "cannot open direction-number file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), max_dimensions, path);
}

const DirectionEntry& DirectionTable::entry(uint32_t dim) const {
    if (dim < 2 || dim > max_dimensions_) {
        throw_error(Status::argument, "dimension " + std::to_string(dim) + " out of range [2, " +
                                          std::to_string(max_dimensions_) + "]");
    }
    return entries_[dim - 2];
}

std::vector<uint64_t> van_der_corput_directions_fixed(int count) {
    std::vector<uint64_t> v(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) {
        v[k - 1] = 1ull << (kFractionBits - k);
    }
    return v;
}

std::vector<uint64_t> direction_numbers_fixed(const DirectionEntry& entry, int count) {
    if (count < 1) {
        throw_error(Status::argument, "direction-number count must be >= 1");
    }
    if (count > kFractionBits) {
        throw_error(Status::capacity, "direction-number count " + std::to_string(count) +
                                          " exceeds the 52-bit fixed-point precision");
    }
    const uint32_t s = entry.degree;
    std::vector<uint64_t> m(entry.initial_m.begin(), entry.initial_m.end());
    m.resize(static_cast<std::size_t>(std::max<int>(count, s)));
    // m_k = 2 a_1 m_(k-1) ^ 2^2 a_2 m_(k-2) ^ .. ^ 2^(s-1) a_(s-1) m_(k-s+1)
    //       ^ 2^s m_(k-s) ^ m_(k-s)
    for (std::size_t k = s; k < static_cast<std::size_t>(count); ++k) {
        uint64_t value = (m[k - s] << s) ^ m[k - s];
        for (uint32_t i = 1; i < s; ++i) {
            if ((entry.poly_coeffs >> (s - 1 - i)) & 1u) {
                value ^= m[k - i] << i;
            }
        }
        m[k] = value;
    }
    std::vector<uint64_t> v(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) {
        v[k - 1] = m[k - 1] << (kFractionBits - k);  // m_k < 2^k, so this cannot overflow
    }
    return v;
}

std::vector<double> direction_numbers(const DirectionEntry& entry, int count) {
    entry.validate();
    auto fixed = direction_numbers_fixed(entry, count);
    std::vector<double> v(fixed.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        v[i] = static_cast<double>(fixed[i]) * kScale;
    }
    return v;
}

std::vector<double> sobol_dimension(const DirectionTable& table, uint32_t dim,
                                    uint32_t num_points, uint64_t skip) {
    if (dim < 1 || dim > table.max_dimensions()) {
        throw_error(Status::argument, "dimension " + std::to_string(dim) + " out of range [1, " +
                                          std::to_string(table.max_dimensions()) + "]");
    }
    if (num_points < 1) {
        throw_error(Status::argument, "num_points must be >= 1");
    }
    const uint64_t last_index = skip + num_points - 1;
    const int bits = last_index == 0 ? 1 : std::bit_width(last_index);
    if (bits > kFractionBits) {
        throw_error(Status::capacity, "point index " + std::to_string(last_index) +
                                          " exceeds the 2^52 fixed-point range");
    }
    std::vector<uint64_t> v = dim == 1 ? van_der_corput_directions_fixed(bits)
                                       : direction_numbers_fixed(table.entry(dim), bits);
    std::vector<double> out(num_points);
    for (uint32_t t = 0; t < num_points; ++t) {
        uint64_t index = skip + t;
        uint64_t x = 0;
        while (index != 0) {
            int b = std::countr_zero(index);
            x ^= v[b];
            index &= index - 1;
        }
        out[t] = static_cast<double>(x) * kScale;
    }
    return out;
}

SobolMatrix sobol_matrix(const DirectionTable& table, uint32_t num_sequences,
                         uint32_t num_points, uint64_t skip) {
    if (num_sequences < 1) {
        throw_error(Status::argument, "num_sequences must be >= 1");
    }
    if (num_sequences > table.max_dimensions()) {
        throw_error(Status::capacity, "requested " + std::to_string(num_sequences) +
                                          " sequences, but the table provides " +
                                          std::to_string(table.max_dimensions()) +
                                          " (hard cap " +
                                          std::to_string(DirectionTable::kMaxSupportedDimensions) + ")");
    }
    SobolMatrix matrix;
    matrix.num_sequences = num_sequences;
    matrix.num_points = num_points;
    matrix.values.resize(static_cast<std::size_t>(num_sequences) * num_points);
    for (uint32_t i = 0; i < num_sequences; ++i) {
        auto row = sobol_dimension(table, i + 1, num_points, skip);
        std::copy(row.begin(), row.end(),
                  matrix.values.begin() + static_cast<std::size_t>(i) * num_points);
    }
    return matrix;
}

}  // namespace sobolhd
