#include "core/model_io.hpp"

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace sobolhd {

namespace {

constexpr char kSetMagic[4] = {'S', 'H', 'D', 'V'};
constexpr char kModelMagic[4] = {'S', 'H', 'D', 'M'};
constexpr uint32_t kFormatVersion = 1;
constexpr uint32_t kEncodingBitPacked = 1;

void write_bytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void write_u32(std::ostream& out, uint32_t value) {
    unsigned char bytes[4];
    for (int i = 0; i < 4; ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
    write_bytes(out, bytes, 4);
}

void write_u64(std::ostream& out, uint64_t value) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
    write_bytes(out, bytes, 8);
}

void write_i32(std::ostream& out, int32_t value) { write_u32(out, static_cast<uint32_t>(value)); }

void read_bytes(std::istream& in, void* data, std::size_t size, const std::string& path) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw_error(Status::parse, path + ": truncated file");
    }
}

uint32_t read_u32(std::istream& in, const std::string& path) {
    unsigned char bytes[4];
    read_bytes(in, bytes, 4, path);
    uint32_t value = 0;
    for (int i = 0; i < 4; ++i) value |= static_cast<uint32_t>(bytes[i]) << (8 * i);
    return value;
}

uint64_t read_u64(std::istream& in, const std::string& path) {
    unsigned char bytes[8];
    read_bytes(in, bytes, 8, path);
    uint64_t value = 0;
    for (int i = 0; i < 8; ++i) value |= static_cast<uint64_t>(bytes[i]) << (8 * i);
    return value;
}

int32_t read_i32(std::istream& in, const std::string& path) {
    return static_cast<int32_t>(read_u32(in, path));
}

void write_packed(std::ostream& out, const Hypervector& hv) {
    auto words = hv.words();
    const std::size_t bytes = (hv.dim() + 7) / 8;
    for (std::size_t b = 0; b < bytes; ++b) {
        unsigned char byte = static_cast<unsigned char>(words[b / 8] >> ((b % 8) * 8));
        write_bytes(out, &byte, 1);
    }
}

Hypervector read_packed(std::istream& in, uint32_t dim, const std::string& path) {
    const std::size_t bytes = (dim + 7) / 8;
    std::vector<unsigned char> buf(bytes);
    read_bytes(in, buf.data(), bytes, path);
    Hypervector hv(dim);
    for (uint32_t i = 0; i < dim; ++i) {
        if ((buf[i / 8] >> (i % 8)) & 1) hv.set_plus(i);
    }
    uint32_t rem = dim % 8;
    if (rem != 0 && (buf.back() >> rem) != 0) {
        throw_error(Status::validation, path + ": nonzero padding bits in packed vector");
    }
    return hv;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_error(Status::io, "cannot write '" + path + "'");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Status::io, "cannot open '" + path + "'");
    }
    return in;
}

}  // namespace

void save_hypervector_set(const std::string& path, std::span<const Hypervector> vectors,
                          const std::string& sidecar_json) {
    if (vectors.empty()) {
        throw_error(Status::argument, "hypervector set is empty");
    }
    auto out = open_out(path);
    write_bytes(out, kSetMagic, 4);
    write_u32(out, kFormatVersion);
    write_u32(out, kEncodingBitPacked);
    write_u32(out, vectors.front().dim());
    write_u64(out, vectors.size());
    for (const auto& hv : vectors) {
        if (hv.dim() != vectors.front().dim()) {
            throw_error(Status::argument, "hypervector set dimensions differ");
        }
        write_packed(out, hv);
    }
    if (!out) {
        throw_error(Status::io, "write failed for '" + path + "'");
    }
    if (!sidecar_json.empty()) {
        auto sidecar = open_out(path + ".json");
        sidecar << sidecar_json << '\n';
    }
}

HypervectorSet load_hypervector_set(const std::string& path) {
    auto in = open_in(path);
    char magic[4];
    read_bytes(in, magic, 4, path);
    if (std::memcmp(magic, kSetMagic, 4) != 0) {
        throw_error(Status::parse, path + ": not a hypervector set file");
    }
    uint32_t version = read_u32(in, path);
    if (version != kFormatVersion) {
        throw_error(Status::parse, path + ": unsupported version " + std::to_string(version));
    }
    uint32_t encoding = read_u32(in, path);
    if (encoding != kEncodingBitPacked) {
        throw_error(Status::parse, path + ": unsupported encoding " + std::to_string(encoding));
    }
    uint32_t dim = read_u32(in, path);
    uint64_t count = read_u64(in, path);
    if (dim == 0 || count == 0) {
        throw_error(Status::parse, path + ": empty hypervector set");
    }
    HypervectorSet set;
    set.vectors.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        set.vectors.push_back(read_packed(in, dim, path));
    }
    std::string sidecar_path = path + ".json";
    if (std::filesystem::exists(sidecar_path)) {
        std::ifstream sidecar(sidecar_path);
        std::ostringstream buf;
        buf << sidecar.rdbuf();
        set.sidecar_json = buf.str();
    }
    return set;
}

void save_model(const std::string& path, const ClassModel& model) {
    nlohmann::json header{
        {"labels", model.labels},
        {"dim", model.config.dim},
        {"ngram", model.config.ngram},
        {"t", model.config.threshold},
        {"source", source_name(model.spec.source)},
        {"item_memory_fingerprint", model.item_memory_fingerprint},
        {"symbols", model.symbols},
        {"seed", model.spec.seed},
        {"sobol_selected", model.spec.sobol_selected},
        {"strategy", model.spec.strategy == ModeStrategy::column_mode ? "column-mode" : "prefix-frequency"},
        {"lfsr_shared_stream", model.spec.lfsr_shared_stream},
        {"sobol_indexes", model.sobol_indexes},
    };
    std::string header_text = header.dump();
    auto out = open_out(path);
    write_bytes(out, kModelMagic, 4);
    write_u32(out, kFormatVersion);
    write_u64(out, header_text.size());
    write_bytes(out, header_text.data(), header_text.size());
    for (std::size_t c = 0; c < model.labels.size(); ++c) {
        write_packed(out, model.class_vectors[c]);
        for (int32_t sum : model.accumulators[c].sums) {
            write_i32(out, sum);
        }
    }
    if (!out) {
        throw_error(Status::io, "write failed for '" + path + "'");
    }
}

ClassModel load_model(const std::string& path) {
    auto in = open_in(path);
    char magic[4];
    read_bytes(in, magic, 4, path);
    if (std::memcmp(magic, kModelMagic, 4) != 0) {
        throw_error(Status::parse, path + ": not a model file");
    }
    uint32_t version = read_u32(in, path);
    if (version != kFormatVersion) {
        throw_error(Status::parse, path + ": unsupported version " + std::to_string(version));
    }
    uint64_t header_size = read_u64(in, path);
    std::string header_text(header_size, '\0');
    read_bytes(in, header_text.data(), header_size, path);
    nlohmann::json header = nlohmann::json::parse(header_text, nullptr, false);
    if (header.is_discarded()) {
        throw_error(Status::parse, path + ": invalid JSON header");
    }

    ClassModel model;
    model.labels = header.at("labels").get<std::vector<std::string>>();
    model.config.dim = header.at("dim").get<uint32_t>();
    model.config.ngram = header.at("ngram").get<uint32_t>();
    model.config.threshold = header.at("t").get<double>();
    model.item_memory_fingerprint = header.at("item_memory_fingerprint").get<uint64_t>();
    model.symbols = header.at("symbols").get<std::string>();
    model.spec.source = source_from_name(header.at("source").get<std::string>());
    model.spec.seed = header.at("seed").get<uint64_t>();
    model.spec.sobol_selected = header.at("sobol_selected").get<bool>();
    model.spec.strategy = header.at("strategy").get<std::string>() == "prefix-frequency"
                              ? ModeStrategy::prefix_frequency
                              : ModeStrategy::column_mode;
    model.spec.lfsr_shared_stream = header.at("lfsr_shared_stream").get<bool>();
    model.sobol_indexes = header.at("sobol_indexes").get<std::vector<uint32_t>>();

    for (std::size_t c = 0; c < model.labels.size(); ++c) {
        model.class_vectors.push_back(read_packed(in, model.config.dim, path));
        Accumulator acc(model.config.dim);
        for (uint32_t i = 0; i < model.config.dim; ++i) {
            acc.sums[i] = read_i32(in, path);
        }
        model.accumulators.push_back(std::move(acc));
    }
    return model;
}

void write_selection_report(const std::string& path, const SelectionResult& result,
                            const SelectionStats& stats, uint32_t dim,
                            const std::string& config_json) {
    nlohmann::json report{
        {"D", dim},
        {"T", result.threshold},
        {"k", result.k},
        {"indexes", result.indexes},
        {"mean_abs_scc", stats.mean_abs_scc},
        {"population_mean_abs_scc", stats.population_mean_abs_scc},
        {"timestamp", iso8601_now()},
    };
    if (!config_json.empty()) {
        nlohmann::json config = nlohmann::json::parse(config_json, nullptr, false);
        report["config"] = config.is_discarded() ? nlohmann::json(config_json) : config;
    }
    auto out = open_out(path);
    out << report.dump(2) << '\n';
}

}  // namespace sobolhd
