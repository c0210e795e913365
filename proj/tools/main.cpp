// sobolhd command-line front end. Links the C API only.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sobolhd.h"

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(1);
}

void check(shd_status status, const std::string& what) {
    if (status != SHD_OK) {
        fail(what + ": " + shd_status_name(status) + " (" + shd_last_error() + ")");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    return out;
}

// RAII wrappers over the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    explicit Handle(T* p) : ptr(p) {}
    ~Handle() { reset(); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
    Handle& operator=(Handle&& other) noexcept {
        if (this != &other) {
            reset();
            ptr = other.ptr;
            other.ptr = nullptr;
        }
        return *this;
    }
    void reset() {
        if (ptr) Free(ptr);
        ptr = nullptr;
    }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};

using Table = Handle<shd_table, shd_table_free>;
using DatasetHandle = Handle<shd_dataset, shd_dataset_free>;
using Memory = Handle<shd_item_memory, shd_item_memory_free>;
using Model = Handle<shd_model, shd_model_free>;
using Selection = Handle<shd_selection, shd_selection_free>;

Table open_table(const std::string& direction_file) {
    Table table;
    if (direction_file.empty()) {
        check(shd_table_builtin(table.out()), "loading builtin direction numbers");
    } else {
        check(shd_table_open(direction_file.c_str(), 0, table.out()), "loading direction numbers");
    }
    return table;
}

shd_source parse_source(const std::string& name) {
    if (name == "sobol") return SHD_SOURCE_SOBOL;
    if (name == "lfsr") return SHD_SOURCE_LFSR;
    if (name == "random") return SHD_SOURCE_RANDOM;
    fail("unknown source '" + name + "' (expected sobol, lfsr, or random)");
}

shd_mode_strategy parse_strategy(const std::string& name) {
    if (name == "column-mode") return SHD_MODE_COLUMN;
    if (name == "prefix-freq") return SHD_MODE_PREFIX_FREQUENCY;
    fail("unknown strategy '" + name + "' (expected column-mode or prefix-freq)");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// --data accepts a language-corpus directory, a headline .jsonl/.csv file, or
// "synthetic:classes=5,per-class=250,length=120,seed=1,separation=0.6".
struct DataSpec {
    std::string raw;
    std::string classes_filter;
    uint32_t train_cap = 3400;
    uint32_t test_cap = 1000;
    uint32_t train_per_class = 0;  // synthetic split; 0 = 4/5 of per-class
};

struct LoadedData {
    DatasetHandle train;
    DatasetHandle test;  // may be empty
    bool has_test = false;
};

LoadedData load_data(const DataSpec& spec) {
    LoadedData data;
    if (spec.raw.rfind("synthetic:", 0) == 0) {
        uint32_t classes = 5, per_class = 250, length = 120;
        uint64_t seed = 1;
        double separation = 0.6;
        for (const auto& kv : split_list(spec.raw.substr(10))) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) fail("bad synthetic parameter '" + kv + "'");
            std::string key = kv.substr(0, eq);
            std::string value = kv.substr(eq + 1);
            if (key == "classes") classes = std::stoul(value);
            else if (key == "per-class") per_class = std::stoul(value);
            else if (key == "length") length = std::stoul(value);
            else if (key == "seed") seed = std::stoull(value);
            else if (key == "separation") separation = std::stod(value);
            else fail("unknown synthetic parameter '" + key + "'");
        }
        DatasetHandle full;
        check(shd_dataset_synthetic(classes, per_class, length, seed, separation, full.out()),
              "generating synthetic corpus");
        uint32_t train_n = spec.train_per_class != 0 ? spec.train_per_class : per_class * 4 / 5;
        check(shd_dataset_split_per_class(full.get(), train_n, data.train.out(), data.test.out()),
              "splitting synthetic corpus");
        data.has_test = true;
    } else if (ends_with(spec.raw, ".jsonl") || ends_with(spec.raw, ".json") ||
               ends_with(spec.raw, ".csv")) {
        check(shd_dataset_load_headlines(spec.raw.c_str(), spec.classes_filter.c_str(),
                                         spec.train_cap, spec.test_cap, data.train.out(),
                                         data.test.out()),
              "loading headlines");
        data.has_test = true;
    } else {
        check(shd_dataset_load_language_dir(spec.raw.c_str(), 0, 0, data.train.out()),
              "loading language corpus");
    }
    return data;
}

std::string config_comment(const json& config) {
    return "# config: " + config.dump() + "\n";
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct AccuracyStats {
    double min_acc = 1.0, max_acc = 0.0, avg = 0.0, stddev = 0.0;
};

AccuracyStats summarize(const std::vector<double>& accs) {
    AccuracyStats stats;
    double total = 0.0;
    for (double a : accs) {
        stats.min_acc = std::min(stats.min_acc, a);
        stats.max_acc = std::max(stats.max_acc, a);
        total += a;
    }
    stats.avg = total / static_cast<double>(accs.size());
    double var = 0.0;
    for (double a : accs) var += (a - stats.avg) * (a - stats.avg);
    stats.stddev = accs.size() > 1 ? std::sqrt(var / static_cast<double>(accs.size() - 1)) : 0.0;
    return stats;
}

void write_sweep_svg(const std::string& path, const std::vector<uint32_t>& dims,
                     const std::vector<double>& grid,
                     const std::vector<std::vector<double>>& curves) {
    const double width = 640, height = 400, margin = 50;
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto x_at = [&](double t) { return margin + t * (width - 2 * margin); };
    auto y_at = [&](double acc) { return height - margin - acc * (height - 2 * margin); };
    out << "<line x1=\"" << x_at(0) << "\" y1=\"" << y_at(0) << "\" x2=\"" << x_at(1.0)
        << "\" y2=\"" << y_at(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << x_at(0) << "\" y1=\"" << y_at(0) << "\" x2=\"" << x_at(0)
        << "\" y2=\"" << y_at(1.0) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\">threshold T</text>\n";
    out << "<text x=\"8\" y=\"" << height / 2 << "\" transform=\"rotate(-90 14 " << height / 2
        << ")\">accuracy</text>\n";
    const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t c = 0; c < curves.size(); ++c) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[c % 6] << "\" points=\"";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out << x_at(grid[i]) << "," << y_at(curves[c][i]) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - margin + 4 << "\" y=\"" << y_at(curves[c].back())
            << "\" fill=\"" << colors[c % 6] << "\" font-size=\"12\">D=" << dims[c] << "</text>\n";
    }
    out << "</svg>\n";
}

// Expands --config file.json into leading arguments so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) fail("cannot open config file '" + config_path + "'");
    json config = json::parse(in, nullptr, false);
    if (config.is_discarded() || !config.is_object()) {
        fail("config file '" + config_path + "' is not a JSON object");
    }
    std::vector<std::string> expanded;
    if (!args.empty()) expanded.push_back(args[0]);  // subcommand stays first
    for (const auto& [key, value] : config.items()) {
        if (value.is_boolean()) {
            expanded.push_back("--" + key + "=" + (value.get<bool>() ? "true" : "false"));
        } else if (value.is_string()) {
            expanded.push_back("--" + key + "=" + value.get<std::string>());
        } else {
            expanded.push_back("--" + key + "=" + value.dump());
        }
    }
    expanded.insert(expanded.end(), args.begin() + (args.empty() ? 0 : 1), args.end());
    return expanded;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sobol-sequence hypervectors and an n-gram HDC text classifier"};
    app.require_subcommand(1);
    // --config expansion prepends file values; explicit flags repeat and win
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string direction_file;
    app.add_option("--direction-file", direction_file,
                   "Joe-Kuo direction-number file (defaults to the builtin table)");

    // ---- sobol ----
    auto* cmd_sobol = app.add_subcommand("sobol", "Dump Sobol sequence points as CSV");
    uint32_t sobol_dims = 2, sobol_points = 16;
    uint64_t sobol_skip = 0;
    std::string sobol_out;
    cmd_sobol->add_option("--dims", sobol_dims, "number of sequences (rows)")
        ->check(CLI::PositiveNumber);
    cmd_sobol->add_option("--points", sobol_points, "points per sequence (columns)")
        ->check(CLI::PositiveNumber);
    cmd_sobol->add_option("--skip", sobol_skip, "leading points to skip");
    cmd_sobol->add_option("--out", sobol_out, "output CSV path")->required();

    // ---- select ----
    auto* cmd_select = app.add_subcommand("select", "Select the K most uncorrelated sequences");
    uint32_t sel_dim = 2048, sel_k = 28;
    double sel_t = 0.34;
    std::string sel_strategy = "column-mode", sel_out;
    cmd_select->add_option("--dim", sel_dim, "hypervector dimension D");
    cmd_select->add_option("--t", sel_t, "threshold T");
    cmd_select->add_option("--k", sel_k, "number of sequences to select");
    cmd_select->add_option("--strategy", sel_strategy, "mode strategy: column-mode | prefix-freq");
    cmd_select->add_option("--out", sel_out, "output report JSON path")->required();

    // shared classifier options
    struct ClassifierOptions {
        std::string data, test_data, classes;
        std::string source = "sobol";
        uint32_t dim = 1024, ngram = 4, trials = 1;
        double t = 0.34;
        uint64_t seed = 1;
        bool first_k = false, lfsr_shared = false;
        std::string strategy = "column-mode";
        uint32_t train_cap = 3400, test_cap = 1000, train_per_class = 0;
    };
    auto add_classifier_options = [](CLI::App* cmd, ClassifierOptions& opt, bool with_source) {
        cmd->add_option("--data", opt.data,
                        "language corpus dir, headline .jsonl/.csv, or synthetic:... spec")
            ->required();
        cmd->add_option("--test-data", opt.test_data, "held-out set (defaults to --data's split)");
        cmd->add_option("--classes", opt.classes, "headline category filter (comma separated)");
        cmd->add_option("--train-cap", opt.train_cap, "headline per-class training cap");
        cmd->add_option("--test-cap", opt.test_cap, "headline per-class test cap");
        cmd->add_option("--train-per-class", opt.train_per_class,
                        "synthetic per-class training count (default 4/5)");
        cmd->add_option("--dim", opt.dim, "hypervector dimension D");
        cmd->add_option("--ngram", opt.ngram, "n-gram window size");
        cmd->add_option("--t", opt.t, "threshold T");
        cmd->add_option("--seed", opt.seed, "master seed");
        if (with_source) {
            cmd->add_option("--source", opt.source, "hypervector source: sobol | lfsr | random");
            cmd->add_flag("--first-k", opt.first_k, "use the first K sequences, skip selection");
            cmd->add_flag("--lfsr-shared", opt.lfsr_shared, "one shared LFSR stream across symbols");
            cmd->add_option("--strategy", opt.strategy, "selection mode strategy");
        }
    };

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "Accuracy vs threshold curve");
    ClassifierOptions sweep_opt;
    add_classifier_options(cmd_sweep, sweep_opt, true);
    std::string sweep_dims = "1024", sweep_out, sweep_svg;
    double grid_start = 0.02, grid_stop = 0.98, grid_step = 0.02;
    cmd_sweep->add_option("--dims", sweep_dims, "comma-separated dimensions");
    cmd_sweep->add_option("--grid-start", grid_start, "first threshold");
    cmd_sweep->add_option("--grid-stop", grid_stop, "last threshold");
    cmd_sweep->add_option("--grid-step", grid_step, "threshold step");
    cmd_sweep->add_option("--out", sweep_out, "output CSV path")->required();
    cmd_sweep->add_option("--svg", sweep_svg, "optional SVG rendering");

    // ---- train ----
    auto* cmd_train = app.add_subcommand("train", "Train a class model");
    ClassifierOptions train_opt;
    add_classifier_options(cmd_train, train_opt, true);
    std::string train_out;
    cmd_train->add_option("--out", train_out, "output model path")->required();

    // ---- infer ----
    auto* cmd_infer = app.add_subcommand("infer", "Predict labels with a trained model");
    std::string infer_model, infer_out;
    ClassifierOptions infer_opt;
    cmd_infer->add_option("--model", infer_model, "trained model path")->required();
    cmd_infer->add_option("--data", infer_opt.data, "dataset to label")->required();
    cmd_infer->add_option("--classes", infer_opt.classes, "headline category filter");
    cmd_infer->add_option("--train-cap", infer_opt.train_cap, "headline per-class training cap");
    cmd_infer->add_option("--test-cap", infer_opt.test_cap, "headline per-class test cap");
    cmd_infer->add_option("--out", infer_out, "predictions CSV path")->required();

    // ---- eval ----
    auto* cmd_eval = app.add_subcommand("eval", "Train and evaluate, optionally over trials");
    ClassifierOptions eval_opt;
    add_classifier_options(cmd_eval, eval_opt, true);
    cmd_eval->add_option("--trials", eval_opt.trials, "random/lfsr trials (sobol is deterministic)");
    std::string eval_out;
    cmd_eval->add_option("--out", eval_out, "accuracy table CSV path")->required();

    // ---- bench ----
    auto* cmd_bench = app.add_subcommand("bench", "Generation and encode throughput");
    std::string bench_dims = "64,256,1024", bench_sources = "sobol,lfsr,random", bench_out;
    uint32_t bench_texts = 64, bench_length = 120, bench_ngram = 4;
    double bench_t = 0.34;
    uint64_t bench_seed = 1;
    cmd_bench->add_option("--dims", bench_dims, "comma-separated dimensions");
    cmd_bench->add_option("--sources", bench_sources, "comma-separated sources");
    cmd_bench->add_option("--t", bench_t, "threshold T");
    cmd_bench->add_option("--seed", bench_seed, "master seed");
    cmd_bench->add_option("--texts", bench_texts, "synthetic texts to encode");
    cmd_bench->add_option("--text-length", bench_length, "synthetic text length");
    cmd_bench->add_option("--ngram", bench_ngram, "n-gram window size");
    cmd_bench->add_option("--out", bench_out, "output CSV path")->required();

    auto args = expand_config(argc, argv);
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto build_memory = [&](const ClassifierOptions& opt, const Table& table) {
        Memory memory;
        check(shd_item_memory_build(table.get(), shd_default_alphabet(), parse_source(opt.source),
                                    opt.dim, opt.t, opt.seed, opt.first_k ? 0 : 1,
                                    parse_strategy(opt.strategy), opt.lfsr_shared ? 1 : 0,
                                    memory.out()),
              "building item memory");
        return memory;
    };

    auto load_train_test = [&](const ClassifierOptions& opt) {
        DataSpec spec{opt.data, opt.classes, opt.train_cap, opt.test_cap, opt.train_per_class};
        LoadedData data = load_data(spec);
        if (!opt.test_data.empty()) {
            DataSpec test_spec{opt.test_data, opt.classes, opt.train_cap, opt.test_cap,
                               opt.train_per_class};
            LoadedData held_out = load_data(test_spec);
            data.test = std::move(held_out.train);
            data.has_test = true;
        }
        if (!data.has_test) fail("no held-out data: pass --test-data or a splittable --data");
        return data;
    };

    if (*cmd_sobol) {
        Table table = open_table(direction_file);
        json config{{"command", "sobol"}, {"dims", sobol_dims}, {"points", sobol_points},
                    {"skip", sobol_skip}, {"direction_file", direction_file}};
        std::vector<double> row(sobol_points);
        auto out = open_out(sobol_out);
        out << config_comment(config);
        out << "dim";
        for (uint32_t p = 0; p < sobol_points; ++p) out << ",point_" << p;
        out << "\n";
        out.precision(17);
        for (uint32_t dim = 1; dim <= sobol_dims; ++dim) {
            check(shd_sobol_points(table.get(), dim, sobol_skip, sobol_points, row.data()),
                  "generating points");
            out << dim;
            for (double v : row) out << "," << v;
            out << "\n";
        }
        return 0;
    }

    if (*cmd_select) {
        Table table = open_table(direction_file);
        Selection selection;
        check(shd_select(table.get(), sel_dim, sel_t, sel_k, parse_strategy(sel_strategy),
                         selection.out()),
              "selecting sequences");
        json config{{"command", "select"}, {"dim", sel_dim}, {"t", sel_t}, {"k", sel_k},
                    {"strategy", sel_strategy}, {"direction_file", direction_file}};
        check(shd_selection_write_report(selection.get(), sel_out.c_str(), config.dump().c_str()),
              "writing report");
        std::cout << "selected " << shd_selection_k(selection.get()) << " sequences, mean |SCC| "
                  << shd_selection_mean_abs_scc(selection.get()) << " (population "
                  << shd_selection_population_mean_abs_scc(selection.get()) << ")\n";
        return 0;
    }

    if (*cmd_sweep) {
        Table table = open_table(direction_file);
        LoadedData data = load_train_test(sweep_opt);
        std::vector<double> grid;
        for (double t = grid_start; t <= grid_stop + 1e-12; t += grid_step) grid.push_back(t);
        json config{{"command", "sweep"}, {"data", sweep_opt.data}, {"source", sweep_opt.source},
                    {"dims", sweep_dims}, {"ngram", sweep_opt.ngram}, {"seed", sweep_opt.seed},
                    {"grid_start", grid_start}, {"grid_stop", grid_stop}, {"grid_step", grid_step}};
        auto out = open_out(sweep_out);
        out << config_comment(config);
        out << "dim,t,accuracy,best\n";
        std::vector<uint32_t> dims;
        for (const auto& d : split_list(sweep_dims)) dims.push_back(std::stoul(d));
        std::vector<std::vector<double>> curves;
        for (uint32_t dim : dims) {
            std::vector<double> accs(grid.size());
            double best_t = 0.0;
            check(shd_threshold_sweep(table.get(), data.train.get(), data.test.get(),
                                      parse_source(sweep_opt.source), dim, sweep_opt.ngram,
                                      sweep_opt.seed, sweep_opt.lfsr_shared ? 1 : 0, grid.data(),
                                      static_cast<uint32_t>(grid.size()), accs.data(), &best_t),
                  "sweeping thresholds");
            for (std::size_t i = 0; i < grid.size(); ++i) {
                out << dim << "," << grid[i] << "," << accs[i] << ","
                    << (grid[i] == best_t ? 1 : 0) << "\n";
            }
            curves.push_back(std::move(accs));
        }
        if (!sweep_svg.empty()) write_sweep_svg(sweep_svg, dims, grid, curves);
        return 0;
    }

    if (*cmd_train) {
        Table table = open_table(direction_file);
        DataSpec spec{train_opt.data, train_opt.classes, train_opt.train_cap, train_opt.test_cap,
                      train_opt.train_per_class};
        LoadedData data = load_data(spec);
        Memory memory = build_memory(train_opt, table);
        Model model;
        check(shd_train(memory.get(), train_opt.ngram, data.train.get(), model.out()), "training");
        check(shd_model_save(model.get(), train_out.c_str()), "saving model");
        std::cout << "trained " << shd_model_num_classes(model.get()) << " classes at D="
                  << train_opt.dim << ", saved to " << train_out << "\n";
        return 0;
    }

    if (*cmd_infer) {
        Table table = open_table(direction_file);
        Model model;
        check(shd_model_load(infer_model.c_str(), model.out()), "loading model");
        Memory memory;
        check(shd_model_rebuild_item_memory(model.get(), table.get(), memory.out()),
              "rebuilding item memory");
        DataSpec spec{infer_opt.data, infer_opt.classes, infer_opt.train_cap, infer_opt.test_cap, 0};
        LoadedData data = load_data(spec);
        const shd_dataset* items = data.train.get();
        json config{{"command", "infer"}, {"model", infer_model}, {"data", infer_opt.data}};
        auto out = open_out(infer_out);
        out << config_comment(config);
        out << "index,label,predicted\n";
        for (uint32_t i = 0; i < shd_dataset_size(items); ++i) {
            uint32_t winner = 0;
            check(shd_classify(model.get(), memory.get(), shd_dataset_text(items, i), &winner,
                               nullptr),
                  "classifying");
            out << i << "," << shd_dataset_label(items, i) << ","
                << shd_model_label(model.get(), winner) << "\n";
        }
        return 0;
    }

    if (*cmd_eval) {
        Table table = open_table(direction_file);
        LoadedData data = load_train_test(eval_opt);
        shd_source source = parse_source(eval_opt.source);
        uint32_t trials = source == SHD_SOURCE_SOBOL ? 1 : std::max(1u, eval_opt.trials);
        std::vector<double> accs;
        for (uint32_t trial = 0; trial < trials; ++trial) {
            ClassifierOptions opt = eval_opt;
            opt.seed = shd_derive_seed(eval_opt.seed, trial);
            Memory memory = build_memory(opt, table);
            Model model;
            check(shd_train(memory.get(), eval_opt.ngram, data.train.get(), model.out()),
                  "training");
            double accuracy = 0.0;
            check(shd_evaluate(model.get(), memory.get(), data.test.get(), &accuracy, nullptr),
                  "evaluating");
            accs.push_back(accuracy);
        }
        AccuracyStats stats = summarize(accs);
        json config{{"command", "eval"}, {"data", eval_opt.data}, {"source", eval_opt.source},
                    {"dim", eval_opt.dim}, {"t", eval_opt.t}, {"ngram", eval_opt.ngram},
                    {"seed", eval_opt.seed}, {"trials", trials},
                    {"first_k", eval_opt.first_k}, {"strategy", eval_opt.strategy},
                    {"lfsr_shared", eval_opt.lfsr_shared}};
        auto out = open_out(eval_out);
        out << config_comment(config);
        out << "source,dim,t,ngram,trials,min_acc,max_acc,std_dev,avg_acc\n";
        out << eval_opt.source << "," << eval_opt.dim << "," << eval_opt.t << "," << eval_opt.ngram
            << "," << trials << "," << stats.min_acc << "," << stats.max_acc << "," << stats.stddev
            << "," << stats.avg << "\n";
        std::cout << "avg accuracy " << stats.avg << " over " << trials << " trial(s)\n";
        return 0;
    }

    if (*cmd_bench) {
        Table table = open_table(direction_file);
        DatasetHandle corpus;
        check(shd_dataset_synthetic(5, bench_texts / 5 + 1, bench_length, bench_seed, 0.6,
                                    corpus.out()),
              "generating bench corpus");
        json config{{"command", "bench"}, {"dims", bench_dims}, {"sources", bench_sources},
                    {"t", bench_t}, {"seed", bench_seed}, {"texts", bench_texts},
                    {"text_length", bench_length}, {"ngram", bench_ngram}};
        auto out = open_out(bench_out);
        out << config_comment(config);
        out << "source,dim,build_ms,encode_texts_per_s,memory_bytes\n";
        const std::string alphabet = shd_default_alphabet();
        for (const auto& dim_text : split_list(bench_dims)) {
            uint32_t dim = std::stoul(dim_text);
            for (const auto& source_name : split_list(bench_sources)) {
                // sobol appears twice: full selection, then first-K reuse of
                // the pregenerated matrix
                std::vector<std::pair<std::string, bool>> variants;
                if (source_name == "sobol") {
                    variants = {{"sobol", false}, {"sobol-first-k", true}};
                } else {
                    variants = {{source_name, false}};
                }
                for (const auto& [label, first_k] : variants) {
                    double t0 = now_ms();
                    Memory memory;
                    check(shd_item_memory_build(table.get(), alphabet.c_str(),
                                                parse_source(source_name), dim, bench_t,
                                                bench_seed, first_k ? 0 : 1, SHD_MODE_COLUMN, 0,
                                                memory.out()),
                          "building item memory");
                    double build_ms = now_ms() - t0;
                    std::vector<int8_t> encoded(dim);
                    uint32_t n = std::min(bench_texts, shd_dataset_size(corpus.get()));
                    double t1 = now_ms();
                    for (uint32_t i = 0; i < n; ++i) {
                        check(shd_encode_text(memory.get(), bench_ngram,
                                              shd_dataset_text(corpus.get(), i), encoded.data()),
                              "encoding");
                    }
                    double encode_ms = now_ms() - t1;
                    double per_s = n / (encode_ms / 1000.0);
                    uint64_t memory_bytes =
                        static_cast<uint64_t>(alphabet.size()) * ((dim + 7) / 8);
                    out << label << "," << dim << "," << build_ms << "," << per_s << ","
                        << memory_bytes << "\n";
                }
            }
        }
        return 0;
    }

    return 0;
}
