// hqc — hybrid quantum-classical classifier over embedding vectors.
//
// Subcommands: train, evaluate, sweep, compare, verify, make-data.
// All randomness flows from --seed (plus --data-seed for synthetic data);
// reruns with identical flags reproduce every metric bit-for-bit.

#include "hqc/data.hpp"
#include "hqc/errors.hpp"
#include "hqc/model.hpp"
#include "hqc/report.hpp"
#include "hqc/rng.hpp"
#include "hqc/training.hpp"
#include "hqc/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hqc;

struct DataOptions {
    std::string path;
    std::string kind = "gaussian_blobs";
    long n = 400;
    long dim = 16;
    double margin = 4.0;
    std::optional<std::uint64_t> data_seed;  // defaults to the run seed
};

struct RunOptions {
    int qubits = 4;
    int depth = 4;
    std::string topology = "chain";
    std::string head_mode = "hybrid";
    int epochs = 10;
    int batch_size = 32;
    double learning_rate = 1e-3;
    std::string optimizer = "adam";
    double val_fraction = 0.2;
    std::uint64_t seed = 7;
    std::string run_id;
    std::string out = "model.qhm1";
    std::string report = "report.jsonl";
};

EntangleTopology parse_topology(const std::string& name) {
    if (name == "chain") return EntangleTopology::Chain;
    if (name == "ring") return EntangleTopology::Ring;
    throw ConfigError("topology must be \"chain\" or \"ring\", got \"" + name + "\"");
}

HeadMode parse_head_mode(const std::string& name) {
    if (name == "hybrid") return HeadMode::Hybrid;
    if (name == "classical_baseline") return HeadMode::ClassicalBaseline;
    throw ConfigError("head-mode must be \"hybrid\" or \"classical_baseline\", got \"" + name +
                      "\"");
}

OptimizerKind parse_optimizer(const std::string& name) {
    if (name == "adam") return OptimizerKind::Adam;
    if (name == "sgd") return OptimizerKind::Sgd;
    throw ConfigError("optimizer must be \"adam\" or \"sgd\", got \"" + name + "\"");
}

SyntheticKind parse_kind(const std::string& name) {
    if (name == "gaussian_blobs") return SyntheticKind::GaussianBlobs;
    if (name == "xor_rings") return SyntheticKind::XorRings;
    throw ConfigError("kind must be \"gaussian_blobs\" or \"xor_rings\", got \"" + name + "\"");
}

EmbeddingDataset load_dataset_file(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.extension() == ".csv") return load_csv(p);
    if (p.extension() == ".qemb") return load_binary(p);
    throw ConfigError("data file must end in .csv or .qemb, got \"" + path + "\"");
}

EmbeddingDataset resolve_dataset(const DataOptions& data, std::uint64_t run_seed) {
    if (!data.path.empty()) return load_dataset_file(data.path);
    const std::uint64_t seed = data.data_seed.value_or(run_seed);
    return make_synthetic(parse_kind(data.kind), data.n, data.dim, seed, data.margin);
}

TrainConfig make_train_config(const RunOptions& run) {
    TrainConfig config;
    config.epochs = run.epochs;
    config.batch_size = run.batch_size;
    config.learning_rate = run.learning_rate;
    config.optimizer = parse_optimizer(run.optimizer);
    config.seed = run.seed;
    config.val_fraction = run.val_fraction;
    return config;
}

ModelConfig make_model_config(const RunOptions& run, Eigen::Index d_in) {
    ModelConfig config;
    config.d_in = int(d_in);
    config.n_q = run.qubits;
    config.depth = run.depth;
    config.topology = parse_topology(run.topology);
    config.head_mode = parse_head_mode(run.head_mode);
    return config;
}

std::string default_run_id(const RunOptions& run) {
    std::ostringstream id;
    id << "run-" << run.seed << "-" << run.qubits << "q" << run.depth << "d-" << run.head_mode;
    return id.str();
}

void add_data_options(CLI::App* cmd, DataOptions& data) {
    cmd->add_option("--data", data.path, "dataset file (.csv or .qemb); omit for synthetic data");
    cmd->add_option("--kind", data.kind, "synthetic kind: gaussian_blobs | xor_rings")
        ->capture_default_str();
    cmd->add_option("--n", data.n, "synthetic sample count")->capture_default_str();
    cmd->add_option("--dim", data.dim, "synthetic feature dimension")->capture_default_str();
    cmd->add_option("--margin", data.margin, "synthetic class separation")->capture_default_str();
    cmd->add_option("--data-seed", data.data_seed,
                    "seed for synthetic data (defaults to --seed)");
}

/// Flat key=value config file ('#' comments). Keys are the run/data field
/// names in either underscore or hyphen form; flags given on the command
/// line override file values. Applied before CLI11 parses the flags.
void apply_config_file(const std::string& path, RunOptions& run, DataOptions& data) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config file not found: " + path);
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (char& c : key) {
            if (c == '-') c = '_';
        }
        try {
            if (key == "qubits") run.qubits = std::stoi(value);
            else if (key == "depth") run.depth = std::stoi(value);
            else if (key == "topology") run.topology = value;
            else if (key == "head_mode") run.head_mode = value;
            else if (key == "epochs") run.epochs = std::stoi(value);
            else if (key == "batch_size") run.batch_size = std::stoi(value);
            else if (key == "learning_rate") run.learning_rate = std::stod(value);
            else if (key == "optimizer") run.optimizer = value;
            else if (key == "val_fraction") run.val_fraction = std::stod(value);
            else if (key == "seed") run.seed = std::stoull(value);
            else if (key == "run_id") run.run_id = value;
            else if (key == "out") run.out = value;
            else if (key == "report") run.report = value;
            else if (key == "data") data.path = value;
            else if (key == "kind") data.kind = value;
            else if (key == "n") data.n = std::stol(value);
            else if (key == "dim") data.dim = std::stol(value);
            else if (key == "margin") data.margin = std::stod(value);
            else if (key == "data_seed") data.data_seed = std::stoull(value);
            else throw ConfigError("config line " + std::to_string(line_no) +
                                   ": unknown key \"" + key + "\"");
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad value for \"" +
                              key + "\"");
        }
    }
}

void add_run_options(CLI::App* cmd, RunOptions& run, std::string& config_path,
                     bool with_head_mode) {
    cmd->add_option("--config", config_path,
                    "flat key=value config file; flags override file values");
    cmd->add_option("--qubits", run.qubits, "qubit count n_q")->capture_default_str();
    cmd->add_option("--depth", run.depth, "variational depth")->capture_default_str();
    cmd->add_option("--topology", run.topology, "entanglement: chain | ring")
        ->capture_default_str();
    if (with_head_mode) {
        cmd->add_option("--head-mode", run.head_mode, "hybrid | classical_baseline")
            ->capture_default_str();
    }
    cmd->add_option("--epochs", run.epochs, "training epochs")->capture_default_str();
    cmd->add_option("--batch-size", run.batch_size, "mini-batch size")->capture_default_str();
    cmd->add_option("--learning-rate", run.learning_rate, "optimizer learning rate")
        ->capture_default_str();
    cmd->add_option("--optimizer", run.optimizer, "adam | sgd")->capture_default_str();
    cmd->add_option("--val-fraction", run.val_fraction, "validation fraction")
        ->capture_default_str();
    cmd->add_option("--seed", run.seed, "run seed (init, split, shuffles)")
        ->capture_default_str();
    cmd->add_option("--run-id", run.run_id, "record identifier (default derived from config)");
}

struct TrainedRun {
    TrainResult result;
    RunInfo info;
};

// HQC_VERBOSE=1 streams per-epoch records to stderr; the only env var read.
bool verbose_logging() {
    const char* v = std::getenv("HQC_VERBOSE");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}

TrainedRun run_training(const RunOptions& run, const EmbeddingDataset& dataset,
                        HeadMode head_mode) {
    ModelConfig model_config = make_model_config(run, dataset.dim());
    model_config.head_mode = head_mode;
    HybridModel model = init_params(model_config, run.seed);
    EpochCallback on_epoch;
    if (verbose_logging()) {
        on_epoch = [](const EpochRecord& e) {
            std::cerr << "epoch " << e.epoch << " train_loss=" << e.train_loss
                      << " train_acc=" << e.train_acc << " val_acc=" << e.val_acc
                      << " wall_seconds=" << e.wall_seconds << "\n";
        };
    }
    TrainResult result = train(std::move(model), dataset, make_train_config(run), on_epoch);
    RunInfo info;
    info.run_id = run.run_id.empty() ? default_run_id(run) : run.run_id;
    info.n_q = run.qubits;
    info.depth = run.depth;
    info.head_mode = head_mode;
    info.seed = run.seed;
    return {std::move(result), std::move(info)};
}

int cmd_train(const RunOptions& run, const DataOptions& data) {
    const EmbeddingDataset dataset = resolve_dataset(data, run.seed);
    TrainedRun trained = run_training(run, dataset, parse_head_mode(run.head_mode));

    save_checkpoint(trained.result.model, run.out);
    write_report(trained.result.report, trained.info, run.report);

    const TrainReport& report = trained.result.report;
    std::cout << "run_id=" << trained.info.run_id << " seed=" << run.seed
              << " n_q=" << run.qubits << " depth=" << run.depth << " head_mode=" << run.head_mode
              << " final_train_loss=" << report.epochs.back().train_loss
              << " final_val_acc=" << report.final_val_acc
              << " final_val_f1=" << report.final_val_f1
              << " total_quantum_evals=" << report.total_quantum_evals
              << " checkpoint=" << run.out << " report=" << run.report << "\n";
    return 0;
}

int cmd_evaluate(const std::string& model_path, const DataOptions& data, std::uint64_t seed) {
    const HybridModel model = load_checkpoint(model_path);
    const EmbeddingDataset dataset = resolve_dataset(data, seed);
    const Metrics metrics = evaluate(model, dataset);
    std::cout << "samples=" << dataset.size() << " accuracy=" << metrics.accuracy
              << " macro_f1=" << metrics.macro_f1 << " confusion=[[" << metrics.confusion[0][0]
              << "," << metrics.confusion[0][1] << "],[" << metrics.confusion[1][0] << ","
              << metrics.confusion[1][1] << "]]"
              << " seed=" << seed << "\n";
    return 0;
}

int cmd_sweep(const RunOptions& base, const DataOptions& data, std::vector<int> qubit_list,
              int reps, const std::string& csv_out) {
    if (qubit_list.empty()) qubit_list = {2, 4, 6, 8, 10};
    if (reps < 1) throw ConfigError("--reps must be >= 1");

    const EmbeddingDataset dataset = resolve_dataset(data, base.seed);

    std::ofstream csv(csv_out, std::ios::trunc);
    if (!csv) throw IoError("sweep: cannot open " + csv_out);
    csv << "qubits,rep,seed,accuracy,seconds,quantum_evals\n";
    csv << std::setprecision(17);

    std::cout << "qubits  mean_acc  std_acc  mean_seconds  quantum_evals  amplitudes\n";
    for (const int q : qubit_list) {
        std::vector<double> accs;
        std::vector<double> secs;
        std::int64_t evals = 0;
        for (int rep = 0; rep < reps; ++rep) {
            RunOptions run = base;
            run.qubits = q;
            run.seed = mix_seed(base.seed, (std::uint64_t(q) << 16) | std::uint64_t(rep));
            TrainedRun trained = run_training(run, dataset, parse_head_mode(base.head_mode));
            const TrainReport& report = trained.result.report;
            double wall = 0.0;
            for (const EpochRecord& e : report.epochs) wall += e.wall_seconds;
            accs.push_back(report.final_val_acc);
            secs.push_back(wall);
            evals = report.total_quantum_evals;
            csv << q << "," << rep << "," << run.seed << "," << report.final_val_acc << ","
                << wall << "," << report.total_quantum_evals << "\n";
        }
        const double mean =
            std::accumulate(accs.begin(), accs.end(), 0.0) / double(accs.size());
        double var = 0.0;
        for (const double a : accs) var += (a - mean) * (a - mean);
        const double stddev = std::sqrt(var / double(accs.size()));
        const double mean_sec =
            std::accumulate(secs.begin(), secs.end(), 0.0) / double(secs.size());
        std::cout << std::setw(6) << q << "  " << std::setw(8) << mean << "  " << std::setw(7)
                  << stddev << "  " << std::setw(12) << mean_sec << "  " << std::setw(13) << evals
                  << "  " << (std::int64_t(1) << q) << "\n";
    }
    std::cout << "seed=" << base.seed << " csv=" << csv_out << "\n";
    return 0;
}

int cmd_compare(const RunOptions& run, const DataOptions& data) {
    const EmbeddingDataset dataset = resolve_dataset(data, run.seed);

    TrainedRun hybrid = run_training(run, dataset, HeadMode::Hybrid);
    TrainedRun baseline = run_training(run, dataset, HeadMode::ClassicalBaseline);

    const TrainReport& hr = hybrid.result.report;
    const TrainReport& br = baseline.result.report;
    if (hr.train_split_hash != br.train_split_hash || hr.val_split_hash != br.val_split_hash) {
        throw ValidationError("compare: the two heads saw different splits");
    }

    std::cout << "config: n_q=" << run.qubits << " depth=" << run.depth
              << " topology=" << run.topology << " epochs=" << run.epochs
              << " batch_size=" << run.batch_size << " learning_rate=" << run.learning_rate
              << " seed=" << run.seed << "\n";
    std::cout << "split_hash: train=" << std::hex << hr.train_split_hash
              << " val=" << hr.val_split_hash << std::dec << " (identical for both heads)\n";
    std::cout << "head_mode           train_f1  val_f1\n";
    std::cout << "hybrid              " << std::setw(8) << hr.final_train_f1 << "  "
              << std::setw(6) << hr.final_val_f1 << "\n";
    std::cout << "classical_baseline  " << std::setw(8) << br.final_train_f1 << "  "
              << std::setw(6) << br.final_val_f1 << "\n";
    return 0;
}

int cmd_verify(const verify::Options& options) {
    const std::vector<verify::SuiteResult> results = verify::run_all(options);
    bool all_passed = true;
    for (const verify::SuiteResult& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (checks=" << r.checks
                  << ", worst_error=" << r.worst_error << ")";
        if (!r.passed) std::cout << " — " << r.detail;
        std::cout << "\n";
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 1;
}

int cmd_make_data(const DataOptions& data, std::uint64_t seed, const std::string& out) {
    const EmbeddingDataset dataset =
        make_synthetic(parse_kind(data.kind), data.n, data.dim,
                       data.data_seed.value_or(seed), data.margin);
    const std::filesystem::path path(out);
    if (path.extension() == ".csv") {
        write_csv(dataset, path);
    } else if (path.extension() == ".qemb") {
        write_binary(dataset, path);
    } else {
        throw ConfigError("make-data: --out must end in .csv or .qemb, got \"" + out + "\"");
    }
    std::cout << "wrote " << dataset.size() << " rows, dim " << dataset.dim() << ", seed "
              << data.data_seed.value_or(seed) << " to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical classifier over embedding vectors"};
    app.require_subcommand(1);

    RunOptions run;
    DataOptions data;
    std::string config_path;

    // The config file must populate the structs before CLI11 assigns flag
    // values, so command-line flags override file entries.
    if (argc >= 2) {
        const std::string sub = argv[1];
        if (sub == "train" || sub == "sweep" || sub == "compare") {
            for (int i = 2; i < argc; ++i) {
                const std::string arg = argv[i];
                if (arg == "--config" && i + 1 < argc) {
                    config_path = argv[i + 1];
                } else if (arg.rfind("--config=", 0) == 0) {
                    config_path = arg.substr(9);
                }
            }
            if (!config_path.empty()) {
                try {
                    apply_config_file(config_path, run, data);
                } catch (const std::exception& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return 1;
                }
            }
        }
    }

    CLI::App* train_cmd = app.add_subcommand("train", "train a model and write checkpoint+report");
    add_run_options(train_cmd, run, config_path, true);
    add_data_options(train_cmd, data);
    train_cmd->add_option("--out", run.out, "checkpoint path (QHM1)")->capture_default_str();
    train_cmd->add_option("--report", run.report, "report path (JSON lines)")
        ->capture_default_str();

    std::string model_path = "model.qhm1";
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "evaluate a checkpoint on a dataset");
    eval_cmd->add_option("--model", model_path, "checkpoint to evaluate")->capture_default_str();
    add_data_options(eval_cmd, data);
    eval_cmd->add_option("--seed", run.seed, "seed for synthetic data")->capture_default_str();

    std::vector<int> qubit_list;
    int reps = 1;
    std::string sweep_csv = "sweep.csv";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "train once per qubit count, report accuracy and cost");
    add_run_options(sweep_cmd, run, config_path, true);
    add_data_options(sweep_cmd, data);
    sweep_cmd->add_option("--qubit-list", qubit_list, "qubit counts (default 2,4,6,8,10)")
        ->delimiter(',');
    sweep_cmd->add_option("--reps", reps, "repetitions per qubit count")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_csv, "plottable CSV output")->capture_default_str();

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "train hybrid and classical heads on identical splits");
    add_run_options(compare_cmd, run, config_path, false);
    add_data_options(compare_cmd, data);

    verify::Options verify_options;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run oracle-equivalence, gradient and invariant suites");
    verify_cmd->add_option("--circuits", verify_options.circuits, "equivalence suite size")
        ->capture_default_str();
    verify_cmd->add_option("--gradient-models", verify_options.gradient_models,
                           "gradient suite size")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_options.seed, "suite seed")->capture_default_str();
    verify_cmd->add_flag("--inject-cnot-swap", verify_options.inject_cnot_swap)
        ->group("");  // test-only fault injection, hidden from help

    std::string make_out = "data.csv";
    std::uint64_t make_seed = 7;
    CLI::App* make_cmd = app.add_subcommand("make-data", "generate a synthetic dataset file");
    make_cmd->add_option("--kind", data.kind, "gaussian_blobs | xor_rings")
        ->capture_default_str();
    make_cmd->add_option("--n", data.n, "sample count")->capture_default_str();
    make_cmd->add_option("--dim", data.dim, "feature dimension")->capture_default_str();
    make_cmd->add_option("--margin", data.margin, "class separation")->capture_default_str();
    make_cmd->add_option("--seed", make_seed, "generator seed")->capture_default_str();
    make_cmd->add_option("--out", make_out, "output file (.csv or .qemb)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed()) return cmd_train(run, data);
        if (eval_cmd->parsed()) return cmd_evaluate(model_path, data, run.seed);
        if (sweep_cmd->parsed()) return cmd_sweep(run, data, qubit_list, reps, sweep_csv);
        if (compare_cmd->parsed()) return cmd_compare(run, data);
        if (verify_cmd->parsed()) return cmd_verify(verify_options);
        if (make_cmd->parsed()) return cmd_make_data(data, make_seed, make_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
