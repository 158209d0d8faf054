#include "hqc/report.hpp"

#include "hqc/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hqc {

using nlohmann::json;

std::string head_mode_name(HeadMode mode) {
    return mode == HeadMode::Hybrid ? "hybrid" : "classical_baseline";
}

std::string topology_name(EntangleTopology topology) {
    return topology == EntangleTopology::Chain ? "chain" : "ring";
}

std::string report_to_jsonl(const TrainReport& report, const RunInfo& info) {
    std::ostringstream out;
    for (const EpochRecord& e : report.epochs) {
        json record{{"record", "epoch"},
                    {"run_id", info.run_id},
                    {"epoch", e.epoch},
                    {"train_loss", e.train_loss},
                    {"train_acc", e.train_acc},
                    {"train_f1", e.train_f1},
                    {"val_acc", e.val_acc},
                    {"val_f1", e.val_f1},
                    {"wall_seconds", e.wall_seconds},
                    {"n_q", info.n_q},
                    {"depth", info.depth},
                    {"head_mode", head_mode_name(info.head_mode)},
                    {"seed", info.seed}};
        out << record.dump() << "\n";
    }
    json summary{{"record", "summary"},
                 {"run_id", info.run_id},
                 {"final_train_acc", report.final_train_acc},
                 {"final_train_f1", report.final_train_f1},
                 {"final_val_acc", report.final_val_acc},
                 {"final_val_f1", report.final_val_f1},
                 {"total_quantum_evals", report.total_quantum_evals},
                 {"train_split_hash", report.train_split_hash},
                 {"val_split_hash", report.val_split_hash},
                 {"epochs", report.config.epochs},
                 {"batch_size", report.config.batch_size},
                 {"learning_rate", report.config.learning_rate},
                 {"optimizer", report.config.optimizer == OptimizerKind::Adam ? "adam" : "sgd"},
                 {"val_fraction", report.config.val_fraction},
                 {"n_q", info.n_q},
                 {"depth", info.depth},
                 {"head_mode", head_mode_name(info.head_mode)},
                 {"seed", info.seed}};
    out << summary.dump() << "\n";
    return out.str();
}

void write_report(const TrainReport& report, const RunInfo& info,
                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("write_report: cannot open " + path.string());
    }
    out << report_to_jsonl(report, info);
    if (!out) {
        throw IoError("write_report: write failed for " + path.string());
    }
}

}  // namespace hqc
