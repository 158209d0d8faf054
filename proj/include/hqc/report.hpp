#pragma once

#include "hqc/training.hpp"

#include <filesystem>
#include <string>

namespace hqc {

/// Context echoed into every report record.
struct RunInfo {
    std::string run_id;
    int n_q = 0;
    int depth = 0;
    HeadMode head_mode = HeadMode::Hybrid;
    std::uint64_t seed = 0;
};

std::string head_mode_name(HeadMode mode);
std::string topology_name(EntangleTopology topology);

/// One JSON object per line: a `"record": "epoch"` line per epoch with fields
/// run_id, epoch, train_loss, train_acc, train_f1, val_acc, val_f1,
/// wall_seconds, n_q, depth, head_mode, seed; then one `"record": "summary"`
/// line with the final metrics, total_quantum_evals, the split hashes and the
/// config echo.
std::string report_to_jsonl(const TrainReport& report, const RunInfo& info);

void write_report(const TrainReport& report, const RunInfo& info,
                  const std::filesystem::path& path);

}  // namespace hqc
