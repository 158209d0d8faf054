#pragma once

#include "hqc/autodiff.hpp"
#include "hqc/data.hpp"
#include "hqc/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <cstdint>
#include <vector>

namespace hqc {

enum class OptimizerKind { Sgd, Adam };

struct TrainConfig {
    int epochs = 10;
    int batch_size = 32;
    double learning_rate = 1e-3;
    OptimizerKind optimizer = OptimizerKind::Adam;
    std::uint64_t seed = 0;
    double val_fraction = 0.2;
};

struct EpochRecord {
    int epoch = 0;             // 1-based
    double train_loss = 0.0;   // mean per-sample loss over the epoch's backward passes
    double train_acc = 0.0;    // end-of-epoch evaluation on the train split
    double train_f1 = 0.0;
    double val_acc = 0.0;      // 0 when the val split is empty
    double val_f1 = 0.0;
    double wall_seconds = 0.0;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    double final_train_acc = 0.0;
    double final_train_f1 = 0.0;
    double final_val_acc = 0.0;
    double final_val_f1 = 0.0;
    TrainConfig config;
    std::uint64_t train_split_hash = 0;
    std::uint64_t val_split_hash = 0;
    /// Circuit executions consumed by gradient computation: per sample and
    /// step, 1 primal + 2 (depth n_q + n_q) shifted evaluations. End-of-epoch
    /// metric evaluations are not counted.
    std::int64_t total_quantum_evals = 0;
};

struct TrainResult {
    HybridModel model;
    TrainReport report;
};

struct Metrics {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::array<std::array<long, 2>, 2> confusion{};  // [actual][predicted]
};

/// Accuracy, macro F1 and the 2x2 confusion matrix. A class with neither
/// predicted nor actual positives contributes F1 = 0 to the macro average.
Metrics evaluate(const HybridModel& model, const EmbeddingDataset& dataset);

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mini-batch training: seeded 80/20-style split (val_fraction), seeded
/// per-epoch shuffles, mean gradient over each batch, one optimizer step per
/// batch. Fully deterministic given (model, dataset, config); wall_seconds is
/// the only nondeterministic report field. `on_epoch`, when set, observes
/// each record as it completes (used for verbose logging).
TrainResult train(HybridModel model, const EmbeddingDataset& dataset, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

/// Flat views over the trainable blocks, in update order:
/// input W, input b, theta (hybrid only), output W, output b,
/// hidden W, hidden b (baseline only).
using ParamViews = std::vector<Eigen::Map<Eigen::VectorXd>>;
ParamViews trainable_params(HybridModel& model);

/// The gradient blocks matching trainable_params order.
std::vector<Eigen::VectorXd> gradient_blocks(const GradientBundle& grads,
                                             const HybridModel& model);

void sgd_step(ParamViews& params, const std::vector<Eigen::VectorXd>& grads, double lr);

struct AdamState {
    std::vector<Eigen::VectorXd> m;
    std::vector<Eigen::VectorXd> v;
    long step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_params(const ParamViews& params);
};

/// Standard bias-corrected Adam update.
void adam_step(ParamViews& params, const std::vector<Eigen::VectorXd>& grads, AdamState& state,
               double lr);

}  // namespace hqc
