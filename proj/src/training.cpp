#include "hqc/training.hpp"

#include "hqc/errors.hpp"
#include "hqc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace hqc {

namespace {

// Stream tags for the per-purpose seeds derived from the one config seed.
constexpr std::uint64_t kSplitTag = 0x51;
constexpr std::uint64_t kShuffleTagBase = 0x1000;

void check_config(const TrainConfig& config) {
    if (config.epochs < 1) throw ValidationError("train: epochs must be >= 1");
    if (config.batch_size < 1) throw ValidationError("train: batch_size must be >= 1");
    if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
        throw ValidationError("train: learning_rate must be finite and >= 0");
    }
    if (!(config.val_fraction > 0.0 && config.val_fraction < 1.0)) {
        throw ValidationError("train: val_fraction must be in (0, 1)");
    }
}

}  // namespace

Metrics evaluate(const HybridModel& model, const EmbeddingDataset& dataset) {
    if (dataset.size() == 0) {
        throw ValidationError("evaluate: empty dataset");
    }
    validate(dataset);
    Metrics m;
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        const int predicted = predict(model, dataset.features.row(i).transpose());
        const int actual = dataset.labels[i];
        m.confusion[std::size_t(actual)][std::size_t(predicted)] += 1;
    }
    const long correct = m.confusion[0][0] + m.confusion[1][1];
    m.accuracy = double(correct) / double(dataset.size());

    double f1_sum = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        const long tp = m.confusion[c][c];
        const long fp = m.confusion[1 - c][c];
        const long fn = m.confusion[c][1 - c];
        const long denom = 2 * tp + fp + fn;
        f1_sum += denom > 0 ? 2.0 * double(tp) / double(denom) : 0.0;
    }
    m.macro_f1 = f1_sum / 2.0;
    return m;
}

ParamViews trainable_params(HybridModel& model) {
    ParamViews views;
    auto add = [&views](double* data, Eigen::Index n) {
        views.emplace_back(data, n);
    };
    add(model.input_pool.W.data(), model.input_pool.W.size());
    add(model.input_pool.b.data(), model.input_pool.b.size());
    if (model.head_mode == HeadMode::Hybrid) {
        add(model.vqc.theta.data(), model.vqc.theta.size());
    }
    add(model.output_pool.W.data(), model.output_pool.W.size());
    add(model.output_pool.b.data(), model.output_pool.b.size());
    if (model.head_mode == HeadMode::ClassicalBaseline) {
        if (!model.classical_hidden) {
            throw ValidationError("trainable_params: baseline model has no hidden layer");
        }
        add(model.classical_hidden->W.data(), model.classical_hidden->W.size());
        add(model.classical_hidden->b.data(), model.classical_hidden->b.size());
    }
    return views;
}

std::vector<Eigen::VectorXd> gradient_blocks(const GradientBundle& grads,
                                             const HybridModel& model) {
    std::vector<Eigen::VectorXd> blocks;
    auto add = [&blocks](const double* data, Eigen::Index n) {
        blocks.emplace_back(Eigen::Map<const Eigen::VectorXd>(data, n));
    };
    add(grads.d_input_w.data(), grads.d_input_w.size());
    add(grads.d_input_b.data(), grads.d_input_b.size());
    if (model.head_mode == HeadMode::Hybrid) {
        add(grads.d_theta.data(), grads.d_theta.size());
    }
    add(grads.d_output_w.data(), grads.d_output_w.size());
    add(grads.d_output_b.data(), grads.d_output_b.size());
    if (model.head_mode == HeadMode::ClassicalBaseline) {
        add(grads.d_hidden_w.data(), grads.d_hidden_w.size());
        add(grads.d_hidden_b.data(), grads.d_hidden_b.size());
    }
    return blocks;
}

namespace {

void check_step_shapes(const ParamViews& params, const std::vector<Eigen::VectorXd>& grads) {
    if (params.size() != grads.size()) {
        throw ValidationError("optimizer step: block count mismatch");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].size() != grads[i].size()) {
            throw ValidationError("optimizer step: block " + std::to_string(i) +
                                  " size mismatch");
        }
    }
}

}  // namespace

void sgd_step(ParamViews& params, const std::vector<Eigen::VectorXd>& grads, double lr) {
    check_step_shapes(params, grads);
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= lr * grads[i];
    }
}

AdamState AdamState::for_params(const ParamViews& params) {
    AdamState state;
    state.m.reserve(params.size());
    state.v.reserve(params.size());
    for (const auto& p : params) {
        state.m.push_back(Eigen::VectorXd::Zero(p.size()));
        state.v.push_back(Eigen::VectorXd::Zero(p.size()));
    }
    return state;
}

void adam_step(ParamViews& params, const std::vector<Eigen::VectorXd>& grads, AdamState& state,
               double lr) {
    check_step_shapes(params, grads);
    if (state.m.size() != params.size()) {
        throw ValidationError("adam_step: state does not match parameter blocks");
    }
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] +
                     (1.0 - state.beta2) * grads[i].array().square().matrix();
        const Eigen::ArrayXd m_hat = state.m[i].array() / bc1;
        const Eigen::ArrayXd v_hat = state.v[i].array() / bc2;
        params[i] -= (lr * m_hat / (v_hat.sqrt() + state.epsilon)).matrix();
    }
}

TrainResult train(HybridModel model, const EmbeddingDataset& dataset, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
    check_config(config);
    validate(dataset);
    if (dataset.size() == 0) {
        throw ValidationError("train: empty dataset");
    }
    if (dataset.dim() != model.d_in()) {
        throw ValidationError("train: dataset dim " + std::to_string(dataset.dim()) +
                              " does not match model d_in " + std::to_string(model.d_in()));
    }

    const SplitResult parts = split(dataset, config.val_fraction, mix_seed(config.seed, kSplitTag));
    if (parts.train.size() == 0) {
        throw ValidationError("train: empty train split");
    }

    TrainReport report;
    report.config = config;
    report.train_split_hash = dataset_hash(parts.train);
    report.val_split_hash = dataset_hash(parts.val);

    ParamViews params = trainable_params(model);
    AdamState adam = AdamState::for_params(params);

    std::vector<Eigen::Index> order(std::size_t(parts.train.size()));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::vector<Eigen::VectorXd> batch_grads;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();

        Rng shuffle_rng(mix_seed(config.seed, kShuffleTagBase + std::uint64_t(epoch)));
        for (Eigen::Index i = Eigen::Index(order.size()) - 1; i > 0; --i) {
            std::swap(order[std::size_t(i)], order[shuffle_rng.bounded(std::uint64_t(i) + 1)]);
        }

        double loss_sum = 0.0;
        for (std::size_t offset = 0; offset < order.size(); offset += std::size_t(config.batch_size)) {
            const std::size_t end = std::min(order.size(), offset + std::size_t(config.batch_size));

            batch_grads.clear();
            for (const auto& p : params) batch_grads.emplace_back(Eigen::VectorXd::Zero(p.size()));
            for (std::size_t k = offset; k < end; ++k) {
                const Eigen::Index row = order[k];
                const BackwardResult back =
                    backward_hybrid(model, parts.train.features.row(row).transpose(),
                                    one_hot(parts.train.labels[row]));
                loss_sum += back.loss;
                report.total_quantum_evals += back.grads.quantum_evals;
                const std::vector<Eigen::VectorXd> sample = gradient_blocks(back.grads, model);
                for (std::size_t b = 0; b < sample.size(); ++b) batch_grads[b] += sample[b];
            }
            const double inv = 1.0 / double(end - offset);
            for (auto& g : batch_grads) g *= inv;

            if (config.optimizer == OptimizerKind::Adam) {
                adam_step(params, batch_grads, adam, config.learning_rate);
            } else {
                sgd_step(params, batch_grads, config.learning_rate);
            }
        }

        EpochRecord record;
        record.epoch = epoch;
        record.train_loss = loss_sum / double(parts.train.size());
        const Metrics train_metrics = evaluate(model, parts.train);
        record.train_acc = train_metrics.accuracy;
        record.train_f1 = train_metrics.macro_f1;
        if (parts.val.size() > 0) {
            const Metrics val_metrics = evaluate(model, parts.val);
            record.val_acc = val_metrics.accuracy;
            record.val_f1 = val_metrics.macro_f1;
        }
        record.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.epochs.push_back(record);
        if (on_epoch) on_epoch(record);
    }

    report.final_train_acc = report.epochs.back().train_acc;
    report.final_train_f1 = report.epochs.back().train_f1;
    report.final_val_acc = report.epochs.back().val_acc;
    report.final_val_f1 = report.epochs.back().val_f1;
    return {std::move(model), std::move(report)};
}

}  // namespace hqc
