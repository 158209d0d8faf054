#pragma once

#include "hqc/circuit.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>

namespace hqc {

enum class Activation { TanhHalfPi, Tanh, Identity, Softmax };

/// Affine layer y = act(W x + b). TanhHalfPi is (pi/2) * tanh(z), which keeps
/// the encoding half-angles strictly inside (-pi/2, pi/2) so the per-qubit
/// angle encoding stays injective.
struct DenseLayer {
    Eigen::MatrixXd W;  // out_dim x in_dim
    Eigen::VectorXd b;  // out_dim
    Activation activation = Activation::Identity;
};

Eigen::VectorXd apply(const DenseLayer& layer, const Eigen::VectorXd& x);

/// Scale of the TanhHalfPi activation: one ulp below pi/2, so saturated tanh
/// values land strictly inside the open interval (-pi/2, pi/2).
double tanh_halfpi_scale();

/// Numerically stable softmax over a 2-vector of logits.
Eigen::Vector2d softmax2(const Eigen::Vector2d& logits);

enum class HeadMode { Hybrid, ClassicalBaseline };

struct ModelConfig {
    int d_in = 16;
    int n_q = 4;
    int depth = 4;
    EntangleTopology topology = EntangleTopology::Chain;
    HeadMode head_mode = HeadMode::Hybrid;
};

/// The full classifier: input pooling d_in -> n_q, a middle layer that is
/// either the quantum circuit or a classical tanh layer of identical shape,
/// and output pooling n_q -> 2 followed by softmax.
struct HybridModel {
    DenseLayer input_pool;                      // d_in -> n_q, TanhHalfPi
    CircuitSpec circuit;
    VqcParams vqc;                              // depth x n_q angles
    DenseLayer output_pool;                     // n_q -> 2, Identity
    HeadMode head_mode = HeadMode::Hybrid;
    std::optional<DenseLayer> classical_hidden; // n_q -> n_q, Tanh; baseline only

    int d_in() const { return int(input_pool.W.cols()); }
    int n_q() const { return circuit.n_q; }
};

struct ForwardResult {
    Eigen::Vector2d probs;        // softmax output, sums to 1
    Eigen::VectorXd quantum_out;  // per-qubit <Z>; empty in baseline mode
};

ForwardResult forward(const HybridModel& model, const Eigen::VectorXd& input);

/// Argmax class; an exact probability tie resolves to class 0.
int predict(const HybridModel& model, const Eigen::VectorXd& input);

/// (1/2) * sum_c (probs[c] - target[c])^2 against a one-hot target.
double mse_loss(const Eigen::Vector2d& probs, const Eigen::Vector2d& target_onehot);

Eigen::Vector2d one_hot(int label);

/// Seed-deterministic initialization: VQC angles ~ U(-0.01, 0.01), weight
/// matrices ~ U(-s, s) with s = sqrt(6 / (fan_in + fan_out)), biases zero.
/// Draw order: input W row-major, theta row-major, output W row-major, then
/// (baseline only) hidden W row-major.
HybridModel init_params(const ModelConfig& config, std::uint64_t seed);

/// QHM1 checkpoint format, little-endian:
///   magic "QHM1"
///   u32 d_in, n_q, depth, topology (0 chain / 1 ring), head_mode (0 / 1)
///   f64 blocks: input W row-major, input b, theta row-major, output W
///   row-major, output b; baseline checkpoints append hidden W row-major
///   and hidden b.
/// Writes go to a temp file in the same directory, then rename, so a failed
/// write never leaves a partial checkpoint.
void save_checkpoint(const HybridModel& model, const std::filesystem::path& path);
HybridModel load_checkpoint(const std::filesystem::path& path);

}  // namespace hqc
