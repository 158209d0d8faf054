#pragma once

#include "hqc/model.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace hqc {

/// Gradients of the scalar loss with respect to every trainable block.
/// Hidden-layer blocks are 0x0 for hybrid models (the quantum circuit has no
/// hidden dense layer); d_theta is 0x0 for baseline models.
struct GradientBundle {
    Eigen::MatrixXd d_theta;      // depth x n_q
    Eigen::VectorXd d_features;   // dL/dd_i, length n_q
    Eigen::MatrixXd d_input_w;
    Eigen::VectorXd d_input_b;
    Eigen::MatrixXd d_output_w;
    Eigen::VectorXd d_output_b;
    Eigen::MatrixXd d_hidden_w;
    Eigen::VectorXd d_hidden_b;
    std::int64_t quantum_evals = 0;  // circuit executions consumed (primal + shifts)
};

/// Parameter-shift gradient of upstream . y_out with respect to every VQC
/// angle: d<Z_k>/dtheta = ( <Z_k>(theta + pi/2) - <Z_k>(theta - pi/2) ) / 2,
/// exact for Ry generators. Costs exactly 2 * depth * n_q circuit runs.
Eigen::MatrixXd param_shift_grad_theta(const Eigen::VectorXd& features, const VqcParams& params,
                                       const CircuitSpec& spec, const Eigen::VectorXd& upstream);

/// Same shift rule applied to the encoding rotations. The encoding angle is
/// 2 d_i, so dL/dd_i = 2 * dL/dtheta_enc,i. Costs exactly 2 * n_q runs.
Eigen::VectorXd param_shift_grad_features(const Eigen::VectorXd& features, const VqcParams& params,
                                          const CircuitSpec& spec,
                                          const Eigen::VectorXd& upstream);

struct BackwardResult {
    double loss = 0.0;
    Eigen::Vector2d probs = Eigen::Vector2d::Zero();  // from the primal forward pass
    GradientBundle grads;
};

/// Loss and full gradient for one sample: analytic chain rule through the
/// softmax+MSE head and the pooling layers, parameter-shift through the
/// quantum layer. A hybrid backward pass runs exactly
/// 1 + 2 * (depth * n_q + n_q) circuit evaluations.
BackwardResult backward_hybrid(const HybridModel& model, const Eigen::VectorXd& input,
                               const Eigen::Vector2d& target_onehot);

}  // namespace hqc
