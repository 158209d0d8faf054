#include "hqc/autodiff.hpp"

#include "hqc/errors.hpp"

#include <cmath>
#include <string>

namespace hqc {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

void check_upstream(const Eigen::VectorXd& upstream, const CircuitSpec& spec) {
    if (upstream.size() != spec.n_q) {
        throw ValidationError("param shift: upstream length " + std::to_string(upstream.size()) +
                              " does not match n_q " + std::to_string(spec.n_q));
    }
}

}  // namespace

Eigen::MatrixXd param_shift_grad_theta(const Eigen::VectorXd& features, const VqcParams& params,
                                       const CircuitSpec& spec, const Eigen::VectorXd& upstream) {
    check_upstream(upstream, spec);
    const Eigen::VectorXd enc_angles = 2.0 * features;
    Eigen::MatrixXd grad(spec.depth, spec.n_q);
    VqcParams shifted = params;
    for (int l = 0; l < spec.depth; ++l) {
        for (int q = 0; q < spec.n_q; ++q) {
            const double original = shifted.theta(l, q);
            shifted.theta(l, q) = original + kHalfPi;
            const Eigen::VectorXd y_plus = forward_from_angles(enc_angles, shifted, spec);
            shifted.theta(l, q) = original - kHalfPi;
            const Eigen::VectorXd y_minus = forward_from_angles(enc_angles, shifted, spec);
            shifted.theta(l, q) = original;
            grad(l, q) = upstream.dot(0.5 * (y_plus - y_minus));
        }
    }
    return grad;
}

Eigen::VectorXd param_shift_grad_features(const Eigen::VectorXd& features, const VqcParams& params,
                                          const CircuitSpec& spec,
                                          const Eigen::VectorXd& upstream) {
    check_upstream(upstream, spec);
    Eigen::VectorXd enc_angles = 2.0 * features;
    Eigen::VectorXd grad(spec.n_q);
    for (int q = 0; q < spec.n_q; ++q) {
        const double original = enc_angles[q];
        enc_angles[q] = original + kHalfPi;
        const Eigen::VectorXd y_plus = forward_from_angles(enc_angles, params, spec);
        enc_angles[q] = original - kHalfPi;
        const Eigen::VectorXd y_minus = forward_from_angles(enc_angles, params, spec);
        enc_angles[q] = original;
        // d/dd = 2 * d/dtheta_enc because theta_enc = 2 d.
        grad[q] = 2.0 * upstream.dot(0.5 * (y_plus - y_minus));
    }
    return grad;
}

BackwardResult backward_hybrid(const HybridModel& model, const Eigen::VectorXd& input,
                               const Eigen::Vector2d& target_onehot) {
    if (input.size() != model.d_in()) {
        throw ValidationError("backward_hybrid: input size " + std::to_string(input.size()) +
                              " does not match model d_in " + std::to_string(model.d_in()));
    }

    // Primal forward, keeping intermediates for the analytic chain.
    const double scale = tanh_halfpi_scale();
    const Eigen::VectorXd u = model.input_pool.W * input + model.input_pool.b;
    const Eigen::ArrayXd tanh_u = u.array().tanh();
    const Eigen::VectorXd d = scale * tanh_u;

    BackwardResult out;
    Eigen::VectorXd mid;             // quantum y_out or classical hidden output
    Eigen::ArrayXd hidden_tanh;      // baseline only
    if (model.head_mode == HeadMode::Hybrid) {
        mid = forward_quantum(d, model.vqc, model.circuit);
        out.grads.quantum_evals = 1;
    } else {
        if (!model.classical_hidden) {
            throw ValidationError("backward_hybrid: baseline model has no hidden layer");
        }
        hidden_tanh = (model.classical_hidden->W * d + model.classical_hidden->b).array().tanh();
        mid = hidden_tanh;
    }
    const Eigen::Vector2d logits = model.output_pool.W * mid + model.output_pool.b;
    const Eigen::Vector2d probs = softmax2(logits);
    out.probs = probs;
    out.loss = mse_loss(probs, target_onehot);

    // Head: L = 1/2 ||p - t||^2 through softmax.
    // dL/dz_k = p_k * ( (p_k - t_k) - sum_c (p_c - t_c) p_c ).
    const Eigen::Vector2d dp = probs - target_onehot;
    const double dot = dp.dot(probs);
    const Eigen::Vector2d dz = probs.array() * (dp.array() - dot);

    out.grads.d_output_w = dz * mid.transpose();
    out.grads.d_output_b = dz;
    const Eigen::VectorXd d_mid = model.output_pool.W.transpose() * dz;

    Eigen::VectorXd dd;
    if (model.head_mode == HeadMode::Hybrid) {
        out.grads.d_theta = param_shift_grad_theta(d, model.vqc, model.circuit, d_mid);
        dd = param_shift_grad_features(d, model.vqc, model.circuit, d_mid);
        out.grads.quantum_evals +=
            2 * std::int64_t(model.circuit.depth) * model.circuit.n_q + 2 * model.circuit.n_q;
        out.grads.d_hidden_w.resize(0, 0);
        out.grads.d_hidden_b.resize(0);
    } else {
        const Eigen::VectorXd dv = d_mid.array() * (1.0 - hidden_tanh.square());
        out.grads.d_hidden_w = dv * d.transpose();
        out.grads.d_hidden_b = dv;
        dd = model.classical_hidden->W.transpose() * dv;
        out.grads.d_theta.resize(0, 0);
    }
    out.grads.d_features = dd;

    // Input pooling: d = scale * tanh(u), so dd/du = scale * (1 - tanh^2 u).
    const Eigen::VectorXd du = dd.array() * scale * (1.0 - tanh_u.square());
    out.grads.d_input_w = du * input.transpose();
    out.grads.d_input_b = du;
    return out;
}

}  // namespace hqc
