#pragma once

#include "hqc/statevector.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hqc {

enum class EntangleTopology { Chain, Ring };

/// Topology of the fixed ansatz: one H layer, then `depth` blocks of
/// per-qubit Ry rotations followed by a CNOT chain (optionally closed
/// into a ring by an extra CNOT from the last qubit back to qubit 0).
struct CircuitSpec {
    int n_q = 2;
    int depth = 4;
    EntangleTopology topology = EntangleTopology::Chain;
};

/// Throws ConfigError unless 2 <= n_q <= kMaxQubits and depth >= 1.
/// Two qubits are the minimum because every topology entangles.
void validate(const CircuitSpec& spec);

/// Trainable rotation angles, one row per block: theta(layer, qubit).
struct VqcParams {
    Eigen::MatrixXd theta;  // depth x n_q

    static VqcParams zero(const CircuitSpec& spec) {
        return {Eigen::MatrixXd::Zero(spec.depth, spec.n_q)};
    }
};

/// Angle-encoding gates: Ry(2 d_i) on qubit i, preparing the product state
/// with per-qubit amplitudes [cos(d_i), sin(d_i)] from |0...0>.
std::vector<GateOp> encoding_ops(const Eigen::VectorXd& features);

/// Variational block gates: H on every qubit, then depth x [Ry row; CNOTs].
std::vector<GateOp> vqc_ops(const VqcParams& params, const CircuitSpec& spec);

/// Prepares the encoded state. `features` holds the half-angles d_i;
/// its length must equal n_q.
Statevector encode(const Eigen::VectorXd& features, int n_q);

/// Runs the variational block in place. Params shape must match the spec.
void apply_vqc(Statevector& state, const VqcParams& params, const CircuitSpec& spec);

/// Full quantum forward pass: encode, run the VQC, read out per-qubit <Z>.
Eigen::VectorXd forward_quantum(const Eigen::VectorXd& features, const VqcParams& params,
                                const CircuitSpec& spec);

/// Same forward pass but taking the raw encoding rotation angles
/// (enc_angles = 2 * features). The parameter-shift rule shifts these
/// angles directly.
Eigen::VectorXd forward_from_angles(const Eigen::VectorXd& enc_angles, const VqcParams& params,
                                    const CircuitSpec& spec);

}  // namespace hqc
