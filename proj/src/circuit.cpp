#include "hqc/circuit.hpp"

#include "hqc/errors.hpp"

#include <cmath>
#include <string>

namespace hqc {

void validate(const CircuitSpec& spec) {
    if (spec.n_q < 2 || spec.n_q > kMaxQubits) {
        throw ConfigError("circuit n_q must be in [2, " + std::to_string(kMaxQubits) +
                          "] (entanglement needs two qubits), got " + std::to_string(spec.n_q));
    }
    if (spec.depth < 1) {
        throw ConfigError("circuit depth must be >= 1, got " + std::to_string(spec.depth));
    }
}

namespace {

void check_features(const Eigen::VectorXd& features, int n_q, const char* what) {
    if (features.size() != n_q) {
        throw ValidationError(std::string(what) + ": expected " + std::to_string(n_q) +
                              " features, got " + std::to_string(features.size()));
    }
    if (!features.allFinite()) {
        throw ValidationError(std::string(what) + ": non-finite feature value");
    }
}

void check_params(const VqcParams& params, const CircuitSpec& spec) {
    if (params.theta.rows() != spec.depth || params.theta.cols() != spec.n_q) {
        throw ValidationError("vqc params shape " + std::to_string(params.theta.rows()) + "x" +
                              std::to_string(params.theta.cols()) + " does not match spec " +
                              std::to_string(spec.depth) + "x" + std::to_string(spec.n_q));
    }
    if (!params.theta.allFinite()) {
        throw ValidationError("vqc params contain non-finite angles");
    }
}

}  // namespace

std::vector<GateOp> encoding_ops(const Eigen::VectorXd& features) {
    std::vector<GateOp> ops;
    ops.reserve(std::size_t(features.size()));
    for (Eigen::Index i = 0; i < features.size(); ++i) {
        ops.push_back(GateOp::ry(int(i), 2.0 * features[i]));
    }
    return ops;
}

std::vector<GateOp> vqc_ops(const VqcParams& params, const CircuitSpec& spec) {
    validate(spec);
    check_params(params, spec);
    std::vector<GateOp> ops;
    const int cnots = spec.topology == EntangleTopology::Ring ? spec.n_q : spec.n_q - 1;
    ops.reserve(std::size_t(spec.n_q + spec.depth * (spec.n_q + cnots)));
    for (int q = 0; q < spec.n_q; ++q) ops.push_back(GateOp::h(q));
    for (int layer = 0; layer < spec.depth; ++layer) {
        for (int q = 0; q < spec.n_q; ++q) {
            ops.push_back(GateOp::ry(q, params.theta(layer, q)));
        }
        for (int q = 0; q + 1 < spec.n_q; ++q) {
            ops.push_back(GateOp::cnot(q, q + 1));
        }
        if (spec.topology == EntangleTopology::Ring) {
            ops.push_back(GateOp::cnot(spec.n_q - 1, 0));
        }
    }
    return ops;
}

Statevector encode(const Eigen::VectorXd& features, int n_q) {
    check_features(features, n_q, "encode");
    Statevector state(n_q);
    for (Eigen::Index i = 0; i < features.size(); ++i) {
        apply_ry(state, int(i), 2.0 * features[i]);
    }
    return state;
}

void apply_vqc(Statevector& state, const VqcParams& params, const CircuitSpec& spec) {
    if (state.num_qubits != spec.n_q) {
        throw ValidationError("apply_vqc: state has " + std::to_string(state.num_qubits) +
                              " qubits, spec expects " + std::to_string(spec.n_q));
    }
    apply_gates(state, vqc_ops(params, spec));
}

Eigen::VectorXd forward_quantum(const Eigen::VectorXd& features, const VqcParams& params,
                                const CircuitSpec& spec) {
    Statevector state = encode(features, spec.n_q);
    apply_vqc(state, params, spec);
    return expect_z_all(state);
}

Eigen::VectorXd forward_from_angles(const Eigen::VectorXd& enc_angles, const VqcParams& params,
                                    const CircuitSpec& spec) {
    check_features(enc_angles, spec.n_q, "forward_from_angles");
    Statevector state(spec.n_q);
    for (Eigen::Index i = 0; i < enc_angles.size(); ++i) {
        apply_ry(state, int(i), enc_angles[i]);
    }
    apply_vqc(state, params, spec);
    return expect_z_all(state);
}

}  // namespace hqc
