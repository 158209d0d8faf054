#include "hqc/statevector.hpp"

#include "hqc/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace hqc {

namespace {

void check_target(const Statevector& state, int target, const char* what) {
    if (target < 0 || target >= state.num_qubits) {
        throw IndexError(std::string(what) + ": qubit index " + std::to_string(target) +
                         " out of range for " + std::to_string(state.num_qubits) + " qubits");
    }
}

}  // namespace

Statevector::Statevector(int n) : num_qubits(n) {
    if (n < 1 || n > kMaxQubits) {
        throw ConfigError("num_qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(n));
    }
    amps = AmpVector::Zero(Eigen::Index(1) << n);
    amps[0] = 1.0;
}

void apply_h(Statevector& state, int target) {
    check_target(state, target, "apply_h");
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const std::size_t mask = std::size_t(1) << target;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    Amplitude* a = state.amps.data();
    const std::size_t half = std::size_t(state.dim()) >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        const Amplitude a0 = a[i0];
        const Amplitude a1 = a[i1];
        a[i0] = inv_sqrt2 * (a0 + a1);
        a[i1] = inv_sqrt2 * (a0 - a1);
    }
}

void apply_ry(Statevector& state, int target, double theta) {
    check_target(state, target, "apply_ry");
    if (!std::isfinite(theta)) {
        throw ValidationError("apply_ry: non-finite angle");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t mask = std::size_t(1) << target;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    Amplitude* a = state.amps.data();
    const std::size_t half = std::size_t(state.dim()) >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        const Amplitude a0 = a[i0];
        const Amplitude a1 = a[i1];
        a[i0] = c * a0 - s * a1;
        a[i1] = s * a0 + c * a1;
    }
}

void apply_cnot(Statevector& state, int control, int target) {
    check_target(state, target, "apply_cnot");
    check_target(state, control, "apply_cnot");
    if (control == target) {
        throw ValidationError("apply_cnot: control and target must differ");
    }
    const std::size_t cmask = std::size_t(1) << control;
    const std::size_t tmask = std::size_t(1) << target;
    Amplitude* a = state.amps.data();
    const std::size_t n = std::size_t(state.dim());
    // Visit each swapped pair once: control bit set, target bit clear.
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(a[i], a[i | tmask]);
        }
    }
}

void apply_gate(Statevector& state, const GateOp& op) {
    switch (op.kind) {
        case GateKind::H: apply_h(state, op.target); break;
        case GateKind::Ry: apply_ry(state, op.target, op.angle); break;
        case GateKind::Cnot: apply_cnot(state, op.control, op.target); break;
    }
}

void apply_gates(Statevector& state, const std::vector<GateOp>& ops) {
    for (const GateOp& op : ops) apply_gate(state, op);
}

GateOp inverse(const GateOp& op) {
    GateOp inv = op;
    if (op.kind == GateKind::Ry) inv.angle = -op.angle;
    return inv;
}

double expect_z(const Statevector& state, int target) {
    check_target(state, target, "expect_z");
    const std::size_t mask = std::size_t(1) << target;
    const Amplitude* a = state.amps.data();
    const std::size_t n = std::size_t(state.dim());
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(a[k]);
        acc += (k & mask) ? -p : p;
    }
    return acc;
}

Eigen::VectorXd expect_z_all(const Statevector& state) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(state.num_qubits);
    const Amplitude* a = state.amps.data();
    const std::size_t n = std::size_t(state.dim());
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(a[k]);
        for (int q = 0; q < state.num_qubits; ++q) {
            e[q] += ((k >> q) & 1) ? -p : p;
        }
    }
    return e;
}

}  // namespace hqc
