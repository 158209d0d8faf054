#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace hqc {

using Amplitude = std::complex<double>;
using AmpVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 24;  // 2^24 amplitudes, ~256 MiB

/// Dense n-qubit register. Basis index convention is little-endian:
/// qubit j corresponds to bit j of the amplitude index (qubit 0 = LSB),
/// so |q_{n-1} ... q_1 q_0> lives at index sum_j q_j 2^j.
struct Statevector {
    /// Constructs |0...0>: amplitude 1 at index 0.
    explicit Statevector(int num_qubits);

    int num_qubits = 0;
    AmpVector amps;

    Eigen::Index dim() const { return amps.size(); }
    double norm_sq() const { return amps.squaredNorm(); }
};

enum class GateKind { H, Ry, Cnot };

/// One gate of the H / Ry / CNOT set the circuit uses.
struct GateOp {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;   // CNOT only
    double angle = 0.0; // Ry only

    static GateOp h(int target) { return {GateKind::H, target, -1, 0.0}; }
    static GateOp ry(int target, double angle) { return {GateKind::Ry, target, -1, angle}; }
    static GateOp cnot(int control, int target) { return {GateKind::Cnot, target, control, 0.0}; }
};

/// H on `target`: pairs (a0, a1) across the target bit become
/// ((a0+a1)/sqrt2, (a0-a1)/sqrt2). In place.
void apply_h(Statevector& state, int target);

/// Ry(theta) on `target`, matrix [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
void apply_ry(Statevector& state, int target, double theta);

/// CNOT: flips the target bit of every basis state whose control bit is 1.
void apply_cnot(Statevector& state, int control, int target);

void apply_gate(Statevector& state, const GateOp& op);
void apply_gates(Statevector& state, const std::vector<GateOp>& ops);

/// Inverse of a gate: H and CNOT are involutions, Ry(t) -> Ry(-t).
GateOp inverse(const GateOp& op);

/// <Z_target> = sum_k s_k |a_k|^2 with s_k = +1 when bit `target` of k is 0.
double expect_z(const Statevector& state, int target);

/// Per-qubit <Z> in one pass over the amplitudes.
Eigen::VectorXd expect_z_all(const Statevector& state);

}  // namespace hqc
