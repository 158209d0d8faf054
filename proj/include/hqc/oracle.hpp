#pragma once

#include "hqc/statevector.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace hqc::oracle {

/// Brute-force reference implementations used to cross-check the stride-based
/// engine and the parameter-shift gradients. Deliberately shares no gate
/// application code with the engine: every gate is built as an explicit
/// 2^n x 2^n matrix and circuits are plain matrix products.

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxOracleQubits = 10;

/// Kronecker product, A indexing the more significant subsystem.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Full 2^n x 2^n matrix of a single gate: I x ... x G x ... x I with the
/// factors ordered so that qubit 0 is the least-significant index bit.
/// CNOT is assembled from the projector decomposition P0 x I + P1 x X.
DenseMatrix gate_matrix(const GateOp& op, int num_qubits);

/// Product of the gate matrices in application order (later ops on the left).
DenseMatrix dense_circuit(const std::vector<GateOp>& ops, int num_qubits);

/// dense_circuit applied to |0...0>.
Eigen::VectorXcd dense_run(const std::vector<GateOp>& ops, int num_qubits);

/// max |(U^dagger U - I)_ij|, for unitarity checks.
double unitarity_defect(const DenseMatrix& u);

/// Central finite differences: g_i = (f(p + h e_i) - f(p - h e_i)) / 2h.
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& p, double h = 1e-5);

}  // namespace hqc::oracle
