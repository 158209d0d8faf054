#include "hqc/oracle.hpp"

#include "hqc/errors.hpp"

#include <cmath>
#include <string>

namespace hqc::oracle {

namespace {

DenseMatrix identity(Eigen::Index dim) { return DenseMatrix::Identity(dim, dim); }

DenseMatrix h_matrix() {
    const double r = 0.70710678118654752440;
    DenseMatrix m(2, 2);
    m << r, r, r, -r;
    return m;
}

DenseMatrix ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    DenseMatrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

DenseMatrix x_matrix() {
    DenseMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

/// Places a 2x2 factor on one qubit slot, identity elsewhere. Slots are
/// combined most-significant-first so qubit 0 lands on the lowest index bit.
DenseMatrix single_qubit_full(const DenseMatrix& g, int qubit, int num_qubits) {
    DenseMatrix full(1, 1);
    full(0, 0) = 1.0;
    for (int slot = num_qubits - 1; slot >= 0; --slot) {
        full = kron(full, slot == qubit ? g : identity(2));
    }
    return full;
}

void check_qubits(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxOracleQubits) {
        throw ConfigError("dense oracle supports 1.." + std::to_string(kMaxOracleQubits) +
                          " qubits, got " + std::to_string(num_qubits));
    }
}

}  // namespace

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DenseMatrix gate_matrix(const GateOp& op, int num_qubits) {
    check_qubits(num_qubits);
    if (op.target < 0 || op.target >= num_qubits) {
        throw IndexError("gate_matrix: target out of range");
    }
    switch (op.kind) {
        case GateKind::H:
            return single_qubit_full(h_matrix(), op.target, num_qubits);
        case GateKind::Ry:
            return single_qubit_full(ry_matrix(op.angle), op.target, num_qubits);
        case GateKind::Cnot: {
            if (op.control < 0 || op.control >= num_qubits) {
                throw IndexError("gate_matrix: control out of range");
            }
            if (op.control == op.target) {
                throw ValidationError("gate_matrix: control and target must differ");
            }
            DenseMatrix p0(2, 2), p1(2, 2);
            p0 << 1, 0, 0, 0;
            p1 << 0, 0, 0, 1;
            // P0 on control (x identity everywhere) + P1 on control with X on target.
            DenseMatrix term0(1, 1), term1(1, 1);
            term0(0, 0) = 1.0;
            term1(0, 0) = 1.0;
            for (int slot = num_qubits - 1; slot >= 0; --slot) {
                const DenseMatrix f0 = slot == op.control ? p0 : identity(2);
                DenseMatrix f1 = identity(2);
                if (slot == op.control) f1 = p1;
                if (slot == op.target) f1 = x_matrix();
                term0 = kron(term0, f0);
                term1 = kron(term1, f1);
            }
            return term0 + term1;
        }
    }
    throw ValidationError("gate_matrix: unknown gate kind");
}

DenseMatrix dense_circuit(const std::vector<GateOp>& ops, int num_qubits) {
    check_qubits(num_qubits);
    DenseMatrix u = identity(Eigen::Index(1) << num_qubits);
    for (const GateOp& op : ops) {
        u = gate_matrix(op, num_qubits) * u;
    }
    return u;
}

Eigen::VectorXcd dense_run(const std::vector<GateOp>& ops, int num_qubits) {
    check_qubits(num_qubits);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(1) << num_qubits);
    psi[0] = 1.0;
    return dense_circuit(ops, num_qubits) * psi;
}

double unitarity_defect(const DenseMatrix& u) {
    const DenseMatrix residual = u.adjoint() * u - identity(u.rows());
    return residual.cwiseAbs().maxCoeff();
}

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& p, double h) {
    if (!(h > 0.0)) {
        throw ValidationError("fd_gradient: step h must be positive");
    }
    Eigen::VectorXd grad(p.size());
    Eigen::VectorXd probe = p;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        probe[i] = p[i] + h;
        const double fp = f(probe);
        probe[i] = p[i] - h;
        const double fm = f(probe);
        probe[i] = p[i];
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw ValidationError("fd_gradient: non-finite loss value");
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace hqc::oracle
