#pragma once

#include "hqc/rng.hpp"
#include "hqc/statevector.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hqc::verify {

/// Self-check suites comparing the engine against the dense oracle and the
/// parameter-shift gradients against finite differences. Run by the `verify`
/// CLI subcommand and reused by the acceptance tests.

struct Options {
    int circuits = 200;       // random circuits for the equivalence suite
    int max_gates = 30;
    int min_qubits = 2;
    int max_qubits = 6;
    int gradient_models = 20; // random hybrid models for the gradient suite
    std::uint64_t seed = 20240901;
    /// Test-only fault: applies every CNOT with control and target swapped
    /// on the engine side, to demonstrate the oracle suite catches it.
    bool inject_cnot_swap = false;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    int checks = 0;
    double worst_error = 0.0;
    std::string detail;  // populated on failure
};

/// Uniform random circuit over {H, Ry, CNOT}.
std::vector<GateOp> random_circuit(Rng& rng, int num_qubits, int num_gates);

/// Random normalized state (real and imaginary parts ~ N(0,1), renormalized).
Statevector random_state(Rng& rng, int num_qubits);

/// Engine amplitudes vs dense tensor-product oracle, elementwise 1e-10.
SuiteResult run_oracle_equivalence(const Options& options);

/// Parameter-shift + chain-rule gradients vs central finite differences
/// (h = 1e-5), relative 1e-4 with absolute floor 1e-7, over every block of
/// random hybrid models.
SuiteResult run_gradient_checks(const Options& options);

/// Norm preservation (1e-10), inverse-sequence recovery (1e-9), <Z> bounds,
/// and the analytic product form of the angle encoding (1e-12).
SuiteResult run_invariants(const Options& options);

std::vector<SuiteResult> run_all(const Options& options);

}  // namespace hqc::verify
