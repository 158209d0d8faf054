#include "hqc/verify.hpp"

#include "hqc/autodiff.hpp"
#include "hqc/circuit.hpp"
#include "hqc/model.hpp"
#include "hqc/oracle.hpp"
#include "hqc/training.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

void apply_engine_gates(Statevector& state, const std::vector<GateOp>& ops, bool swap_cnot) {
    for (const GateOp& op : ops) {
        if (swap_cnot && op.kind == GateKind::Cnot) {
            apply_cnot(state, op.target, op.control);
        } else {
            apply_gate(state, op);
        }
    }
}

}  // namespace

std::vector<GateOp> random_circuit(Rng& rng, int num_qubits, int num_gates) {
    std::vector<GateOp> ops;
    ops.reserve(std::size_t(num_gates));
    for (int g = 0; g < num_gates; ++g) {
        const int target = int(rng.bounded(std::uint64_t(num_qubits)));
        switch (rng.bounded(3)) {
            case 0:
                ops.push_back(GateOp::h(target));
                break;
            case 1:
                ops.push_back(GateOp::ry(target, rng.uniform(-kPi, kPi)));
                break;
            default: {
                int control = int(rng.bounded(std::uint64_t(num_qubits - 1)));
                if (control >= target) ++control;
                ops.push_back(GateOp::cnot(control, target));
                break;
            }
        }
    }
    return ops;
}

Statevector random_state(Rng& rng, int num_qubits) {
    Statevector state(num_qubits);
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
        state.amps[k] = Amplitude(rng.normal(), rng.normal());
    }
    state.amps /= std::sqrt(state.norm_sq());
    return state;
}

SuiteResult run_oracle_equivalence(const Options& options) {
    SuiteResult result;
    result.name = "oracle-equivalence";
    Rng rng(mix_seed(options.seed, 0xA));
    double worst = 0.0;
    for (int trial = 0; trial < options.circuits; ++trial) {
        const int n = options.min_qubits +
                      int(rng.bounded(std::uint64_t(options.max_qubits - options.min_qubits + 1)));
        const int gates = 1 + int(rng.bounded(std::uint64_t(options.max_gates)));
        const std::vector<GateOp> ops = random_circuit(rng, n, gates);

        Statevector engine(n);
        apply_engine_gates(engine, ops, options.inject_cnot_swap);
        const Eigen::VectorXcd expected = oracle::dense_run(ops, n);

        const double err = (engine.amps - expected).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        ++result.checks;
        if (err > 1e-10) {
            std::ostringstream msg;
            msg << "circuit " << trial << " (n=" << n << ", gates=" << gates
                << "): max amplitude error " << err;
            result.detail = msg.str();
            result.worst_error = worst;
            return result;
        }
    }
    result.worst_error = worst;
    result.passed = true;
    return result;
}

SuiteResult run_gradient_checks(const Options& options) {
    SuiteResult result;
    result.name = "gradient-check";
    Rng rng(mix_seed(options.seed, 0xB));
    double worst = 0.0;
    for (int trial = 0; trial < options.gradient_models; ++trial) {
        ModelConfig config;
        config.n_q = 2 + int(rng.bounded(3));   // 2..4
        config.depth = 1 + int(rng.bounded(3)); // 1..3
        config.d_in = 2 + int(rng.bounded(7));  // 2..8
        config.topology = rng.bounded(2) == 0 ? EntangleTopology::Chain : EntangleTopology::Ring;
        HybridModel model = init_params(config, rng.next_u64());
        // Move away from the near-zero init so the check sees generic angles.
        for (int l = 0; l < config.depth; ++l) {
            for (int q = 0; q < config.n_q; ++q) {
                model.vqc.theta(l, q) = rng.uniform(-kPi, kPi);
            }
        }

        Eigen::VectorXd input(config.d_in);
        for (int i = 0; i < config.d_in; ++i) input[i] = rng.normal();
        const Eigen::Vector2d target = one_hot(int(rng.bounded(2)));

        const BackwardResult back = backward_hybrid(model, input, target);
        const std::vector<Eigen::VectorXd> analytic = gradient_blocks(back.grads, model);

        ParamViews params = trainable_params(model);
        for (std::size_t block = 0; block < params.size(); ++block) {
            Eigen::Map<Eigen::VectorXd>& p = params[block];
            const Eigen::VectorXd loss_grad = oracle::fd_gradient(
                [&](const Eigen::VectorXd& candidate) {
                    const Eigen::VectorXd saved = p;
                    p = candidate;
                    const ForwardResult f = forward(model, input);
                    p = saved;
                    return mse_loss(f.probs, target);
                },
                p, 1e-5);
            for (Eigen::Index i = 0; i < p.size(); ++i) {
                const double got = analytic[block][i];
                const double want = loss_grad[i];
                const double err = std::abs(got - want);
                const double bound = std::max(1e-7, 1e-4 * std::abs(want));
                worst = std::max(worst, err);
                ++result.checks;
                if (err > bound) {
                    std::ostringstream msg;
                    msg << "model " << trial << " block " << block << " coord " << i
                        << ": parameter-shift " << got << " vs finite-difference " << want;
                    result.detail = msg.str();
                    result.worst_error = worst;
                    return result;
                }
            }
        }
    }
    result.worst_error = worst;
    result.passed = true;
    return result;
}

SuiteResult run_invariants(const Options& options) {
    SuiteResult result;
    result.name = "invariants";
    Rng rng(mix_seed(options.seed, 0xC));
    double worst = 0.0;
    auto fail = [&](const std::string& detail) {
        result.detail = detail;
        result.worst_error = worst;
        return result;
    };

    // Norm preservation over random states and single gates.
    for (int trial = 0; trial < 100; ++trial) {
        const int n = options.min_qubits +
                      int(rng.bounded(std::uint64_t(
                          std::min(8, options.max_qubits) - options.min_qubits + 1)));
        Statevector state = random_state(rng, n);
        const std::vector<GateOp> ops = random_circuit(rng, n, 1);
        apply_engine_gates(state, ops, options.inject_cnot_swap);
        const double err = std::abs(state.norm_sq() - 1.0);
        worst = std::max(worst, err);
        ++result.checks;
        if (err > 1e-10) {
            return fail("norm drift " + std::to_string(err) + " after a single gate");
        }
    }

    // A gate sequence followed by the reversed inverse sequence restores the state.
    for (int trial = 0; trial < 50; ++trial) {
        const int n = options.min_qubits +
                      int(rng.bounded(std::uint64_t(options.max_qubits - options.min_qubits + 1)));
        Statevector state = random_state(rng, n);
        const Statevector original = state;
        const std::vector<GateOp> ops =
            random_circuit(rng, n, 1 + int(rng.bounded(std::uint64_t(options.max_gates))));
        apply_engine_gates(state, ops, options.inject_cnot_swap);
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            std::vector<GateOp> one{inverse(*it)};
            apply_engine_gates(state, one, options.inject_cnot_swap);
        }
        const double err = (state.amps - original.amps).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        ++result.checks;
        if (err > 1e-9) {
            return fail("inverse-sequence recovery error " + std::to_string(err));
        }
    }

    // <Z> stays within [-1, 1] (tiny slack for rounding).
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + int(rng.bounded(4));
        Statevector state = random_state(rng, n);
        const Eigen::VectorXd e = expect_z_all(state);
        ++result.checks;
        if ((e.array().abs() > 1.0 + 1e-12).any()) {
            return fail("<Z> outside [-1, 1]");
        }
    }

    // Angle encoding equals the analytic tensor product of cos/sin factors.
    for (int trial = 0; trial < 50; ++trial) {
        const int n = options.min_qubits +
                      int(rng.bounded(std::uint64_t(options.max_qubits - options.min_qubits + 1)));
        Eigen::VectorXd features(n);
        for (int i = 0; i < n; ++i) features[i] = rng.uniform(-kPi / 2, kPi / 2);
        const Statevector state = encode(features, n);
        for (Eigen::Index k = 0; k < state.dim(); ++k) {
            double product = 1.0;
            for (int q = 0; q < n; ++q) {
                product *= ((k >> q) & 1) ? std::sin(features[q]) : std::cos(features[q]);
            }
            const double err = std::abs(state.amps[k] - Amplitude(product, 0.0));
            worst = std::max(worst, err);
            ++result.checks;
            if (err > 1e-12) {
                return fail("encoding amplitude error " + std::to_string(err));
            }
        }
    }

    result.worst_error = worst;
    result.passed = true;
    return result;
}

std::vector<SuiteResult> run_all(const Options& options) {
    return {run_oracle_equivalence(options), run_gradient_checks(options),
            run_invariants(options)};
}

}  // namespace hqc::verify
