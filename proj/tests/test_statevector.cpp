#include "hqc/statevector.hpp"

#include "hqc/errors.hpp"
#include "hqc/oracle.hpp"
#include "hqc/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace hqc;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("zero state construction") {
    Statevector one(1);
    CHECK(one.amps[0] == Amplitude(1.0, 0.0));
    CHECK(one.amps[1] == Amplitude(0.0, 0.0));

    Statevector two(2);
    CHECK(two.dim() == 4);
    CHECK(two.amps[0] == Amplitude(1.0, 0.0));
    for (int k = 1; k < 4; ++k) CHECK(two.amps[k] == Amplitude(0.0, 0.0));

    CHECK(Statevector(3).norm_sq() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(Statevector(0), ConfigError);
    CHECK_THROWS_AS(Statevector(kMaxQubits + 1), ConfigError);
}

TEST_CASE("hadamard basics") {
    Statevector s(1);
    apply_h(s, 0);
    CHECK(std::abs(s.amps[0] - Amplitude(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(s.amps[1] - Amplitude(kInvSqrt2, 0)) < 1e-15);

    // H is an involution.
    Rng rng(11);
    Statevector r = verify::random_state(rng, 3);
    const Statevector before = r;
    apply_h(r, 1);
    apply_h(r, 1);
    CHECK((r.amps - before.amps).cwiseAbs().maxCoeff() < 1e-12);

    // Bit-index convention: H on qubit 1 of |00> populates index 2^1.
    Statevector two(2);
    apply_h(two, 1);
    CHECK(std::abs(two.amps[0] - Amplitude(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(two.amps[2] - Amplitude(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(two.amps[1]) == 0.0);
    CHECK(std::abs(two.amps[3]) == 0.0);

    CHECK_THROWS_AS(apply_h(two, 2), IndexError);
    CHECK_THROWS_AS(apply_h(two, -1), IndexError);
}

TEST_CASE("bit ordering: H on qubit j touches exactly index 2^j") {
    for (int n = 1; n <= 6; ++n) {
        for (int j = 0; j < n; ++j) {
            Statevector s(n);
            apply_h(s, j);
            for (Eigen::Index k = 0; k < s.dim(); ++k) {
                if (k == 0 || k == (Eigen::Index(1) << j)) {
                    CHECK(std::abs(s.amps[k] - Amplitude(kInvSqrt2, 0)) < 1e-15);
                } else {
                    CHECK(std::abs(s.amps[k]) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("ry rotation") {
    Statevector s(1);
    apply_ry(s, 0, M_PI);
    CHECK(std::abs(s.amps[0]) < 1e-12);
    CHECK(std::abs(s.amps[1] - Amplitude(1, 0)) < 1e-12);

    // Ry(0) is the identity.
    Rng rng(5);
    Statevector r = verify::random_state(rng, 2);
    const Statevector before = r;
    apply_ry(r, 0, 0.0);
    CHECK((r.amps - before.amps).cwiseAbs().maxCoeff() == 0.0);

    // Ry(2d)|0> = [cos d, sin d].
    const double d = 0.37;
    Statevector e(1);
    apply_ry(e, 0, 2.0 * d);
    CHECK(std::abs(e.amps[0] - Amplitude(std::cos(d), 0)) < 1e-15);
    CHECK(std::abs(e.amps[1] - Amplitude(std::sin(d), 0)) < 1e-15);

    CHECK_THROWS_AS(apply_ry(e, 0, std::nan("")), ValidationError);
    CHECK_THROWS_AS(apply_ry(e, 3, 0.5), IndexError);
}

TEST_CASE("cnot semantics") {
    // |01> (qubit 0 set) with control 0 -> |11>.
    Statevector s(2);
    apply_ry(s, 0, M_PI);  // |00> -> |01>, index 1
    apply_cnot(s, 0, 1);
    CHECK(std::abs(s.amps[3] - Amplitude(1, 0)) < 1e-12);
    CHECK(std::abs(s.amps[1]) < 1e-12);

    // Control clear: nothing moves.
    Statevector t(2);
    apply_cnot(t, 0, 1);
    CHECK(t.amps[0] == Amplitude(1, 0));

    // Bell state.
    Statevector bell(2);
    apply_h(bell, 0);
    apply_cnot(bell, 0, 1);
    CHECK(std::abs(bell.amps[0] - Amplitude(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(bell.amps[3] - Amplitude(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(bell.amps[1]) == 0.0);
    CHECK(std::abs(bell.amps[2]) == 0.0);

    CHECK_THROWS_AS(apply_cnot(t, 1, 1), ValidationError);
    CHECK_THROWS_AS(apply_cnot(t, 0, 2), IndexError);
}

TEST_CASE("pauli-z expectations") {
    Statevector zero(1);
    CHECK(expect_z(zero, 0) == 1.0);

    Statevector bell(2);
    apply_h(bell, 0);
    apply_cnot(bell, 0, 1);
    CHECK(std::abs(expect_z(bell, 0)) < 1e-12);
    CHECK(std::abs(expect_z(bell, 1)) < 1e-12);

    const double d = -0.81;
    Statevector e(1);
    apply_ry(e, 0, 2.0 * d);
    CHECK(expect_z(e, 0) == doctest::Approx(std::cos(2.0 * d)).epsilon(1e-14));

    const Eigen::VectorXd all_zero = expect_z_all(Statevector(2));
    CHECK(all_zero[0] == 1.0);
    CHECK(all_zero[1] == 1.0);
    const Eigen::VectorXd all_bell = expect_z_all(bell);
    CHECK(std::abs(all_bell[0]) < 1e-12);
    CHECK(std::abs(all_bell[1]) < 1e-12);
}

TEST_CASE("expect_z_all agrees with per-qubit expect_z on a random circuit") {
    Rng rng(77);
    Statevector s(4);
    apply_gates(s, verify::random_circuit(rng, 4, 25));
    const Eigen::VectorXd all = expect_z_all(s);
    for (int q = 0; q < 4; ++q) {
        CHECK(all[q] == doctest::Approx(expect_z(s, q)).epsilon(1e-14));
        CHECK(std::abs(all[q]) <= 1.0 + 1e-12);
    }

    // And against the dense oracle.
    Rng rng2(78);
    const std::vector<GateOp> ops = verify::random_circuit(rng2, 4, 20);
    Statevector engine(4);
    apply_gates(engine, ops);
    const Eigen::VectorXcd psi = oracle::dense_run(ops, 4);
    for (int q = 0; q < 4; ++q) {
        double want = 0.0;
        for (Eigen::Index k = 0; k < psi.size(); ++k) {
            want += ((k >> q) & 1) ? -std::norm(psi[k]) : std::norm(psi[k]);
        }
        CHECK(expect_z(engine, q) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("norm preservation over random gates and states") {
    Rng rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + int(rng.bounded(8));
        Statevector s = verify::random_state(rng, n);
        if (n >= 2) {
            apply_gates(s, verify::random_circuit(rng, n, 5));
        } else {
            apply_h(s, 0);
            apply_ry(s, 0, rng.uniform(-3, 3));
        }
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
    }
}

TEST_CASE("reversed inverse sequence restores the state") {
    Rng rng(321);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + int(rng.bounded(5));
        Statevector s = verify::random_state(rng, n);
        const Statevector original = s;
        const std::vector<GateOp> ops = verify::random_circuit(rng, n, 30);
        apply_gates(s, ops);
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            apply_gate(s, inverse(*it));
        }
        CHECK((s.amps - original.amps).cwiseAbs().maxCoeff() < 1e-9);
    }
}
