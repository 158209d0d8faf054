#include "hqc/training.hpp"

#include "hqc/errors.hpp"
#include "hqc/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace hqc;

namespace {

HybridModel small_model(HeadMode mode = HeadMode::Hybrid, std::uint64_t seed = 42) {
    ModelConfig config;
    config.d_in = 4;
    config.n_q = 2;
    config.depth = 2;
    config.head_mode = mode;
    return init_params(config, seed);
}

}  // namespace

TEST_CASE("evaluate on a self-labeled dataset is perfect") {
    const HybridModel model = small_model();
    EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 30, 4, 6, 2.0);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        d.labels[i] = predict(model, d.features.row(i).transpose());
    }
    const Metrics m = evaluate(model, d);
    CHECK(m.accuracy == 1.0);
    CHECK(m.macro_f1 == 1.0);
    CHECK(m.confusion[0][1] == 0);
    CHECK(m.confusion[1][0] == 0);
}

TEST_CASE("constant predictor on a balanced set") {
    HybridModel model = small_model();
    model.input_pool.W.setZero();
    model.vqc.theta.setZero();
    model.output_pool.W.setZero();
    model.output_pool.b << 1.0, 0.0;  // always class 0

    EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 40, 4, 3, 1.0);
    const Metrics m = evaluate(model, d);
    CHECK(m.accuracy == 0.5);
    CHECK(m.macro_f1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(m.confusion[0][0] == 20);
    CHECK(m.confusion[1][0] == 20);
    CHECK(m.confusion[0][1] + m.confusion[1][1] == 0);
}

TEST_CASE("metrics match a hand-rolled confusion computation") {
    Rng rng(64);
    const HybridModel model = small_model(HeadMode::Hybrid, 17);
    EmbeddingDataset d;
    d.features.resize(50, 4);
    d.labels.resize(50);
    for (Eigen::Index i = 0; i < 50; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) d.features(i, j) = rng.normal();
        d.labels[i] = int(rng.bounded(2));
    }

    long counts[2][2] = {{0, 0}, {0, 0}};
    for (Eigen::Index i = 0; i < 50; ++i) {
        counts[d.labels[i]][predict(model, d.features.row(i).transpose())] += 1;
    }
    double want_f1 = 0.0;
    for (int c = 0; c < 2; ++c) {
        const long tp = counts[c][c];
        const long fp = counts[1 - c][c];
        const long fn = counts[c][1 - c];
        want_f1 += (2 * tp + fp + fn) > 0 ? 2.0 * double(tp) / double(2 * tp + fp + fn) : 0.0;
    }
    want_f1 /= 2.0;

    const Metrics m = evaluate(model, d);
    CHECK(m.confusion[0][0] == counts[0][0]);
    CHECK(m.confusion[0][1] == counts[0][1]);
    CHECK(m.confusion[1][0] == counts[1][0]);
    CHECK(m.confusion[1][1] == counts[1][1]);
    CHECK(m.accuracy == double(counts[0][0] + counts[1][1]) / 50.0);
    CHECK(m.macro_f1 == doctest::Approx(want_f1).epsilon(1e-14));

    EmbeddingDataset empty;
    empty.features.resize(0, 4);
    empty.labels.resize(0);
    CHECK_THROWS_AS(evaluate(model, empty), ValidationError);
}

TEST_CASE("sgd step") {
    Eigen::VectorXd p(1);
    p << 0.0;
    ParamViews views;
    views.emplace_back(p.data(), 1);
    std::vector<Eigen::VectorXd> grads{Eigen::VectorXd::Constant(1, 1.0)};
    sgd_step(views, grads, 1.0);
    CHECK(p[0] == -1.0);

    grads[0][0] = 0.0;
    sgd_step(views, grads, 0.5);
    CHECK(p[0] == -1.0);

    std::vector<Eigen::VectorXd> wrong{Eigen::VectorXd::Zero(2)};
    CHECK_THROWS_AS(sgd_step(views, wrong, 0.1), ValidationError);
}

TEST_CASE("adam first step against hand computation") {
    for (const double c : {3.0, -0.25, 1e-6}) {
        Eigen::VectorXd p(1);
        p << 0.7;
        ParamViews views;
        views.emplace_back(p.data(), 1);
        AdamState state = AdamState::for_params(views);
        std::vector<Eigen::VectorXd> grads{Eigen::VectorXd::Constant(1, c)};
        const double lr = 0.01;
        adam_step(views, grads, state, lr);
        // Bias correction makes m_hat = c, v_hat = c^2 on the first step.
        const double want = 0.7 - lr * c / (std::sqrt(c * c) + 1e-8);
        CHECK(p[0] == doctest::Approx(want).epsilon(1e-12));
    }

    // Zero gradient leaves parameters exactly unchanged.
    Eigen::VectorXd p(2);
    p << 1.0, -2.0;
    ParamViews views;
    views.emplace_back(p.data(), 2);
    AdamState state = AdamState::for_params(views);
    std::vector<Eigen::VectorXd> grads{Eigen::VectorXd::Zero(2)};
    adam_step(views, grads, state, 0.1);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == -2.0);
}

TEST_CASE("zero learning rate leaves the model bitwise unchanged") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 2, 4, 8, 4.0);
    const HybridModel before = small_model();
    TrainConfig config;
    config.epochs = 1;
    config.batch_size = 1;
    config.learning_rate = 0.0;
    config.seed = 1;
    config.val_fraction = 0.5;
    const TrainResult result = train(before, d, config);
    CHECK(result.model.input_pool.W == before.input_pool.W);
    CHECK(result.model.vqc.theta == before.vqc.theta);
    CHECK(result.model.output_pool.W == before.output_pool.W);
    CHECK(result.model.output_pool.b == before.output_pool.b);
    CHECK(result.report.epochs.size() == 1);
}

TEST_CASE("training is deterministic given the seed") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 40, 4, 5, 4.0);
    TrainConfig config;
    config.epochs = 3;
    config.batch_size = 8;
    config.seed = 424242;
    const TrainResult a = train(small_model(), d, config);
    const TrainResult b = train(small_model(), d, config);
    REQUIRE(a.report.epochs.size() == b.report.epochs.size());
    for (std::size_t e = 0; e < a.report.epochs.size(); ++e) {
        CHECK(a.report.epochs[e].train_loss == b.report.epochs[e].train_loss);
        CHECK(a.report.epochs[e].train_acc == b.report.epochs[e].train_acc);
        CHECK(a.report.epochs[e].val_acc == b.report.epochs[e].val_acc);
        CHECK(a.report.epochs[e].val_f1 == b.report.epochs[e].val_f1);
    }
    CHECK(a.model.input_pool.W == b.model.input_pool.W);
    CHECK(a.model.vqc.theta == b.model.vqc.theta);
    CHECK(a.report.total_quantum_evals == b.report.total_quantum_evals);
    CHECK(a.report.train_split_hash == b.report.train_split_hash);
}

TEST_CASE("quantum evaluation accounting") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 25, 4, 5, 4.0);
    TrainConfig config;
    config.epochs = 2;
    config.batch_size = 8;
    config.seed = 3;
    config.val_fraction = 0.2;  // 25 -> 5 val, 20 train

    const TrainResult hybrid = train(small_model(), d, config);
    // Per sample and step: 1 primal + 2 * (depth * n_q + n_q) with depth=2, n_q=2.
    const std::int64_t per_sample = 1 + 2 * (2 * 2 + 2);
    CHECK(hybrid.report.total_quantum_evals == 2 * 20 * per_sample);

    const TrainResult baseline =
        train(small_model(HeadMode::ClassicalBaseline), d, config);
    CHECK(baseline.report.total_quantum_evals == 0);
}

TEST_CASE("metrics stay in bounds and reports are fully populated") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::XorRings, 30, 4, 9, 3.0);
    TrainConfig config;
    config.epochs = 2;
    config.batch_size = 16;
    config.seed = 10;
    const TrainResult r = train(small_model(), d, config);
    CHECK(r.report.epochs.size() == 2);
    for (const EpochRecord& e : r.report.epochs) {
        CHECK(e.train_acc >= 0.0);
        CHECK(e.train_acc <= 1.0);
        CHECK(e.train_f1 >= 0.0);
        CHECK(e.train_f1 <= 1.0);
        CHECK(e.val_acc >= 0.0);
        CHECK(e.val_acc <= 1.0);
        CHECK(e.wall_seconds >= 0.0);
    }
}

TEST_CASE("both heads learn the separable task at small scale") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 60, 4, 13, 4.0);
    TrainConfig config;
    config.epochs = 8;
    config.batch_size = 8;
    config.learning_rate = 0.05;
    config.seed = 2;
    for (const HeadMode mode : {HeadMode::Hybrid, HeadMode::ClassicalBaseline}) {
        const TrainResult r = train(small_model(mode, 6), d, config);
        CHECK(r.report.epochs.back().train_loss < r.report.epochs.front().train_loss);
        CHECK(r.report.final_val_acc >= 0.9);
    }
}

TEST_CASE("train validation errors") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 10, 4, 1, 4.0);
    TrainConfig config;

    SUBCASE("dimension mismatch") {
        const EmbeddingDataset wrong = make_synthetic(SyntheticKind::GaussianBlobs, 10, 5, 1, 4.0);
        CHECK_THROWS_AS(train(small_model(), wrong, config), ValidationError);
    }
    SUBCASE("empty dataset") {
        EmbeddingDataset empty;
        empty.features.resize(0, 4);
        empty.labels.resize(0);
        CHECK_THROWS_AS(train(small_model(), empty, config), ValidationError);
    }
    SUBCASE("bad config") {
        config.epochs = 0;
        CHECK_THROWS_AS(train(small_model(), d, config), ValidationError);
        config.epochs = 1;
        config.batch_size = 0;
        CHECK_THROWS_AS(train(small_model(), d, config), ValidationError);
        config.batch_size = 1;
        config.val_fraction = 1.0;
        CHECK_THROWS_AS(train(small_model(), d, config), ValidationError);
    }
}
