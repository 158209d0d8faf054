#include "hqc/model.hpp"

#include "hqc/binio.hpp"
#include "hqc/errors.hpp"
#include "hqc/rng.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace hqc {

namespace {

// One ulp below pi/2: tanh saturates to exactly +/-1.0 in double precision
// for |z| > ~19, and the encoding half-angles must stay strictly inside
// (-pi/2, pi/2) to keep the per-qubit angle encoding injective.
const double kEncodeScale = std::nextafter(1.57079632679489661923, 0.0);

void check_layer(const DenseLayer& layer, const Eigen::VectorXd& x, const char* name) {
    if (layer.W.cols() != x.size()) {
        throw ValidationError(std::string(name) + ": input size " + std::to_string(x.size()) +
                              " does not match weight columns " + std::to_string(layer.W.cols()));
    }
    if (layer.W.rows() != layer.b.size()) {
        throw ValidationError(std::string(name) + ": bias size does not match weight rows");
    }
}

Eigen::MatrixXd glorot_uniform(Eigen::Index out_dim, Eigen::Index in_dim, Rng& rng) {
    const double s = std::sqrt(6.0 / double(in_dim + out_dim));
    Eigen::MatrixXd w(out_dim, in_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r) {
        for (Eigen::Index c = 0; c < in_dim; ++c) {
            w(r, c) = rng.uniform(-s, s);
        }
    }
    return w;
}

}  // namespace

double tanh_halfpi_scale() { return kEncodeScale; }

Eigen::VectorXd apply(const DenseLayer& layer, const Eigen::VectorXd& x) {
    check_layer(layer, x, "dense layer");
    Eigen::VectorXd z = layer.W * x + layer.b;
    switch (layer.activation) {
        case Activation::Identity:
            return z;
        case Activation::Tanh:
            return z.array().tanh();
        case Activation::TanhHalfPi:
            return kEncodeScale * z.array().tanh();
        case Activation::Softmax: {
            const Eigen::ArrayXd e = (z.array() - z.maxCoeff()).exp();
            return e / e.sum();
        }
    }
    throw ValidationError("dense layer: unknown activation");
}

Eigen::Vector2d softmax2(const Eigen::Vector2d& logits) {
    const double m = logits.maxCoeff();
    const Eigen::Vector2d e = (logits.array() - m).exp();
    return e / e.sum();
}

ForwardResult forward(const HybridModel& model, const Eigen::VectorXd& input) {
    if (!input.allFinite()) {
        throw ValidationError("forward: non-finite input");
    }
    const Eigen::VectorXd d = apply(model.input_pool, input);
    ForwardResult out;
    Eigen::VectorXd mid;
    if (model.head_mode == HeadMode::Hybrid) {
        out.quantum_out = forward_quantum(d, model.vqc, model.circuit);
        mid = out.quantum_out;
    } else {
        if (!model.classical_hidden) {
            throw ValidationError("forward: baseline model has no hidden layer");
        }
        mid = apply(*model.classical_hidden, d);
    }
    const Eigen::VectorXd logits = apply(model.output_pool, mid);
    if (logits.size() != 2) {
        throw ValidationError("forward: output pooling must produce 2 logits");
    }
    out.probs = softmax2(Eigen::Vector2d(logits[0], logits[1]));
    return out;
}

int predict(const HybridModel& model, const Eigen::VectorXd& input) {
    const ForwardResult r = forward(model, input);
    return r.probs[1] > r.probs[0] ? 1 : 0;
}

double mse_loss(const Eigen::Vector2d& probs, const Eigen::Vector2d& target_onehot) {
    const bool onehot = (target_onehot[0] == 1.0 && target_onehot[1] == 0.0) ||
                        (target_onehot[0] == 0.0 && target_onehot[1] == 1.0);
    if (!onehot) {
        throw ValidationError("mse_loss: target must be a one-hot pair");
    }
    return 0.5 * (probs - target_onehot).squaredNorm();
}

Eigen::Vector2d one_hot(int label) {
    if (label != 0 && label != 1) {
        throw ValidationError("one_hot: label must be 0 or 1, got " + std::to_string(label));
    }
    return label == 0 ? Eigen::Vector2d(1.0, 0.0) : Eigen::Vector2d(0.0, 1.0);
}

HybridModel init_params(const ModelConfig& config, std::uint64_t seed) {
    if (config.d_in < 1) {
        throw ConfigError("d_in must be >= 1, got " + std::to_string(config.d_in));
    }
    CircuitSpec spec{config.n_q, config.depth, config.topology};
    validate(spec);

    Rng rng(seed);
    HybridModel model;
    model.circuit = spec;
    model.head_mode = config.head_mode;

    model.input_pool.W = glorot_uniform(config.n_q, config.d_in, rng);
    model.input_pool.b = Eigen::VectorXd::Zero(config.n_q);
    model.input_pool.activation = Activation::TanhHalfPi;

    model.vqc.theta = Eigen::MatrixXd(config.depth, config.n_q);
    for (int l = 0; l < config.depth; ++l) {
        for (int q = 0; q < config.n_q; ++q) {
            model.vqc.theta(l, q) = rng.uniform(-0.01, 0.01);
        }
    }

    model.output_pool.W = glorot_uniform(2, config.n_q, rng);
    model.output_pool.b = Eigen::VectorXd::Zero(2);
    model.output_pool.activation = Activation::Identity;

    if (config.head_mode == HeadMode::ClassicalBaseline) {
        DenseLayer hidden;
        hidden.W = glorot_uniform(config.n_q, config.n_q, rng);
        hidden.b = Eigen::VectorXd::Zero(config.n_q);
        hidden.activation = Activation::Tanh;
        model.classical_hidden = std::move(hidden);
    }
    return model;
}

namespace {

constexpr char kCheckpointMagic[4] = {'Q', 'H', 'M', '1'};

void put_matrix(std::vector<std::uint8_t>& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            binio::put_f64(out, m(r, c));
        }
    }
}

void put_vector(std::vector<std::uint8_t>& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) binio::put_f64(out, v[i]);
}

Eigen::MatrixXd get_matrix(binio::Reader& r, Eigen::Index rows, Eigen::Index cols,
                           const char* what) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = r.get_f64(what);
        }
    }
    return m;
}

Eigen::VectorXd get_vector(binio::Reader& r, Eigen::Index n, const char* what) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = r.get_f64(what);
    return v;
}

}  // namespace

void save_checkpoint(const HybridModel& model, const std::filesystem::path& path) {
    std::vector<std::uint8_t> buf;
    buf.insert(buf.end(), kCheckpointMagic, kCheckpointMagic + 4);
    binio::put_u32(buf, std::uint32_t(model.d_in()));
    binio::put_u32(buf, std::uint32_t(model.circuit.n_q));
    binio::put_u32(buf, std::uint32_t(model.circuit.depth));
    binio::put_u32(buf, model.circuit.topology == EntangleTopology::Ring ? 1u : 0u);
    binio::put_u32(buf, model.head_mode == HeadMode::ClassicalBaseline ? 1u : 0u);
    put_matrix(buf, model.input_pool.W);
    put_vector(buf, model.input_pool.b);
    put_matrix(buf, model.vqc.theta);
    put_matrix(buf, model.output_pool.W);
    put_vector(buf, model.output_pool.b);
    if (model.head_mode == HeadMode::ClassicalBaseline) {
        if (!model.classical_hidden) {
            throw ValidationError("save_checkpoint: baseline model has no hidden layer");
        }
        put_matrix(buf, model.classical_hidden->W);
        put_vector(buf, model.classical_hidden->b);
    }

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("save_checkpoint: cannot open " + tmp.string());
        }
        out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
        if (!out) {
            throw IoError("save_checkpoint: write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

HybridModel load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("load_checkpoint: cannot open " + path.string());
    }
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    binio::Reader r(buf.data(), buf.size(), "checkpoint " + path.filename().string());
    r.expect_magic(kCheckpointMagic);
    const auto d_in = Eigen::Index(r.get_u32("d_in"));
    const auto n_q = Eigen::Index(r.get_u32("n_q"));
    const auto depth = Eigen::Index(r.get_u32("depth"));
    const std::uint32_t topology = r.get_u32("topology");
    const std::uint32_t head_mode = r.get_u32("head_mode");
    if (d_in < 1 || n_q < 2 || n_q > kMaxQubits || depth < 1) {
        throw IoError("load_checkpoint: invalid dimensions in header");
    }
    if (topology > 1 || head_mode > 1) {
        throw IoError("load_checkpoint: invalid topology or head_mode code");
    }

    HybridModel model;
    model.circuit = {int(n_q), int(depth),
                     topology == 1 ? EntangleTopology::Ring : EntangleTopology::Chain};
    model.head_mode = head_mode == 1 ? HeadMode::ClassicalBaseline : HeadMode::Hybrid;
    model.input_pool = {get_matrix(r, n_q, d_in, "input W"), get_vector(r, n_q, "input b"),
                        Activation::TanhHalfPi};
    model.vqc.theta = get_matrix(r, depth, n_q, "theta");
    model.output_pool = {get_matrix(r, 2, n_q, "output W"), get_vector(r, 2, "output b"),
                         Activation::Identity};
    if (model.head_mode == HeadMode::ClassicalBaseline) {
        model.classical_hidden = DenseLayer{get_matrix(r, n_q, n_q, "hidden W"),
                                            get_vector(r, n_q, "hidden b"), Activation::Tanh};
    }
    r.expect_consumed();
    return model;
}

}  // namespace hqc
