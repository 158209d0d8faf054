#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>

namespace hqc {

enum class SyntheticKind { GaussianBlobs, XorRings };
enum class Provenance { Csv, Binary, Synthetic };

/// Rows of (embedding vector, binary label). Features are stored as f64
/// internally; the QEMB binary format stores them as f32.
struct EmbeddingDataset {
    Eigen::MatrixXd features;  // n x dim
    Eigen::VectorXi labels;    // n entries in {0, 1}
    Provenance provenance = Provenance::Synthetic;

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
};

/// CSV with header `label,f0,f1,...,f{d-1}` and one numeric row per sample.
/// Parse errors name the offending row and column.
EmbeddingDataset load_csv(const std::filesystem::path& path);

/// Writes CSV with 17-significant-digit floats so load_csv round-trips
/// value-identically.
void write_csv(const EmbeddingDataset& dataset, const std::filesystem::path& path);

/// QEMB binary format, little-endian:
///   magic "QEMB", u32 version = 1, u32 count, u32 dim,
///   per row: u32 label, then dim * f32 features.
/// Loading rejects bad magic, bad version, truncation (naming the byte
/// offset), trailing bytes, and non-binary labels.
EmbeddingDataset load_binary(const std::filesystem::path& path);
void write_binary(const EmbeddingDataset& dataset, const std::filesystem::path& path);

/// Seeded synthetic generators.
///   GaussianBlobs: two isotropic unit-variance Gaussians with the class
///   centers at +/- margin along the first coordinate; labels interleave
///   so counts differ by at most one.
///   XorRings: cluster centers at (+/-margin, +/-margin) in the first two
///   coordinates with label = XOR of the center signs (not linearly
///   separable), unit Gaussian noise everywhere.
EmbeddingDataset make_synthetic(SyntheticKind kind, Eigen::Index n, Eigen::Index dim,
                                std::uint64_t seed, double margin);

struct SplitResult {
    EmbeddingDataset train;
    EmbeddingDataset val;
};

/// Seeded shuffle then partition; |val| = round(n * val_fraction).
SplitResult split(const EmbeddingDataset& dataset, double val_fraction, std::uint64_t seed);

/// FNV-1a over the dataset bytes (features then labels); used to prove two
/// runs saw identical splits.
std::uint64_t dataset_hash(const EmbeddingDataset& dataset);

/// Invariant check used by every loader before returning: consistent dims,
/// binary labels, finite features. Throws ValidationError.
void validate(const EmbeddingDataset& dataset);

}  // namespace hqc
