#include "hqc/data.hpp"

#include "hqc/binio.hpp"
#include "hqc/errors.hpp"
#include "hqc/rng.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

void validate(const EmbeddingDataset& dataset) {
    if (dataset.features.rows() != dataset.labels.size()) {
        throw ValidationError("dataset: feature rows and label count differ");
    }
    for (Eigen::Index i = 0; i < dataset.labels.size(); ++i) {
        if (dataset.labels[i] != 0 && dataset.labels[i] != 1) {
            throw ValidationError("dataset: non-binary label " + std::to_string(dataset.labels[i]) +
                                  " at row " + std::to_string(i));
        }
    }
    if (!dataset.features.allFinite()) {
        throw ValidationError("dataset: non-finite feature value");
    }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double(std::string_view field, Eigen::Index row, std::size_t col,
                    const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError(context + ": non-numeric cell \"" + std::string(field) + "\" at row " +
                      std::to_string(row) + ", column " + std::to_string(col));
    }
    return value;
}

}  // namespace

EmbeddingDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("load_csv: cannot open " + path.string());
    }
    const std::string context = "csv " + path.filename().string();

    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(context + ": missing header row");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string_view> header = split_fields(line);
    if (header.empty() || header[0] != "label") {
        throw IoError(context + ": malformed header, first column must be \"label\"");
    }
    const std::size_t dim = header.size() - 1;
    if (dim == 0) {
        throw IoError(context + ": malformed header, no feature columns");
    }
    for (std::size_t j = 0; j < dim; ++j) {
        const std::string expected = "f" + std::to_string(j);
        if (header[j + 1] != expected) {
            throw IoError(context + ": malformed header, column " + std::to_string(j + 1) +
                          " is \"" + std::string(header[j + 1]) + "\", expected \"" + expected +
                          "\"");
        }
    }

    std::vector<double> values;
    std::vector<int> labels;
    Eigen::Index row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != dim + 1) {
            throw IoError(context + ": row " + std::to_string(row) + " has " +
                          std::to_string(fields.size()) + " columns, expected " +
                          std::to_string(dim + 1));
        }
        const double label_value = parse_double(fields[0], row, 0, context);
        if (label_value != 0.0 && label_value != 1.0) {
            throw IoError(context + ": non-binary label \"" + std::string(fields[0]) +
                          "\" at row " + std::to_string(row));
        }
        labels.push_back(int(label_value));
        for (std::size_t j = 0; j < dim; ++j) {
            values.push_back(parse_double(fields[j + 1], row, j + 1, context));
        }
        ++row;
    }

    EmbeddingDataset dataset;
    dataset.provenance = Provenance::Csv;
    dataset.features.resize(row, Eigen::Index(dim));
    for (Eigen::Index i = 0; i < row; ++i) {
        for (Eigen::Index j = 0; j < Eigen::Index(dim); ++j) {
            dataset.features(i, j) = values[std::size_t(i) * dim + std::size_t(j)];
        }
    }
    dataset.labels = Eigen::Map<const Eigen::VectorXi>(labels.data(), row);
    validate(dataset);
    return dataset;
}

void write_csv(const EmbeddingDataset& dataset, const std::filesystem::path& path) {
    validate(dataset);
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("write_csv: cannot open " + path.string());
    }
    out << "label";
    for (Eigen::Index j = 0; j < dataset.dim(); ++j) out << ",f" << j;
    out << "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        out << dataset.labels[i];
        for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", dataset.features(i, j));
            out << ',' << buf;
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("write_csv: write failed for " + path.string());
    }
}

namespace {
constexpr char kDatasetMagic[4] = {'Q', 'E', 'M', 'B'};
constexpr std::uint32_t kDatasetVersion = 1;
}  // namespace

EmbeddingDataset load_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("load_binary: cannot open " + path.string());
    }
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    binio::Reader r(buf.data(), buf.size(), "qemb " + path.filename().string());
    r.expect_magic(kDatasetMagic);
    const std::uint32_t version = r.get_u32("version");
    if (version != kDatasetVersion) {
        throw IoError("qemb " + path.filename().string() + ": unsupported version " +
                      std::to_string(version));
    }
    const std::uint32_t count = r.get_u32("count");
    const std::uint32_t dim = r.get_u32("dim");
    if (count > 0 && dim == 0) {
        throw IoError("qemb " + path.filename().string() + ": zero feature dimension");
    }

    EmbeddingDataset dataset;
    dataset.provenance = Provenance::Binary;
    dataset.features.resize(Eigen::Index(count), Eigen::Index(dim));
    dataset.labels.resize(Eigen::Index(count));
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t label = r.get_u32("row label");
        if (label > 1) {
            throw IoError("qemb " + path.filename().string() + ": non-binary label " +
                          std::to_string(label) + " at row " + std::to_string(i));
        }
        dataset.labels[Eigen::Index(i)] = int(label);
        for (std::uint32_t j = 0; j < dim; ++j) {
            dataset.features(Eigen::Index(i), Eigen::Index(j)) = double(r.get_f32("row feature"));
        }
    }
    r.expect_consumed();
    validate(dataset);
    return dataset;
}

void write_binary(const EmbeddingDataset& dataset, const std::filesystem::path& path) {
    validate(dataset);
    std::vector<std::uint8_t> buf;
    buf.insert(buf.end(), kDatasetMagic, kDatasetMagic + 4);
    binio::put_u32(buf, kDatasetVersion);
    binio::put_u32(buf, std::uint32_t(dataset.size()));
    binio::put_u32(buf, std::uint32_t(dataset.dim()));
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        binio::put_u32(buf, std::uint32_t(dataset.labels[i]));
        for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
            binio::put_f32(buf, float(dataset.features(i, j)));
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("write_binary: cannot open " + path.string());
    }
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!out) {
        throw IoError("write_binary: write failed for " + path.string());
    }
}

EmbeddingDataset make_synthetic(SyntheticKind kind, Eigen::Index n, Eigen::Index dim,
                                std::uint64_t seed, double margin) {
    if (n < 2 || dim < 2) {
        throw ValidationError("make_synthetic: need n >= 2 and dim >= 2, got n=" +
                              std::to_string(n) + " dim=" + std::to_string(dim));
    }
    Rng rng(seed);
    EmbeddingDataset dataset;
    dataset.provenance = Provenance::Synthetic;
    dataset.features.resize(n, dim);
    dataset.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            dataset.features(i, j) = rng.normal();
        }
        if (kind == SyntheticKind::GaussianBlobs) {
            const int label = int(i % 2);
            dataset.labels[i] = label;
            dataset.features(i, 0) += label == 0 ? margin : -margin;
        } else {
            // Cycle the four quadrants; label = XOR of the center signs.
            const int quadrant = int(i % 4);
            const double s0 = (quadrant == 0 || quadrant == 2) ? 1.0 : -1.0;
            const double s1 = (quadrant == 0 || quadrant == 1) ? 1.0 : -1.0;
            dataset.labels[i] = (s0 > 0) != (s1 > 0) ? 1 : 0;
            dataset.features(i, 0) += s0 * margin;
            dataset.features(i, 1) += s1 * margin;
        }
    }
    validate(dataset);
    return dataset;
}

namespace {

EmbeddingDataset take_rows(const EmbeddingDataset& dataset, const std::vector<Eigen::Index>& rows) {
    EmbeddingDataset out;
    out.provenance = dataset.provenance;
    out.features.resize(Eigen::Index(rows.size()), dataset.dim());
    out.labels.resize(Eigen::Index(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(Eigen::Index(i)) = dataset.features.row(rows[i]);
        out.labels[Eigen::Index(i)] = dataset.labels[rows[i]];
    }
    return out;
}

}  // namespace

SplitResult split(const EmbeddingDataset& dataset, double val_fraction, std::uint64_t seed) {
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw ValidationError("split: val_fraction must be in (0, 1), got " +
                              std::to_string(val_fraction));
    }
    const Eigen::Index n = dataset.size();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index(0));
    Rng rng(seed);
    for (Eigen::Index i = n - 1; i > 0; --i) {
        std::swap(idx[std::size_t(i)], idx[rng.bounded(std::uint64_t(i) + 1)]);
    }
    const auto n_val = Eigen::Index(std::llround(double(n) * val_fraction));
    SplitResult result;
    result.val = take_rows(dataset, {idx.begin(), idx.begin() + n_val});
    result.train = take_rows(dataset, {idx.begin() + n_val, idx.end()});
    return result;
}

std::uint64_t dataset_hash(const EmbeddingDataset& dataset) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_bytes = [&h](const void* data, std::size_t size) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
            const double v = dataset.features(i, j);
            mix_bytes(&v, sizeof v);
        }
        const int label = dataset.labels[i];
        mix_bytes(&label, sizeof label);
    }
    return h;
}

}  // namespace hqc
