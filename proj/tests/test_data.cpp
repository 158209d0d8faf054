#include "hqc/data.hpp"

#include "hqc/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

using namespace hqc;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    out << text;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("csv parsing") {
    const auto path = temp_file("hqc_test.csv");
    write_text(path, "label,f0,f1,f2\n1,0.5,-2,3e-1\n0,1,2,3\n");
    const EmbeddingDataset d = load_csv(path);
    CHECK(d.size() == 2);
    CHECK(d.dim() == 3);
    CHECK(d.labels[0] == 1);
    CHECK(d.labels[1] == 0);
    CHECK(d.features(0, 0) == 0.5);
    CHECK(d.features(0, 2) == 0.3);
    CHECK(d.provenance == Provenance::Csv);

    SUBCASE("non-binary label names the row") {
        write_text(path, "label,f0\n2,0.5\n");
        CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("row 0"), IoError);
    }
    SUBCASE("malformed header") {
        write_text(path, "label,x0\n0,0.5\n");
        CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("header"), IoError);
    }
    SUBCASE("inconsistent column count") {
        write_text(path, "label,f0,f1\n0,0.5\n");
        CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("columns"), IoError);
    }
    SUBCASE("non-numeric cell names row and column") {
        write_text(path, "label,f0,f1\n0,0.5,oops\n");
        CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("column 2"), IoError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv(temp_file("hqc_nonexistent.csv")), IoError);
    }
    std::filesystem::remove(path);
}

TEST_CASE("csv round-trip is value-identical") {
    EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 20, 5, 3, 4.0);
    d.features(0, 0) = 1.0 / 3.0;
    d.features(1, 1) = 1e-17;
    d.features(2, 2) = -123456.789012345;
    const auto path = temp_file("hqc_roundtrip.csv");
    write_csv(d, path);
    const EmbeddingDataset back = load_csv(path);
    CHECK(back.features == d.features);
    CHECK(back.labels == d.labels);
    std::filesystem::remove(path);
}

TEST_CASE("qemb round-trip") {
    const auto path = temp_file("hqc_test.qemb");

    SUBCASE("empty dataset") {
        EmbeddingDataset empty;
        empty.features.resize(0, 4);
        empty.labels.resize(0);
        write_binary(empty, path);
        const EmbeddingDataset back = load_binary(path);
        CHECK(back.size() == 0);
        CHECK(back.dim() == 4);
    }

    SUBCASE("bit-exact at f32 precision") {
        const EmbeddingDataset d = make_synthetic(SyntheticKind::XorRings, 17, 3, 9, 2.0);
        write_binary(d, path);
        const EmbeddingDataset once = load_binary(path);
        write_binary(once, path);
        const EmbeddingDataset twice = load_binary(path);
        CHECK(once.features == twice.features);
        CHECK(once.labels == twice.labels);
        // f64 -> f32 -> f64 is the documented precision loss.
        CHECK((once.features - d.features).cwiseAbs().maxCoeff() < 1e-5);
    }
    std::filesystem::remove(path);
}

TEST_CASE("qemb corruption errors") {
    const auto path = temp_file("hqc_corrupt.qemb");
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 4, 3, 1, 4.0);
    write_binary(d, path);
    std::string bytes = read_bytes(path);

    SUBCASE("bad magic") {
        bytes[1] = 'X';
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(load_binary(path), doctest::Contains("bad magic"), IoError);
    }
    SUBCASE("bad version") {
        bytes[4] = 9;
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(load_binary(path), doctest::Contains("version"), IoError);
    }
    SUBCASE("truncated mid-row names the byte offset") {
        std::ofstream(path, std::ios::binary | std::ios::trunc)
            << bytes.substr(0, bytes.size() - 6);
        // Second-to-last row feature starts at offset 16 + 2*16 + 10*4 - 8... the
        // reader reports the offset it reached; just require the word and a number.
        CHECK_THROWS_WITH_AS(load_binary(path), doctest::Contains("offset"), IoError);
    }
    SUBCASE("trailing bytes") {
        bytes += "zz";
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(load_binary(path), doctest::Contains("trailing"), IoError);
    }
    SUBCASE("non-binary label in body") {
        bytes[16] = 7;  // first row label byte
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
        CHECK_THROWS_WITH_AS(load_binary(path), doctest::Contains("label"), IoError);
    }
    std::filesystem::remove(path);
}

TEST_CASE("gaussian blobs: centroid rule separates classes") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 400, 16, 7, 4.0);

    // Brute-force nearest-centroid classifier.
    Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(16), mean1 = Eigen::VectorXd::Zero(16);
    int n0 = 0, n1 = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d.labels[i] == 0) {
            mean0 += d.features.row(i).transpose();
            ++n0;
        } else {
            mean1 += d.features.row(i).transpose();
            ++n1;
        }
    }
    CHECK(std::abs(n0 - n1) <= 1);
    mean0 /= n0;
    mean1 /= n1;
    int correct = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const Eigen::VectorXd x = d.features.row(i).transpose();
        const int pred = (x - mean0).squaredNorm() <= (x - mean1).squaredNorm() ? 0 : 1;
        correct += pred == d.labels[i];
    }
    CHECK(double(correct) / double(d.size()) >= 0.99);
}

TEST_CASE("synthetic generators are pure functions of (params, seed)") {
    const EmbeddingDataset a = make_synthetic(SyntheticKind::GaussianBlobs, 50, 4, 11, 4.0);
    const EmbeddingDataset b = make_synthetic(SyntheticKind::GaussianBlobs, 50, 4, 11, 4.0);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
    CHECK(dataset_hash(a) == dataset_hash(b));

    const EmbeddingDataset c = make_synthetic(SyntheticKind::GaussianBlobs, 50, 4, 12, 4.0);
    CHECK(dataset_hash(a) != dataset_hash(c));

    // Odd count still balances to within one.
    const EmbeddingDataset odd = make_synthetic(SyntheticKind::XorRings, 51, 3, 2, 3.0);
    const int ones = odd.labels.sum();
    CHECK(std::abs(2 * ones - 51) <= 1);

    CHECK_THROWS_AS(make_synthetic(SyntheticKind::GaussianBlobs, 1, 4, 0, 1.0), ValidationError);
    CHECK_THROWS_AS(make_synthetic(SyntheticKind::XorRings, 10, 1, 0, 1.0), ValidationError);
}

TEST_CASE("xor rings are not linearly separable but sign rule works") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::XorRings, 400, 6, 5, 4.0);

    // Class centroids coincide, so the nearest-centroid rule is near chance.
    Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(6), mean1 = Eigen::VectorXd::Zero(6);
    int n0 = 0, n1 = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d.labels[i] == 0) {
            mean0 += d.features.row(i).transpose();
            ++n0;
        } else {
            mean1 += d.features.row(i).transpose();
            ++n1;
        }
    }
    mean0 /= n0;
    mean1 /= n1;
    int centroid_correct = 0, xor_correct = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const Eigen::VectorXd x = d.features.row(i).transpose();
        const int centroid_pred =
            (x - mean0).squaredNorm() <= (x - mean1).squaredNorm() ? 0 : 1;
        centroid_correct += centroid_pred == d.labels[i];
        const int xor_pred = (x[0] > 0) != (x[1] > 0) ? 1 : 0;
        xor_correct += xor_pred == d.labels[i];
    }
    CHECK(double(centroid_correct) / double(d.size()) <= 0.75);
    CHECK(double(xor_correct) / double(d.size()) >= 0.95);
}

TEST_CASE("split is a seeded partition") {
    const EmbeddingDataset d = make_synthetic(SyntheticKind::GaussianBlobs, 10, 3, 21, 4.0);
    const SplitResult s = split(d, 0.2, 99);
    CHECK(s.train.size() == 8);
    CHECK(s.val.size() == 2);

    // Union of rows equals the original multiset.
    std::multiset<std::string> original, recombined;
    auto row_key = [](const EmbeddingDataset& ds, Eigen::Index i) {
        std::string key = std::to_string(ds.labels[i]);
        for (Eigen::Index j = 0; j < ds.dim(); ++j) {
            key += "," + std::to_string(ds.features(i, j));
        }
        return key;
    };
    for (Eigen::Index i = 0; i < d.size(); ++i) original.insert(row_key(d, i));
    for (Eigen::Index i = 0; i < s.train.size(); ++i) recombined.insert(row_key(s.train, i));
    for (Eigen::Index i = 0; i < s.val.size(); ++i) recombined.insert(row_key(s.val, i));
    CHECK(original == recombined);

    const SplitResult again = split(d, 0.2, 99);
    CHECK(again.train.features == s.train.features);
    CHECK(again.val.features == s.val.features);

    const SplitResult other = split(d, 0.2, 100);
    CHECK(other.train.features != s.train.features);

    CHECK_THROWS_AS(split(d, 0.0, 1), ValidationError);
    CHECK_THROWS_AS(split(d, 1.0, 1), ValidationError);
}
