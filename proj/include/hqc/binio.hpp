#pragma once

#include "hqc/errors.hpp"

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace hqc::binio {

/// Little-endian byte packing shared by the QHM1 checkpoint and QEMB dataset
/// formats. Scalars are converted to/from their IEEE bit patterns as integer
/// values and laid out byte-by-byte, so the encoding is host-endian agnostic.
/// A Reader tracks its offset so truncation errors can name the exact byte
/// position.

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 24));
}

inline void put_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u32(out, std::uint32_t(bits));
    put_u32(out, std::uint32_t(bits >> 32));
}

class Reader {
public:
    Reader(const std::uint8_t* data, std::size_t size, std::string context)
        : data_(data), size_(size), context_(std::move(context)) {}

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return size_ - pos_; }

    void require(std::size_t bytes, const char* what) const {
        if (size_ - pos_ < bytes) {
            throw IoError(context_ + ": truncated file, expected " + std::to_string(bytes) +
                          " bytes for " + what + " at offset " + std::to_string(pos_) +
                          " but only " + std::to_string(size_ - pos_) + " remain");
        }
    }

    std::uint32_t get_u32(const char* what) {
        require(4, what);
        std::uint32_t v = std::uint32_t(data_[pos_]) | (std::uint32_t(data_[pos_ + 1]) << 8) |
                          (std::uint32_t(data_[pos_ + 2]) << 16) |
                          (std::uint32_t(data_[pos_ + 3]) << 24);
        pos_ += 4;
        return v;
    }

    float get_f32(const char* what) {
        const std::uint32_t bits = get_u32(what);
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    double get_f64(const char* what) {
        const std::uint64_t lo = get_u32(what);
        const std::uint64_t hi = get_u32(what);
        const std::uint64_t bits = lo | (hi << 32);
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    void expect_magic(const char magic[4]) {
        require(4, "magic");
        if (std::memcmp(data_ + pos_, magic, 4) != 0) {
            throw IoError(context_ + ": bad magic, expected \"" + std::string(magic, 4) + "\"");
        }
        pos_ += 4;
    }

    void expect_consumed() const {
        if (pos_ != size_) {
            throw IoError(context_ + ": " + std::to_string(size_ - pos_) +
                          " trailing bytes after offset " + std::to_string(pos_));
        }
    }

private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
    std::string context_;
};

}  // namespace hqc::binio
