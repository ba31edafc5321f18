#pragma once

// Minimal netpbm PGM codec: binary P5 and plain-text P2, maxval <= 255.
// Header comments ('#' through end of line) are accepted up to and
// including the maxval token; rasters with maxval < 255 are used as-is.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "phgrms/image.hpp"

namespace phgrms {

struct PgmError : std::runtime_error {
    explicit PgmError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool is_pgm_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' ||
           ch == '\v' || ch == '\f';
}

// Skips whitespace and '#' comments; leaves pos at the next token byte.
inline void skip_header_filler(std::string_view bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        if (is_pgm_space(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
}

inline long parse_header_int(std::string_view bytes, std::size_t& pos) {
    skip_header_filler(bytes, pos);
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
        throw PgmError("malformed PGM header");
    long value = 0;
    while (pos < bytes.size() &&
           std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000L) throw PgmError("malformed PGM header");
        ++pos;
    }
    return value;
}

// Raster values in a P2 body: whitespace-separated, no comments.
inline long parse_body_int(std::string_view bytes, std::size_t& pos) {
    while (pos < bytes.size() && is_pgm_space(bytes[pos])) ++pos;
    if (pos >= bytes.size()) throw PgmError("truncated PGM pixel data");
    if (!std::isdigit(static_cast<unsigned char>(bytes[pos])))
        throw PgmError("malformed PGM pixel data");
    long value = 0;
    while (pos < bytes.size() &&
           std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000L) throw PgmError("malformed PGM pixel data");
        ++pos;
    }
    return value;
}

}  // namespace detail

inline GrayImage read_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' ||
        (bytes[1] != '2' && bytes[1] != '5'))
        throw PgmError("not a PGM stream (expected P2 or P5 magic)");
    const bool ascii = bytes[1] == '2';
    std::size_t pos = 2;

    const long width = detail::parse_header_int(bytes, pos);
    const long height = detail::parse_header_int(bytes, pos);
    const long maxval = detail::parse_header_int(bytes, pos);
    if (width < 1 || height < 1 || maxval < 1)
        throw PgmError("malformed PGM header");
    if (maxval > 255) throw PgmError("16-bit PGM unsupported");

    const std::size_t count =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> px(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = detail::parse_body_int(bytes, pos);
            if (v > maxval) throw PgmError("PGM pixel value exceeds maxval");
            px[i] = static_cast<std::uint8_t>(v);
        }
    } else {
        // A comment may still follow the maxval digits; its terminating
        // newline doubles as the single whitespace before the raster.
        if (pos < bytes.size() && bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            if (pos >= bytes.size()) throw PgmError("truncated PGM pixel data");
        } else if (pos >= bytes.size() || !detail::is_pgm_space(bytes[pos])) {
            throw PgmError("malformed PGM header");
        }
        ++pos;
        if (bytes.size() - pos < count)
            throw PgmError("truncated PGM pixel data");
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(bytes[pos + i]);
            if (v > maxval) throw PgmError("PGM pixel value exceeds maxval");
            px[i] = v;
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height),
                     std::move(px));
}

// P2 body with arbitrary maxval (up to 65535); used for cardinality dumps,
// whose counts can exceed 255. GrayImage serialization always pins 255.
inline std::string write_p2(int width, int height,
                            std::span<const std::int32_t> values, int maxval) {
    std::string out = "P2\n" + std::to_string(width) + ' ' +
                      std::to_string(height) + '\n' + std::to_string(maxval) +
                      '\n';
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (c > 0) out += ' ';
            out += std::to_string(values[static_cast<std::size_t>(r) * width + c]);
        }
        out += '\n';
    }
    return out;
}

inline std::string write_pgm(const GrayImage& img, bool ascii = false) {
    if (ascii) {
        std::string out = "P2\n" + std::to_string(img.width) + ' ' +
                          std::to_string(img.height) + "\n255\n";
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                if (c > 0) out += ' ';
                out += std::to_string(img.at(r, c));
            }
            out += '\n';
        }
        return out;
    }
    std::string out = "P5\n" + std::to_string(img.width) + ' ' +
                      std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()),
               img.pixels.size());
    return out;
}

inline GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PgmError("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return read_pgm(bytes);
}

inline void save_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PgmError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PgmError("write failed for " + path);
}

inline void save_pgm(const std::string& path, const GrayImage& img,
                     bool ascii = false) {
    save_bytes(path, write_pgm(img, ascii));
}

}  // namespace phgrms
