#pragma once

// 8-bit grayscale raster plus deterministic synthetic image generators.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phgrms {

// Row-major grayscale image; pixel (r, c) lives at index r * width + c.
// Value type, immutable by convention once built.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;

    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("image dimensions must be >= 1");
        pixels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    GrayImage(int w, int h, std::vector<std::uint8_t> px)
        : width(w), height(h), pixels(std::move(px)) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("image dimensions must be >= 1");
        if (pixels.size() != static_cast<std::size_t>(w) * h)
            throw std::invalid_argument("pixel count does not match dimensions");
    }

    std::size_t size() const { return pixels.size(); }

    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * width + c;
    }

    std::uint8_t at(int r, int c) const { return pixels[index(r, c)]; }
    std::uint8_t& at(int r, int c) { return pixels[index(r, c)]; }

    bool same_shape(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

enum class SynthKind { Gradient, Checker, SmoothRandom };

// Deterministic test/bench inputs. All kinds are pure functions of
// (width, height, seed, kind); gradient and checker ignore the seed.
inline GrayImage synth_image(int width, int height, std::uint32_t seed,
                             SynthKind kind) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("image dimensions must be >= 1");
    GrayImage img(width, height);
    switch (kind) {
    case SynthKind::Gradient:
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) {
                const int v = width == 1
                                  ? 0
                                  : static_cast<int>(255LL * c / (width - 1));
                img.at(r, c) = static_cast<std::uint8_t>(v);
            }
        break;
    case SynthKind::Checker:
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c)
                img.at(r, c) = ((r / 8 + c / 8) % 2 == 0) ? 64 : 192;
        break;
    case SynthKind::SmoothRandom: {
        // Seeded white noise, one 3x3 mean pass. mt19937's output sequence
        // is fixed by the standard, so the field is portable; we take the
        // low 8 bits of each draw instead of using a distribution.
        std::mt19937 rng(seed);
        std::vector<std::uint8_t> field(img.size());
        for (auto& v : field) v = static_cast<std::uint8_t>(rng() & 0xFF);
        for (int r = 0; r < height; ++r) {
            const int r0 = r > 0 ? r - 1 : 0;
            const int r1 = r < height - 1 ? r + 1 : height - 1;
            for (int c = 0; c < width; ++c) {
                const int c0 = c > 0 ? c - 1 : 0;
                const int c1 = c < width - 1 ? c + 1 : width - 1;
                int sum = 0, cnt = 0;
                for (int i = r0; i <= r1; ++i)
                    for (int j = c0; j <= c1; ++j) {
                        sum += field[img.index(i, j)];
                        ++cnt;
                    }
                int v = (sum + cnt / 2) / cnt;
                if (v < 0) v = 0;
                if (v > 255) v = 255;
                img.at(r, c) = static_cast<std::uint8_t>(v);
            }
        }
        break;
    }
    }
    return img;
}

}  // namespace phgrms
