#pragma once

// Reproducible salt-and-pepper corruption with exact counts.
//
// Generator contract (keeps fixtures portable across platforms): std::mt19937
// seeded with NoiseSpec::seed, bounded draws by rejection on the raw 32-bit
// stream (std::uniform_int_distribution is implementation-defined and is not
// used), positions chosen by a partial Fisher-Yates shuffle over pixel
// indices. The first round(salt_ratio * n) selected positions become salt
// (255), the remainder pepper (0).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phgrms/image.hpp"

namespace phgrms {

struct NoiseSpec {
    double density = 0.0;     // fraction of pixels corrupted, [0, 1]
    double salt_ratio = 0.5;  // fraction of corrupted pixels set to 255
    std::uint32_t seed = 0;

    void validate() const {
        if (!(density >= 0.0 && density <= 1.0))
            throw std::invalid_argument("density must be in [0, 1]");
        if (!(salt_ratio >= 0.0 && salt_ratio <= 1.0))
            throw std::invalid_argument("salt_ratio must be in [0, 1]");
    }
};

struct CorruptionMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> flags;  // 1 = corrupted

    std::size_t count() const {
        std::size_t n = 0;
        for (auto f : flags) n += f;
        return n;
    }
};

namespace detail {

// Unbiased value in [0, bound); rejects the top 2^32 mod bound values.
inline std::uint32_t bounded_rand(std::mt19937& rng, std::uint32_t bound) {
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
        const std::uint32_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace detail

inline std::pair<GrayImage, CorruptionMask> inject_sp_noise(
    const GrayImage& img, const NoiseSpec& spec) {
    spec.validate();
    const std::size_t total = img.size();
    const auto n = static_cast<std::size_t>(
        std::llround(spec.density * static_cast<double>(total)));
    const auto salt = static_cast<std::size_t>(
        std::llround(spec.salt_ratio * static_cast<double>(n)));

    GrayImage out = img;
    CorruptionMask mask{img.width, img.height,
                        std::vector<std::uint8_t>(total, 0)};
    if (n == 0) return {std::move(out), std::move(mask)};

    std::vector<std::uint32_t> order(total);
    std::iota(order.begin(), order.end(), 0u);
    std::mt19937 rng(spec.seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j =
            i + detail::bounded_rand(
                    rng, static_cast<std::uint32_t>(total - i));
        std::swap(order[i], order[j]);
        const std::uint32_t pos = order[i];
        out.pixels[pos] = i < salt ? 255 : 0;
        mask.flags[pos] = 1;
    }
    return {std::move(out), std::move(mask)};
}

}  // namespace phgrms
