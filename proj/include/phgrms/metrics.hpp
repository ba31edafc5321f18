#pragma once

// Restoration quality: MSE, PSNR against a 255 peak, and the count of
// pixels still classified noisy by the cardinality rule.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "phgrms/denoise.hpp"
#include "phgrms/image.hpp"

namespace phgrms {

struct PsnrValue {
    double decibels = 0.0;  // +infinity when the images are identical

    bool infinite() const { return std::isinf(decibels); }
};

// Exact integer accumulation; the only rounding is the final division.
inline double mse(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("mse: image dimensions differ");
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(a.pixels[i]) - b.pixels[i];
        sum += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

inline PsnrValue psnr(const GrayImage& a, const GrayImage& b) {
    const double m = mse(a, b);
    if (m == 0.0)
        return {std::numeric_limits<double>::infinity()};
    return {10.0 * std::log10(255.0 * 255.0 / m)};
}

// CLI/CSV rendering: 3 decimals, infinity as the literal "inf".
inline std::string format_db(const PsnrValue& v) {
    if (v.infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v.decibels);
    return buf;
}

inline std::size_t residual_noise_count(const GrayImage& img, int alpha,
                                        int beta, int card_threshold) {
    const CardinalityMap card = compute_cardinality(img, alpha, beta);
    std::size_t n = 0;
    for (const auto c : card.counts)
        if (c < card_threshold) ++n;
    return n;
}

}  // namespace phgrms
