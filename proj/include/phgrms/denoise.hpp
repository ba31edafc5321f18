#pragma once

// Impulse-noise removal over a pixel-neighborhood similarity model.
//
// Two passes per iteration: a cardinality pass counts, for every pixel, the
// in-bounds window cells whose intensity lies strictly within +/- alpha of
// the center (the center always counts itself); a removal pass rewrites each
// low-cardinality pixel with the root mean square of its dissimilar window
// cells when enough of the window disagrees with it. Passes read the input
// buffer and write a fresh output buffer, so row ranges can be processed by
// any number of workers with bit-identical results.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "phgrms/image.hpp"

namespace phgrms {

enum class BorderMode {
    Faithful,  // window size is always (2*beta+1)^2, even at borders
    InBounds,  // window size is the number of in-bounds cells
};

enum class EngineMode { Serial, Parallel };

struct DenoiseParams {
    int alpha = 20;          // similarity tolerance, |a - b| < alpha
    int beta = 1;            // window radius; window is (2*beta+1)^2 cells
    int max_iterations = 5;  // iteration cap k
    int card_threshold = 3;  // flagged when cardinality < threshold
    BorderMode border = BorderMode::Faithful;

    void validate() const {
        if (alpha < 1 || alpha > 255)
            throw std::invalid_argument("alpha must be in [1, 255]");
        if (beta < 1) throw std::invalid_argument("beta must be >= 1");
        if (max_iterations < 1)
            throw std::invalid_argument("iterations must be >= 1");
        if (card_threshold < 1)
            throw std::invalid_argument("card_threshold must be >= 1");
    }

    int window_cells() const { return (2 * beta + 1) * (2 * beta + 1); }
};

struct EngineSpec {
    EngineMode mode = EngineMode::Serial;
    int workers = 0;  // <1 means hardware concurrency; ignored when Serial

    static EngineSpec serial() { return {EngineMode::Serial, 1}; }
    static EngineSpec parallel(int workers = 0) {
        return {EngineMode::Parallel, workers};
    }

    int resolved_workers() const {
        if (mode == EngineMode::Serial) return 1;
        if (workers >= 1) return workers;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw >= 1 ? static_cast<int>(hw) : 1;
    }
};

struct PassStats {
    int iteration = 0;          // 1-based
    std::int64_t flagged = 0;   // pixels with cardinality < threshold
    std::int64_t replaced = 0;  // pixels rewritten by the RMS rule
    double elapsed_ms = 0.0;
};

struct CardinalityMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> counts;

    std::int32_t at(int r, int c) const {
        return counts[static_cast<std::size_t>(r) * width + c];
    }
};

inline bool similar(int a, int b, int alpha) { return std::abs(a - b) < alpha; }

struct RowBlock {
    int begin = 0;
    int end = 0;
};

// Contiguous, disjoint row blocks covering [0, height); never emits an
// empty block, so with more workers than rows some workers get nothing.
inline std::vector<RowBlock> row_blocks(int height, int workers) {
    if (height < 0 || workers < 1)
        throw std::invalid_argument("row_blocks: bad height or worker count");
    std::vector<RowBlock> blocks;
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<std::int64_t>(height) * w / workers);
        const int hi = static_cast<int>(static_cast<std::int64_t>(height) * (w + 1) / workers);
        if (hi > lo) blocks.push_back({lo, hi});
    }
    return blocks;
}

// Runs fn(row_begin, row_end) over the blocks; with more than one worker
// each block gets its own thread and the join is the pass barrier. Output
// is bit-identical for any worker count because every block writes only
// its own rows from a shared immutable input.
template <typename Fn>
void parallel_for_rows(int height, int workers, Fn&& fn) {
    const auto blocks = row_blocks(height, workers);
    if (blocks.size() <= 1) {
        for (const auto& b : blocks) fn(b.begin, b.end);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(blocks.size());
    pool.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        pool.emplace_back([&, i] {
            try {
                fn(blocks[i].begin, blocks[i].end);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace detail {

inline void cardinality_rows(const GrayImage& img, int alpha, int beta,
                             std::int32_t* counts, int row_begin, int row_end) {
    const int w = img.width;
    const int h = img.height;
    const std::uint8_t* px = img.pixels.data();
    for (int r = row_begin; r < row_end; ++r) {
        const int r0 = std::max(0, r - beta);
        const int r1 = std::min(h - 1, r + beta);
        for (int c = 0; c < w; ++c) {
            const int c0 = std::max(0, c - beta);
            const int c1 = std::min(w - 1, c + beta);
            const int center = px[static_cast<std::size_t>(r) * w + c];
            std::int32_t n = 0;
            for (int i = r0; i <= r1; ++i) {
                const std::uint8_t* row = px + static_cast<std::size_t>(i) * w;
                for (int j = c0; j <= c1; ++j)
                    n += similar(row[j], center, alpha);
            }
            counts[static_cast<std::size_t>(r) * w + c] = n;
        }
    }
}

// round(sqrt(sum / flag)), half away from zero, clamped to [0, 255].
inline std::uint8_t rms_replacement(std::uint64_t sum_sq, int flag) {
    const double rms = std::sqrt(static_cast<double>(sum_sq) / flag);
    auto v = std::llround(rms);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

struct PassCounters {
    std::int64_t flagged = 0;
    std::int64_t replaced = 0;
};

inline PassCounters removal_rows(const GrayImage& img,
                                 const CardinalityMap& card,
                                 const DenoiseParams& p, std::uint8_t* out,
                                 int row_begin, int row_end) {
    const int w = img.width;
    const int h = img.height;
    const int full_window = p.window_cells();
    const std::uint8_t* px = img.pixels.data();
    PassCounters ctr;
    for (int r = row_begin; r < row_end; ++r) {
        const int r0 = std::max(0, r - p.beta);
        const int r1 = std::min(h - 1, r + p.beta);
        for (int c = 0; c < w; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            const int center = px[idx];
            std::uint8_t value = static_cast<std::uint8_t>(center);
            if (card.counts[idx] < p.card_threshold) {
                ++ctr.flagged;
                const int c0 = std::max(0, c - p.beta);
                const int c1 = std::min(w - 1, c + p.beta);
                const int in_bounds = (r1 - r0 + 1) * (c1 - c0 + 1);
                const int pix_count =
                    p.border == BorderMode::Faithful ? full_window : in_bounds;
                std::uint64_t sum_sq = 0;
                int flag = 0;
                for (int i = r0; i <= r1; ++i) {
                    const std::uint8_t* row =
                        px + static_cast<std::size_t>(i) * w;
                    for (int j = c0; j <= c1; ++j) {
                        const int v = row[j];
                        if (!similar(v, center, p.alpha)) {
                            sum_sq += static_cast<std::uint64_t>(v) * v;
                            ++flag;
                        }
                    }
                }
                // flag can be 0 only for in-bounds windows of <= 2 cells;
                // with no dissimilar cells there is nothing to average.
                if (flag > pix_count - 3 && flag > 0) {
                    value = rms_replacement(sum_sq, flag);
                    ++ctr.replaced;
                }
            }
            out[idx] = value;
        }
    }
    return ctr;
}

}  // namespace detail

inline CardinalityMap compute_cardinality(const GrayImage& img, int alpha,
                                          int beta,
                                          const EngineSpec& engine = EngineSpec::serial()) {
    if (alpha < 1 || alpha > 255)
        throw std::invalid_argument("alpha must be in [1, 255]");
    if (beta < 1) throw std::invalid_argument("beta must be >= 1");
    CardinalityMap map{img.width, img.height,
                       std::vector<std::int32_t>(img.size())};
    parallel_for_rows(img.height, engine.resolved_workers(),
                      [&](int lo, int hi) {
                          detail::cardinality_rows(img, alpha, beta,
                                                   map.counts.data(), lo, hi);
                      });
    return map;
}

inline std::pair<GrayImage, PassStats> denoise_pass(
    const GrayImage& img, const CardinalityMap& card, const DenoiseParams& params,
    const EngineSpec& engine = EngineSpec::serial()) {
    params.validate();
    if (card.width != img.width || card.height != img.height)
        throw std::invalid_argument("cardinality map does not match image");

    GrayImage out(img.width, img.height);
    const auto blocks = row_blocks(img.height, engine.resolved_workers());
    std::vector<detail::PassCounters> partial(blocks.size());

    const auto t0 = std::chrono::steady_clock::now();
    if (blocks.size() <= 1) {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            partial[i] = detail::removal_rows(img, card, params,
                                              out.pixels.data(),
                                              blocks[i].begin, blocks[i].end);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i)
            pool.emplace_back([&, i] {
                partial[i] = detail::removal_rows(img, card, params,
                                                  out.pixels.data(),
                                                  blocks[i].begin,
                                                  blocks[i].end);
            });
        for (auto& t : pool) t.join();
    }
    const auto t1 = std::chrono::steady_clock::now();

    PassStats stats;
    stats.iteration = 1;
    for (const auto& ctr : partial) {
        stats.flagged += ctr.flagged;
        stats.replaced += ctr.replaced;
    }
    stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return {std::move(out), stats};
}

struct DenoiseResult {
    GrayImage image;
    std::vector<PassStats> stats;
};

// Iterates cardinality + removal up to max_iterations times, stopping after
// the first iteration that rewrites nothing.
inline DenoiseResult denoise(const GrayImage& img, const DenoiseParams& params,
                             const EngineSpec& engine = EngineSpec::serial()) {
    params.validate();
    DenoiseResult result{img, {}};
    for (int it = 1; it <= params.max_iterations; ++it) {
        const auto t0 = std::chrono::steady_clock::now();
        const CardinalityMap card =
            compute_cardinality(result.image, params.alpha, params.beta, engine);
        auto [next, stats] = denoise_pass(result.image, card, params, engine);
        const auto t1 = std::chrono::steady_clock::now();

        result.image = std::move(next);
        stats.iteration = it;
        stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.stats.push_back(stats);
        if (stats.replaced == 0) break;
    }
    return result;
}

}  // namespace phgrms
