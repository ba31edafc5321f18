#pragma once

// Benchmark grid: (image x noise density x engine) cells, each reporting the
// median wall time of the full denoise call plus restoration quality against
// the clean original. Timing excludes file I/O and noise injection. Cells run
// one at a time so parallel-engine timings are unperturbed.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phgrms/denoise.hpp"
#include "phgrms/image.hpp"
#include "phgrms/metrics.hpp"
#include "phgrms/noise.hpp"
#include "phgrms/pgm.hpp"

namespace phgrms {

struct BenchConfig {
    std::vector<std::string> corpus_files;  // PGM paths; unreadable files are
                                            // skipped with a warning
    std::vector<int> synth_sizes{128, 256, 512, 1024, 2048};  // square
    std::vector<double> densities{0.05, 0.10, 0.15, 0.20};
    std::vector<EngineSpec> engines{EngineSpec::serial(),
                                    EngineSpec::parallel()};
    int repetitions = 5;
    DenoiseParams params;
    std::uint32_t seed = 0;
};

struct BenchRecord {
    std::string image_id;
    int width = 0;
    int height = 0;
    double noise_pct = 0.0;  // density * 100
    std::string engine;      // "serial" | "parallel"
    int workers = 1;
    int iterations_run = 0;
    double total_ms = 0.0;
    double psnr_noisy_db = 0.0;
    double psnr_denoised_db = 0.0;
    std::int64_t replaced_total = 0;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::vector<std::string> warnings;
};

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Per-cell noise seed so every engine in a cell sees the same noisy image
// while distinct cells get distinct corruption.
inline std::uint32_t cell_seed(std::uint32_t base, std::size_t image_idx,
                               std::size_t density_idx) {
    std::uint64_t x = base;
    x ^= (image_idx + 1) * 0x9E3779B97F4A7C15ull;
    x ^= (density_idx + 1) * 0xBF58476D1CE4E5B9ull;
    x ^= x >> 31;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 29;
    return static_cast<std::uint32_t>(x);
}

}  // namespace detail

inline BenchResult run_benchmark(const BenchConfig& cfg) {
    if (cfg.repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    for (const double d : cfg.densities)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("densities must be in [0, 1]");
    cfg.params.validate();

    BenchResult result;
    std::vector<std::pair<std::string, GrayImage>> images;
    for (const auto& path : cfg.corpus_files) {
        try {
            images.emplace_back(path, load_pgm(path));
        } catch (const std::exception& e) {
            result.warnings.push_back("skipped " + path + ": " + e.what());
        }
    }
    for (const int size : cfg.synth_sizes) {
        images.emplace_back("smooth-" + std::to_string(size),
                            synth_image(size, size, cfg.seed, SynthKind::SmoothRandom));
    }
    if (images.empty()) throw std::invalid_argument("no benchmark images");

    for (std::size_t ii = 0; ii < images.size(); ++ii) {
        const auto& [id, clean] = images[ii];
        for (std::size_t di = 0; di < cfg.densities.size(); ++di) {
            const double density = cfg.densities[di];
            NoiseSpec spec;
            spec.density = density;
            spec.seed = detail::cell_seed(cfg.seed, ii, di);
            const auto [noisy, mask] = inject_sp_noise(clean, spec);
            const double noisy_db = psnr(clean, noisy).decibels;

            for (const auto& engine : cfg.engines) {
                std::vector<double> times;
                times.reserve(cfg.repetitions);
                DenoiseResult run;
                for (int rep = 0; rep < cfg.repetitions; ++rep) {
                    const auto t0 = std::chrono::steady_clock::now();
                    run = denoise(noisy, cfg.params, engine);
                    const auto t1 = std::chrono::steady_clock::now();
                    times.push_back(
                        std::chrono::duration<double, std::milli>(t1 - t0)
                            .count());
                }
                BenchRecord rec;
                rec.image_id = id;
                rec.width = clean.width;
                rec.height = clean.height;
                rec.noise_pct = density * 100.0;
                rec.engine =
                    engine.mode == EngineMode::Serial ? "serial" : "parallel";
                rec.workers = engine.resolved_workers();
                rec.iterations_run = static_cast<int>(run.stats.size());
                rec.total_ms = detail::median(std::move(times));
                rec.psnr_noisy_db = noisy_db;
                rec.psnr_denoised_db = psnr(clean, run.image).decibels;
                for (const auto& s : run.stats) rec.replaced_total += s.replaced;
                result.records.push_back(std::move(rec));
            }
        }
    }
    return result;
}

inline std::string write_csv(const std::vector<BenchRecord>& records) {
    std::string out =
        "image_id,width,height,noise_pct,engine,workers,iterations_run,"
        "total_ms,psnr_noisy_db,psnr_denoised_db,replaced_total\n";
    char buf[64];
    const auto real = [&buf](double v) -> std::string {
        if (std::isinf(v)) return "inf";
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return buf;
    };
    for (const auto& r : records) {
        out += r.image_id;
        out += ',' + std::to_string(r.width);
        out += ',' + std::to_string(r.height);
        out += ',' + real(r.noise_pct);
        out += ',' + r.engine;
        out += ',' + std::to_string(r.workers);
        out += ',' + std::to_string(r.iterations_run);
        out += ',' + real(r.total_ms);
        out += ',' + real(r.psnr_noisy_db);
        out += ',' + real(r.psnr_denoised_db);
        out += ',' + std::to_string(r.replaced_total);
        out += '\n';
    }
    return out;
}

}  // namespace phgrms
