// phgrms: command-line front end for the denoising toolkit.
//
// Exit codes: 0 success, 1 runtime/data error (codec failures, dimension
// mismatches), 2 usage error (bad flags or out-of-range values).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phgrms/phgrms.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct DenoiseFlags {
    int alpha = 20;
    int beta = 1;
    int iters = 5;
    std::string border = "faithful";
};

// Returns false (after printing to stderr) on out-of-range values.
bool check_denoise_flags(const DenoiseFlags& f) {
    if (f.alpha < 1) {
        std::fprintf(stderr, "alpha must be >= 1\n");
        return false;
    }
    if (f.alpha > 255) {
        std::fprintf(stderr, "alpha must be <= 255\n");
        return false;
    }
    if (f.beta < 1) {
        std::fprintf(stderr, "beta must be >= 1\n");
        return false;
    }
    if (f.iters < 1) {
        std::fprintf(stderr, "iters must be >= 1\n");
        return false;
    }
    if (f.border != "faithful" && f.border != "inbounds") {
        std::fprintf(stderr, "border must be 'faithful' or 'inbounds'\n");
        return false;
    }
    return true;
}

phgrms::DenoiseParams to_params(const DenoiseFlags& f) {
    phgrms::DenoiseParams p;
    p.alpha = f.alpha;
    p.beta = f.beta;
    p.max_iterations = f.iters;
    p.border = f.border == "inbounds" ? phgrms::BorderMode::InBounds
                                      : phgrms::BorderMode::Faithful;
    return p;
}

void add_denoise_flags(CLI::App* cmd, DenoiseFlags& f) {
    cmd->add_option("--alpha", f.alpha, "similarity tolerance (default 20)");
    cmd->add_option("--beta", f.beta, "neighborhood radius (default 1)");
    cmd->add_option("--iters", f.iters, "iteration cap (default 5)");
    cmd->add_option("--border", f.border,
                    "border mode: faithful|inbounds (default faithful)");
}

int run_denoise(const std::string& in_path, const std::string& out_path,
                const DenoiseFlags& flags, const std::string& engine_name,
                int threads, bool print_stats) {
    if (!check_denoise_flags(flags)) return kExitUsage;
    if (engine_name != "serial" && engine_name != "parallel") {
        std::fprintf(stderr, "engine must be 'serial' or 'parallel'\n");
        return kExitUsage;
    }
    if (threads < 0) {
        std::fprintf(stderr, "threads must be >= 1\n");
        return kExitUsage;
    }
    try {
        const phgrms::GrayImage img = phgrms::load_pgm(in_path);
        const phgrms::EngineSpec engine =
            engine_name == "serial" ? phgrms::EngineSpec::serial()
                                    : phgrms::EngineSpec::parallel(threads);
        const auto result = phgrms::denoise(img, to_params(flags), engine);
        phgrms::save_pgm(out_path, result.image);
        if (print_stats) {
            for (const auto& s : result.stats)
                std::printf("iter=%d flagged=%lld replaced=%lld ms=%.3f\n",
                            s.iteration, static_cast<long long>(s.flagged),
                            static_cast<long long>(s.replaced), s.elapsed_ms);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

int run_add_noise(const std::string& in_path, const std::string& out_path,
                  double density, double salt_ratio, unsigned seed,
                  const std::string& mask_path) {
    if (!(density >= 0.0 && density <= 1.0)) {
        std::fprintf(stderr, "density must be in [0, 1]\n");
        return kExitUsage;
    }
    if (!(salt_ratio >= 0.0 && salt_ratio <= 1.0)) {
        std::fprintf(stderr, "salt-ratio must be in [0, 1]\n");
        return kExitUsage;
    }
    try {
        const phgrms::GrayImage img = phgrms::load_pgm(in_path);
        phgrms::NoiseSpec spec;
        spec.density = density;
        spec.salt_ratio = salt_ratio;
        spec.seed = seed;
        const auto [noisy, mask] = phgrms::inject_sp_noise(img, spec);
        phgrms::save_pgm(out_path, noisy);
        if (!mask_path.empty()) {
            phgrms::GrayImage mask_img(mask.width, mask.height);
            for (std::size_t i = 0; i < mask.flags.size(); ++i)
                mask_img.pixels[i] = mask.flags[i] ? 255 : 0;
            phgrms::save_pgm(mask_path, mask_img);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

int run_psnr(const std::string& path_a, const std::string& path_b) {
    try {
        const phgrms::GrayImage a = phgrms::load_pgm(path_a);
        const phgrms::GrayImage b = phgrms::load_pgm(path_b);
        const double m = phgrms::mse(a, b);
        std::printf("psnr_db=%s mse=%.3f\n",
                    phgrms::format_db(phgrms::psnr(a, b)).c_str(), m);
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

int run_cardmap(const std::string& in_path, const std::string& out_path,
                int alpha, int beta) {
    DenoiseFlags f;
    f.alpha = alpha;
    f.beta = beta;
    if (!check_denoise_flags(f)) return kExitUsage;
    try {
        const phgrms::GrayImage img = phgrms::load_pgm(in_path);
        const auto card = phgrms::compute_cardinality(img, alpha, beta);
        const int maxval = (2 * beta + 1) * (2 * beta + 1);
        phgrms::save_bytes(out_path, phgrms::write_p2(card.width, card.height,
                                                      card.counts, maxval));
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

std::vector<std::string> collect_corpus(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

int run_bench(const std::vector<int>& sizes,
              const std::vector<double>& densities, const std::string& corpus,
              int reps, const std::vector<int>& threads, unsigned seed,
              const std::string& out_csv, const DenoiseFlags& flags) {
    if (!check_denoise_flags(flags)) return kExitUsage;
    if (reps < 1) {
        std::fprintf(stderr, "reps must be >= 1\n");
        return kExitUsage;
    }
    for (const int s : sizes)
        if (s < 1) {
            std::fprintf(stderr, "sizes must be >= 1\n");
            return kExitUsage;
        }
    for (const double d : densities)
        if (!(d >= 0.0 && d <= 1.0)) {
            std::fprintf(stderr, "densities must be in [0, 1]\n");
            return kExitUsage;
        }
    for (const int t : threads)
        if (t < 1) {
            std::fprintf(stderr, "threads must be >= 1\n");
            return kExitUsage;
        }
    try {
        phgrms::BenchConfig cfg;
        cfg.synth_sizes = sizes;
        cfg.densities = densities;
        cfg.repetitions = reps;
        cfg.seed = seed;
        cfg.params = to_params(flags);
        if (!corpus.empty()) cfg.corpus_files = collect_corpus(corpus);
        cfg.engines = {phgrms::EngineSpec::serial()};
        if (threads.empty()) {
            cfg.engines.push_back(phgrms::EngineSpec::parallel());
        } else {
            for (const int t : threads)
                cfg.engines.push_back(phgrms::EngineSpec::parallel(t));
        }

        const phgrms::BenchResult result = phgrms::run_benchmark(cfg);
        for (const auto& w : result.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
        phgrms::save_bytes(out_csv, phgrms::write_csv(result.records));

        // Per-size speedup: serial time over the widest parallel engine,
        // summed across densities.
        std::map<std::pair<int, int>, std::pair<double, double>> totals;
        int max_workers = 0;
        for (const auto& r : result.records)
            if (r.engine == "parallel") max_workers = std::max(max_workers, r.workers);
        for (const auto& r : result.records) {
            auto& [serial_ms, parallel_ms] = totals[{r.width, r.height}];
            if (r.engine == "serial") serial_ms += r.total_ms;
            if (r.engine == "parallel" && r.workers == max_workers)
                parallel_ms += r.total_ms;
        }
        for (const auto& [shape, ms] : totals) {
            if (ms.second <= 0.0) continue;
            const std::string label =
                shape.first == shape.second
                    ? std::to_string(shape.first)
                    : std::to_string(shape.first) + "x" + std::to_string(shape.second);
            std::printf("size=%s speedup=%.2f\n", label.c_str(),
                        ms.first / ms.second);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grayscale salt-and-pepper denoising toolkit"};
    app.require_subcommand(1);

    // denoise
    auto* denoise_cmd = app.add_subcommand("denoise", "denoise a PGM image");
    std::string dn_in, dn_out;
    DenoiseFlags dn_flags;
    std::string dn_engine = "parallel";
    int dn_threads = 0;  // 0 = hardware concurrency
    bool dn_stats = false;
    denoise_cmd->add_option("input", dn_in, "input PGM")->required();
    denoise_cmd->add_option("output", dn_out, "output PGM")->required();
    add_denoise_flags(denoise_cmd, dn_flags);
    denoise_cmd->add_option("--engine", dn_engine,
                            "engine: serial|parallel (default parallel)");
    denoise_cmd->add_option("--threads", dn_threads,
                            "worker count (default: hardware)")
        ->check(CLI::PositiveNumber);
    denoise_cmd->add_flag("--stats", dn_stats, "print per-iteration stats");

    // add-noise
    auto* noise_cmd = app.add_subcommand("add-noise", "inject salt-and-pepper noise");
    std::string ns_in, ns_out, ns_mask;
    double ns_density = 0.0, ns_salt = 0.5;
    unsigned ns_seed = 0;
    noise_cmd->add_option("input", ns_in, "input PGM")->required();
    noise_cmd->add_option("output", ns_out, "output PGM")->required();
    noise_cmd->add_option("--density", ns_density, "fraction of pixels to corrupt")
        ->required();
    noise_cmd->add_option("--salt-ratio", ns_salt,
                          "salt fraction of corrupted pixels (default 0.5)");
    noise_cmd->add_option("--seed", ns_seed, "generator seed (default 0)");
    noise_cmd->add_option("--mask", ns_mask,
                          "write corruption mask PGM (255=corrupted)");

    // psnr
    auto* psnr_cmd = app.add_subcommand("psnr", "PSNR/MSE between two PGMs");
    std::string ps_a, ps_b;
    psnr_cmd->add_option("a", ps_a, "first PGM")->required();
    psnr_cmd->add_option("b", ps_b, "second PGM")->required();

    // cardmap
    auto* card_cmd = app.add_subcommand("cardmap", "dump the cardinality map as P2");
    std::string cm_in, cm_out;
    int cm_alpha = 20, cm_beta = 1;
    card_cmd->add_option("input", cm_in, "input PGM")->required();
    card_cmd->add_option("output", cm_out, "output P2 PGM")->required();
    card_cmd->add_option("--alpha", cm_alpha, "similarity tolerance (default 20)");
    card_cmd->add_option("--beta", cm_beta, "neighborhood radius (default 1)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark grid, emit CSV");
    std::vector<int> bn_sizes{128, 256, 512, 1024, 2048};
    std::vector<double> bn_densities{0.05, 0.10, 0.15, 0.20};
    std::string bn_corpus, bn_out;
    int bn_reps = 5;
    std::vector<int> bn_threads;
    unsigned bn_seed = 0;
    DenoiseFlags bn_flags;
    bench_cmd->add_option("--sizes", bn_sizes, "synthetic square sizes")
        ->delimiter(',');
    bench_cmd->add_option("--densities", bn_densities, "noise densities")
        ->delimiter(',');
    bench_cmd->add_option("--corpus", bn_corpus, "directory of PGM images");
    bench_cmd->add_option("--reps", bn_reps, "repetitions per cell (default 5)");
    bench_cmd->add_option("--threads", bn_threads,
                          "parallel worker counts (default: hardware)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bn_seed, "noise seed (default 0)");
    bench_cmd->add_option("--out", bn_out, "output CSV path")->required();
    add_denoise_flags(bench_cmd, bn_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (app.got_subcommand(denoise_cmd))
        return run_denoise(dn_in, dn_out, dn_flags, dn_engine, dn_threads, dn_stats);
    if (app.got_subcommand(noise_cmd))
        return run_add_noise(ns_in, ns_out, ns_density, ns_salt, ns_seed, ns_mask);
    if (app.got_subcommand(psnr_cmd)) return run_psnr(ps_a, ps_b);
    if (app.got_subcommand(card_cmd))
        return run_cardmap(cm_in, cm_out, cm_alpha, cm_beta);
    if (app.got_subcommand(bench_cmd))
        return run_bench(bn_sizes, bn_densities, bn_corpus, bn_reps, bn_threads,
                         bn_seed, bn_out, bn_flags);
    return kExitUsage;
}
