#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "phgrms/bench.hpp"

using phgrms::BenchConfig;
using phgrms::BenchRecord;
using phgrms::EngineSpec;
using phgrms::run_benchmark;
using phgrms::write_csv;

namespace {

const std::string kHeader =
    "image_id,width,height,noise_pct,engine,workers,iterations_run,"
    "total_ms,psnr_noisy_db,psnr_denoised_db,replaced_total\n";

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("csv with no records is just the header") {
    CHECK(write_csv({}) == kHeader);
}

TEST_CASE("csv renders one line per record, inf as literal") {
    BenchRecord rec;
    rec.image_id = "smooth-16";
    rec.width = 16;
    rec.height = 16;
    rec.noise_pct = 5.0;
    rec.engine = "serial";
    rec.workers = 1;
    rec.iterations_run = 2;
    rec.total_ms = 1.2345;
    rec.psnr_noisy_db = 18.7;
    rec.psnr_denoised_db = std::numeric_limits<double>::infinity();
    rec.replaced_total = 12;
    const auto text = write_csv({rec});
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 2);
    CHECK(text.substr(0, kHeader.size()) == kHeader);
    CHECK(lines[1] == "smooth-16,16,16,5.000,serial,1,2,1.234,18.700,inf,12");
}

TEST_CASE("engines in one cell report identical quality") {
    BenchConfig cfg;
    cfg.synth_sizes = {24};
    cfg.densities = {0.10};
    cfg.repetitions = 1;
    cfg.engines = {EngineSpec::serial(), EngineSpec::parallel(2),
                   EngineSpec::parallel(3)};
    const auto result = run_benchmark(cfg);
    REQUIRE(result.records.size() == 3);
    const auto& serial = result.records[0];
    CHECK(serial.engine == "serial");
    CHECK(serial.workers == 1);
    CHECK(serial.total_ms > 0.0);
    CHECK(serial.iterations_run >= 1);
    CHECK(serial.iterations_run <= cfg.params.max_iterations);
    for (const auto& rec : result.records) {
        CHECK(rec.psnr_denoised_db == serial.psnr_denoised_db);
        CHECK(rec.psnr_noisy_db == serial.psnr_noisy_db);
        CHECK(rec.replaced_total == serial.replaced_total);
        CHECK(rec.total_ms > 0.0);
    }
}

TEST_CASE("cell grid size is images x densities x engines") {
    BenchConfig cfg;
    cfg.synth_sizes = {8, 12};
    cfg.densities = {0.05, 0.20};
    cfg.repetitions = 1;
    cfg.engines = {EngineSpec::serial(), EngineSpec::parallel(2)};
    const auto result = run_benchmark(cfg);
    CHECK(result.records.size() == 2 * 2 * 2);
    CHECK(result.warnings.empty());
}

TEST_CASE("unreadable corpus files are skipped with a warning") {
    BenchConfig cfg;
    cfg.corpus_files = {"/nonexistent/missing.pgm"};
    cfg.synth_sizes = {8};
    cfg.densities = {0.1};
    cfg.repetitions = 1;
    cfg.engines = {EngineSpec::serial()};
    const auto result = run_benchmark(cfg);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("missing.pgm") != std::string::npos);
    CHECK(result.records.size() == 1);
}

TEST_CASE("an empty image set is an error") {
    BenchConfig cfg;
    cfg.synth_sizes = {};
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("quality fields are reproducible across runs") {
    BenchConfig cfg;
    cfg.synth_sizes = {16};
    cfg.densities = {0.15};
    cfg.repetitions = 1;
    cfg.engines = {EngineSpec::serial()};
    cfg.seed = 99;
    const auto a = run_benchmark(cfg);
    const auto b = run_benchmark(cfg);
    REQUIRE(a.records.size() == 1);
    REQUIRE(b.records.size() == 1);
    CHECK(a.records[0].psnr_noisy_db == b.records[0].psnr_noisy_db);
    CHECK(a.records[0].psnr_denoised_db == b.records[0].psnr_denoised_db);
    CHECK(a.records[0].replaced_total == b.records[0].replaced_total);
}
