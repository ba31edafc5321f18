#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "phgrms/image.hpp"
#include "phgrms/pgm.hpp"
#include "support/oracles.hpp"

using phgrms::GrayImage;
using phgrms::PgmError;
using phgrms::read_pgm;
using phgrms::write_pgm;

TEST_CASE("ascii P2 stream decodes to the expected raster") {
    const auto img = read_pgm("P2\n2 2\n255\n0 64 128 255");
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 64, 128, 255});
}

TEST_CASE("binary P5 encoding is bit-exact") {
    const GrayImage img(1, 1, 200);
    const std::string bytes = write_pgm(img);
    CHECK(bytes == std::string("P5\n1 1\n255\n") + '\xC8');

    const GrayImage wide(2, 3, 9);
    CHECK(write_pgm(wide).size() == std::string("P5\n2 3\n255\n").size() + 6);
}

TEST_CASE("roundtrip is the identity for both encodings") {
    std::mt19937 rng(7);
    for (int i = 0; i < 25; ++i) {
        const int w = 1 + static_cast<int>(rng() % 20);
        const int h = 1 + static_cast<int>(rng() % 20);
        const GrayImage img = oracle::random_image(rng, w, h);
        CHECK(read_pgm(write_pgm(img, false)) == img);
        CHECK(read_pgm(write_pgm(img, true)) == img);
    }
}

TEST_CASE("P2 and P5 encodings of one image decode identically") {
    std::mt19937 rng(8);
    const GrayImage img = oracle::random_image(rng, 13, 9);
    CHECK(read_pgm(write_pgm(img, true)) == read_pgm(write_pgm(img, false)));
}

TEST_CASE("header comments are skipped") {
    const auto img =
        read_pgm("P2\n# produced by hand\n2 1 # dims\n# maxval next\n255\n3 4");
    CHECK(img.pixels == std::vector<std::uint8_t>{3, 4});

    const std::string p5 = "P5\n# note\n1 1\n255\n" + std::string(1, '\x05');
    CHECK(read_pgm(p5).pixels == std::vector<std::uint8_t>{5});
}

TEST_CASE("maxval below 255 is accepted without rescaling") {
    const auto img = read_pgm("P2\n2 1\n15\n0 15");
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 15});
    CHECK_THROWS_WITH(read_pgm("P2\n2 1\n15\n0 16"),
                      "PGM pixel value exceeds maxval");
}

TEST_CASE("16-bit streams are rejected") {
    CHECK_THROWS_WITH(read_pgm("P2\n1 1\n65535\n1234"),
                      "16-bit PGM unsupported");
    CHECK_THROWS_WITH(read_pgm("P5\n1 1\n256\n\x00"), "16-bit PGM unsupported");
}

TEST_CASE("malformed streams are rejected") {
    CHECK_THROWS_AS(read_pgm("P6\n1 1\n255\nxxx"), PgmError);
    CHECK_THROWS_AS(read_pgm(""), PgmError);
    CHECK_THROWS_AS(read_pgm("P2\n1\n255\n0"), PgmError);
    CHECK_THROWS_AS(read_pgm("P2\n0 1\n255\n"), PgmError);
    CHECK_THROWS_WITH(read_pgm("P5\n2 2\n255\nab"), "truncated PGM pixel data");
    CHECK_THROWS_WITH(read_pgm("P2\n2 2\n255\n1 2 3"),
                      "truncated PGM pixel data");
}
