#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <topicbench/errors.hpp>
#include <topicbench/io.hpp>
#include <topicbench/rng.hpp>

#include "helpers.hpp"

namespace tb = topicbench;

TEST_SUITE("io") {

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(tb::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(tb::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(tb::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("fnv1a64_extend continues a digest as if the input were concatenated") {
    const std::uint64_t whole = tb::fnv1a64("foobar");
    std::uint64_t partial = tb::fnv1a64("foo");
    partial = tb::fnv1a64_extend(partial, "bar");
    CHECK(partial == whole);
    CHECK(tb::fnv1a64_extend(tb::fnv1a64(""), "a") == tb::fnv1a64("a"));
}

TEST_CASE("fnv1a64_file hashes file bytes exactly") {
    testutil::ScratchDir dir("io_fnv");
    const std::string path = dir.file("blob.bin");
    tb::write_file_atomic(path, "foobar");
    CHECK(tb::fnv1a64_file(path) == 0x85944171f73967e8ULL);
}

TEST_CASE("hex64 renders zero-padded lowercase hex") {
    CHECK(tb::hex64(0) == "0000000000000000");
    CHECK(tb::hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(tb::hex64(0xfULL) == "000000000000000f");
}

TEST_CASE("format_double/parse_double round-trip exactly") {
    std::mt19937_64 gen(12345);
    for (int i = 0; i < 200; ++i) {
        const double x = (tb::uniform_double(gen) - 0.5) * 1e6;
        CHECK(tb::parse_double(tb::format_double(x)) == x);
    }
    CHECK(tb::parse_double(tb::format_double(0.1)) == 0.1);
    CHECK(tb::parse_double(tb::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(tb::format_double(1.0) == "1");
    CHECK(tb::format_double(0.5) == "0.5");
}

TEST_CASE("parse_double rejects junk") {
    CHECK_THROWS_AS(tb::parse_double("abc"), tb::InputError);
    CHECK_THROWS_AS(tb::parse_double(""), tb::InputError);
    CHECK_THROWS_AS(tb::parse_double("1.5x"), tb::InputError);
    CHECK_THROWS_AS(tb::parse_double("1e999"), tb::InputError);
    CHECK(tb::parse_double("  2.5") == 2.5);  // leading spaces are fine
}

TEST_CASE("split keeps empty fields") {
    CHECK(tb::split("a,b,c", ',') == std::vector<std::string>{"a", "b", "c"});
    CHECK(tb::split("a,,c", ',') == std::vector<std::string>{"a", "", "c"});
    CHECK(tb::split("", ',') == std::vector<std::string>{""});
    CHECK(tb::split("a,", ',') == std::vector<std::string>{"a", ""});
}

TEST_CASE("write_file_atomic replaces content and leaves no temp files") {
    testutil::ScratchDir dir("io_atomic");
    const std::string path = dir.file("out.txt");
    tb::write_file_atomic(path, "first");
    CHECK(tb::read_file(path) == "first");
    tb::write_file_atomic(path, "second");
    CHECK(tb::read_file(path) == "second");
    std::size_t entries = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
        (void)entry;
        ++entries;
    }
    CHECK(entries == 1);
}

TEST_CASE("read_file on a missing path is an input error") {
    testutil::ScratchDir dir("io_missing");
    CHECK_THROWS_AS((void)tb::read_file(dir.file("nope.txt")), tb::InputError);
}

TEST_CASE("RunManifest::save writes valid JSON with all fields") {
    testutil::ScratchDir dir("io_manifest");
    tb::RunManifest manifest;
    manifest.command = "features";
    manifest.tool_version = "0.0.0-test";
    manifest.seed = 42;
    manifest.config["window"] = "5";
    manifest.input_digests["messages.jsonl"] = "cbf29ce484222325";
    manifest.started_at = "2026-01-01T00:00:00Z";
    manifest.finished_at = "2026-01-01T00:00:01Z";
    const std::string path = dir.file("manifest.json");
    manifest.save(path);
    const std::string body = tb::read_file(path);
    CHECK(body.find("\"command\"") != std::string::npos);
    CHECK(body.find("features") != std::string::npos);
    CHECK(body.find("\"seed\"") != std::string::npos);
    CHECK(body.find("42") != std::string::npos);
    CHECK(body.find("cbf29ce484222325") != std::string::npos);
    CHECK(body.find("2026-01-01T00:00:00Z") != std::string::npos);
}

TEST_CASE("iso8601_utc_now looks like a UTC timestamp") {
    const std::string now = tb::iso8601_utc_now();
    REQUIRE(now.size() == 20);
    CHECK(now[4] == '-');
    CHECK(now[7] == '-');
    CHECK(now[10] == 'T');
    CHECK(now[13] == ':');
    CHECK(now[16] == ':');
    CHECK(now.back() == 'Z');
}

TEST_CASE("mix_seed separates streams and is stable") {
    CHECK(tb::mix_seed(1, 2) == tb::mix_seed(1, 2));
    CHECK(tb::mix_seed(1, 2) != tb::mix_seed(1, 3));
    CHECK(tb::mix_seed(1, 2) != tb::mix_seed(2, 2));
}

TEST_CASE("uniform_double stays in [0, 1) and is deterministic") {
    std::mt19937_64 a(7);
    std::mt19937_64 b(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = tb::uniform_double(a);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == tb::uniform_double(b));
    }
}

TEST_CASE("uniform_below covers the full range without bias artifacts") {
    std::mt19937_64 gen(3);
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t v = tb::uniform_below(gen, 5);
        REQUIRE(v < 5);
        ++seen[static_cast<std::size_t>(v)];
    }
    for (int count : seen) CHECK(count > 800);
}

TEST_CASE("shuffle_inplace is a permutation and seed-stable") {
    std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::mt19937_64 gen(99);
    tb::shuffle_inplace(items, gen);
    std::vector<int> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

    std::vector<int> again{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::mt19937_64 gen2(99);
    tb::shuffle_inplace(again, gen2);
    CHECK(again == items);
}

TEST_CASE("weighted_pick respects zero weights and proportions") {
    std::mt19937_64 gen(17);
    const std::vector<double> weights{0.0, 1.0, 3.0};
    std::vector<int> seen(3, 0);
    for (int i = 0; i < 4000; ++i) {
        ++seen[tb::weighted_pick(weights, gen)];
    }
    CHECK(seen[0] == 0);
    CHECK(seen[1] > 600);
    CHECK(seen[2] > 2. * seen[1]);
}

}  // TEST_SUITE
