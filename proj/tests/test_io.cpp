#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "raman/io.hpp"
#include "raman/sha256.hpp"

using namespace raman;

TEST_CASE("SHA-256 matches the reference vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("RunConfig parses sections, comments and typed values") {
    auto cfg = RunConfig::from_string(
        "# sweep configuration\n"
        "jobs = 4\n"
        "[map]\n"
        "rel_tol = 1e-4   # tight\n"
        "widths = 0.02, 0.05, 0.1\n"
        "label = third-order\n");
    CHECK(cfg.get_int("jobs", 1) == 4);
    CHECK(cfg.get_double("map.rel_tol", 0.0) == Catch::Approx(1e-4));
    CHECK(cfg.require("map.label") == "third-order");
    auto widths = cfg.get_list("map.widths");
    REQUIRE(widths.size() == 3);
    CHECK(widths[1] == Catch::Approx(0.05));
    CHECK(cfg.get("missing", "fallback") == "fallback");
    CHECK_THROWS_AS(cfg.require("missing"), std::runtime_error);
    CHECK_THROWS_AS(cfg.get_int("map.label", 0), std::runtime_error);
}

TEST_CASE("RunConfig rejects malformed input") {
    CHECK_THROWS_AS(RunConfig::from_string("[unterminated\n"), std::runtime_error);
    CHECK_THROWS_AS(RunConfig::from_string("keyvalue\n"), std::runtime_error);
    CHECK_THROWS_AS(RunConfig::from_string("= value\n"), std::runtime_error);
}

TEST_CASE("Canonical form is sorted and the hash is stable") {
    auto a = RunConfig::from_string("b = 2\na = 1\n");
    auto b = RunConfig::from_string("a = 1\nb = 2\n");
    CHECK(a.canonical() == "a=1\nb=2\n");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.set("c", "3");
    CHECK(a.hash() != b.hash());
}

TEST_CASE("format_double round-trips cleanly") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::stod(format_double(1.0 / 3.0)) == Catch::Approx(1.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("CsvWriter emits deterministic rows") {
    auto path = std::filesystem::temp_directory_path() / "io_test.csv";
    {
        CsvWriter csv(path.string());
        csv.header({"x", "y"});
        csv.row({1.5, 2.25});
        csv.raw_row({"a", "b"});
    }
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::filesystem::remove(path);
    CHECK(ss.str() == "x,y\n1.5,2.25\na,b\n");
}
