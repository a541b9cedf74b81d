#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "orbitcount/textio.hpp"

using namespace orbitcount;

TEST_CASE("config parses flat keys, sections, and comments") {
    const ConfigFile cfg = ConfigFile::parse_text(
        "# leading comment\n"
        "kind = count\n"
        "radius= 120.5\n"
        "\n"
        "[orbit]\n"
        "lattice = hecke:5   # trailing comment\n"
        "cap=64\n"
        "schedule = 1.5 1.4 1.3\n");
    CHECK(cfg.get("kind") == "count");
    CHECK(cfg.get_double("radius") == doctest::Approx(120.5));
    CHECK(cfg.get("orbit.lattice") == "hecke:5");
    CHECK(cfg.get_long("orbit.cap") == 64);
    const std::vector<double> schedule = cfg.get_doubles("orbit.schedule");
    REQUIRE(schedule.size() == 3);
    CHECK(schedule[1] == doctest::Approx(1.4));
}

TEST_CASE("config lookups fall back and missing keys throw") {
    const ConfigFile cfg = ConfigFile::parse_text("a = 1\n");
    CHECK(cfg.has("a"));
    CHECK_FALSE(cfg.has("b"));
    CHECK(cfg.get_or("b", "zzz") == "zzz");
    CHECK(cfg.get_double_or("b", 2.5) == doctest::Approx(2.5));
    CHECK(cfg.get_long_or("b", 7) == 7);
    CHECK_THROWS_AS(cfg.get("b"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("a.b"), ConfigError);
}

TEST_CASE("malformed lines and unparseable numbers raise config errors") {
    CHECK_THROWS_AS(ConfigFile::parse_text("just some words\n"), ConfigError);
    const ConfigFile cfg = ConfigFile::parse_text("x = not_a_number\n");
    CHECK_THROWS_AS(cfg.get_double("x"), ConfigError);
    CHECK_THROWS_AS(cfg.get_long("x"), ConfigError);
}

TEST_CASE("digest ignores formatting but tracks content") {
    const ConfigFile a = ConfigFile::parse_text("x = 1\ny = 2\n");
    const ConfigFile b = ConfigFile::parse_text("y=2\n# comment\nx =  1\n");
    const ConfigFile c = ConfigFile::parse_text("x = 1\ny = 3\n");
    CHECK(a.digest() == b.digest());
    CHECK(a.digest() != c.digest());
    CHECK_FALSE(a.digest().empty());
}

TEST_CASE("double formatting round trips exactly") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 3.141592653589793, 1e-300, 6.02e23,
                     1.909859317102744}) {
        const std::string text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("fnv hash is stable and spreads single bit changes") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(hex64(fnv1a64("")).size() == 16);
}

TEST_CASE("csv writer emits the digest header and aligned columns") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "orbitcount-test-textio.csv";
    std::filesystem::remove(path);
    write_csv(path.string(), "deadbeef", {"r", "n"}, {{1.0, 2.0, 3.0}, {10.0, 20.0, 30.0}});
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# config_digest=deadbeef");
    std::getline(in, line);
    CHECK(line == "r,n");
    std::getline(in, line);
    CHECK(line == "1,10");
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "3,30");
    std::filesystem::remove(path);
}

TEST_CASE("csv writer rejects ragged columns") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "orbitcount-test-textio-bad.csv";
    CHECK_THROWS_AS(write_csv(path.string(), "d", {"a", "b"}, {{1.0}, {1.0, 2.0}}),
                    std::invalid_argument);
    std::filesystem::remove(path);
}
