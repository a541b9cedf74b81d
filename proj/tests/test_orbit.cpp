#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "orbitcount/lattice.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/orbit_cache.hpp"

using namespace orbitcount;

namespace {

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct TempDir {
    std::filesystem::path path;
    TempDir(const char* tag) {
        path = std::filesystem::temp_directory_path() / tag;
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("walk from e1 reproduces the coprime pair oracle") {
    const OrbitSet walk = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 120.0);
    REQUIRE(walk.stabilized);
    const OrbitSet oracle = primitive_points_oracle(120.0);
    REQUIRE(walk.size() == oracle.size());
    for (std::size_t i = 0; i < walk.size(); ++i) {
        CHECK(walk.points[i].x == oracle.points[i].x);
        CHECK(walk.points[i].y == oracle.points[i].y);
    }
}

TEST_CASE("orbit points arrive sorted by norm with cached norms") {
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 60.0);
    REQUIRE(orbit.norms.size() == orbit.points.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        CHECK(orbit.norms[i] == doctest::Approx(orbit.points[i].norm()));
        if (i > 0) {
            CHECK(orbit.norms[i] >= orbit.norms[i - 1]);
        }
    }
}

TEST_CASE("count at radius matches a brute force gcd scan") {
    const OrbitSet orbit = primitive_points_oracle(100.0);
    CHECK(count_at_radius(orbit, 1.0) == 4);
    CHECK(count_at_radius(orbit, 0.5) == 0);
    for (int r : {7, 10, 25}) {
        std::size_t brute = 0;
        for (int x = -r; x <= r; ++x) {
            for (int y = -r; y <= r; ++y) {
                if ((x != 0 || y != 0) && x * x + y * y <= r * r &&
                    std::gcd(std::abs(x), std::abs(y)) == 1) {
                    ++brute;
                }
            }
        }
        CHECK(count_at_radius(orbit, static_cast<double>(r)) == brute);
    }
}

TEST_CASE("hecke orbit walk stabilizes and stays primitive-free of duplicates") {
    const OrbitSet orbit = enumerate_orbit(preset_hecke(5), {1.0, 0.0}, 40.0);
    REQUIRE(orbit.stabilized);
    CHECK(orbit.size() > 100);
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    for (std::size_t i = 1; i < orbit.size(); ++i) {
        const double dx = orbit.points[i].x - orbit.points[i - 1].x;
        const double dy = orbit.points[i].y - orbit.points[i - 1].y;
        CHECK(dx * dx + dy * dy > quantum * quantum * 0.25);
    }
}

TEST_CASE("norm slack below one is rejected") {
    EnumOptions options;
    options.norm_slack = 0.5;
    CHECK_THROWS_AS(enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 50.0, options),
                    std::invalid_argument);
}

TEST_CASE("scan of primitive norms integrates to the oracle count") {
    const OrbitSet oracle = primitive_points_oracle(300.0);
    std::size_t total = 0;
    scan_primitive_norms(300.0, [&total](double, std::size_t mult) { total += mult; });
    CHECK(total == oracle.size());
}

TEST_CASE("primitive counts on a grid agree with direct counting") {
    const std::vector<double> radii = {10.0, 50.0, 123.4, 200.0};
    const std::vector<std::size_t> counts = primitive_counts(radii);
    const OrbitSet oracle = primitive_points_oracle(200.0);
    REQUIRE(counts.size() == radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(counts[i] == count_at_radius(oracle, radii[i]));
    }
}

TEST_CASE("cache write is byte deterministic and read trips the same orbit") {
    TempDir dir("orbitcount-test-cache-a");
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 80.0);
    const std::string path1 = write_orbit_cache(dir.path.string(), orbit);
    const std::string bytes1 = read_bytes(path1);
    std::filesystem::remove(path1);
    const std::string path2 = write_orbit_cache(dir.path.string(), orbit);
    CHECK(path1 == path2);
    CHECK(read_bytes(path2) == bytes1);

    const CacheLookup lookup =
        read_orbit_cache(dir.path.string(), orbit.lattice_id, orbit.base, orbit.r_cap,
                         orbit.options);
    REQUIRE(lookup.orbit.has_value());
    CHECK(lookup.note.empty());
    REQUIRE(lookup.orbit->size() == orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        CHECK(lookup.orbit->points[i].x == orbit.points[i].x);
        CHECK(lookup.orbit->points[i].y == orbit.points[i].y);
    }
    CHECK(lookup.orbit->stabilized == orbit.stabilized);
}

TEST_CASE("corrupted cache file is rejected with a note, then re-enumerated") {
    TempDir dir("orbitcount-test-cache-b");
    const LatticeSpec lattice = preset_sl2z();
    bool hit = false;
    const OrbitSet first =
        cached_enumerate_orbit(dir.path.string(), lattice, {1.0, 0.0}, 60.0, {}, &hit);
    CHECK_FALSE(hit);

    const std::string path = write_orbit_cache(dir.path.string(), first);
    {
        std::fstream file(path, std::ios::in | std::ios::out | std::ios::binary);
        file.seekg(64);
        const char original = static_cast<char>(file.get());
        file.seekp(64);
        file.put(static_cast<char>(original ^ 0x40));
    }
    const CacheLookup lookup =
        read_orbit_cache(dir.path.string(), first.lattice_id, first.base, first.r_cap,
                         first.options);
    CHECK_FALSE(lookup.orbit.has_value());
    CHECK_FALSE(lookup.note.empty());

    const OrbitSet again =
        cached_enumerate_orbit(dir.path.string(), lattice, {1.0, 0.0}, 60.0, {}, &hit);
    CHECK_FALSE(hit);
    CHECK(again.size() == first.size());
    const OrbitSet third =
        cached_enumerate_orbit(dir.path.string(), lattice, {1.0, 0.0}, 60.0, {}, &hit);
    CHECK(hit);
    CHECK(third.size() == first.size());
}

TEST_CASE("cache garbage collection trims to the byte budget") {
    TempDir dir("orbitcount-test-cache-c");
    const LatticeSpec lattice = preset_sl2z();
    std::uintmax_t min_size = UINTMAX_MAX;
    std::uintmax_t max_size = 0;
    for (double cap : {30.0, 40.0, 50.0, 60.0}) {
        const OrbitSet orbit = enumerate_orbit(lattice, {1.0, 0.0}, cap);
        const std::string path = write_orbit_cache(dir.path.string(), orbit);
        const std::uintmax_t size = std::filesystem::file_size(path);
        min_size = std::min(min_size, size);
        max_size = std::max(max_size, size);
    }
    const std::uintmax_t budget = max_size + min_size;
    const CacheGcResult result = cache_gc(dir.path.string(), budget);
    CHECK(result.files_before == 4);
    CHECK(result.bytes_after <= budget);
    CHECK(result.removed == result.files_before - result.files_after);
    CHECK(result.files_after >= 1);
    CHECK(result.removed >= 2);
    CHECK(result.removed_files.size() == result.removed);
    for (const std::string& name : result.removed_files) {
        CHECK(name.rfind("orb1-", 0) == 0);
        CHECK_FALSE(std::filesystem::exists(dir.path / name));
    }
}

TEST_CASE("cache garbage collection with zero budget removes every file") {
    TempDir dir("orbitcount-test-cache-d");
    const LatticeSpec lattice = preset_sl2z();
    for (double cap : {30.0, 45.0}) {
        const OrbitSet orbit = enumerate_orbit(lattice, {1.0, 0.0}, cap);
        write_orbit_cache(dir.path.string(), orbit);
    }
    const CacheGcResult result = cache_gc(dir.path.string(), 0);
    CHECK(result.files_before == 2);
    CHECK(result.files_after == 0);
    CHECK(result.bytes_after == 0);
    CHECK(result.removed_files.size() == 2);
}

TEST_CASE("cache key separates lattices, base vectors, and options") {
    EnumOptions options;
    const std::string base = orbit_cache_key("sl2z", {1.0, 0.0}, 100.0, options);
    CHECK(base != orbit_cache_key("hecke:5", {1.0, 0.0}, 100.0, options));
    CHECK(base != orbit_cache_key("sl2z", {2.0, 0.0}, 100.0, options));
    CHECK(base != orbit_cache_key("sl2z", {1.0, 0.0}, 200.0, options));
    options.norm_slack = 8.0;
    CHECK(base != orbit_cache_key("sl2z", {1.0, 0.0}, 100.0, options));
}
