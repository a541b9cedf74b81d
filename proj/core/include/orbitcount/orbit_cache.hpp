#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcount/orbit.hpp"

namespace orbitcount {

// Digest identifying an enumeration request: lattice id, base vector,
// cap and the dedup options all participate.
std::string orbit_cache_key(const std::string& lattice_id, const PlaneVector& v, double r_cap,
                            const EnumOptions& options);

// File name used inside the cache directory for a given key.
std::string orbit_cache_filename(const std::string& key);

// Writes the orbit to <dir>/orb1-<key>.bin. Creates the directory when
// missing. Returns the file path. Writing the same orbit twice produces
// byte identical files.
std::string write_orbit_cache(const std::string& dir, const OrbitSet& orbit);

struct CacheLookup {
    std::optional<OrbitSet> orbit;
    // Empty on a clean hit or a plain miss; describes the problem when a
    // present file had to be rejected (bad magic, checksum mismatch, or a
    // key that does not match the request).
    std::string note;
};

CacheLookup read_orbit_cache(const std::string& dir, const std::string& lattice_id,
                             const PlaneVector& v, double r_cap, const EnumOptions& options);

// Returns a cached orbit when available, otherwise enumerates and stores it.
// hit reports which branch ran.
OrbitSet cached_enumerate_orbit(const std::string& dir, const LatticeSpec& lattice,
                                const PlaneVector& v, double r_cap, const EnumOptions& options,
                                bool* hit = nullptr);

struct CacheGcResult {
    std::size_t files_before = 0;
    std::size_t files_after = 0;
    std::uintmax_t bytes_before = 0;
    std::uintmax_t bytes_after = 0;
    std::size_t removed = 0;
    std::vector<std::string> removed_files;
};

// Deletes the least recently modified cache files until the directory total
// drops to max_bytes or fewer.
CacheGcResult cache_gc(const std::string& dir, std::uintmax_t max_bytes);

}  // namespace orbitcount
