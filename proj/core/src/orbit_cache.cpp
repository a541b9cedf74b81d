#include "orbitcount/orbit_cache.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "orbitcount/textio.hpp"

namespace orbitcount {

static_assert(std::endian::native == std::endian::little,
              "orbit cache payload is little endian");

namespace {

constexpr char kMagic[4] = {'O', 'R', 'B', '1'};
constexpr std::uint32_t kVersion = 1;

std::string options_canonical(const PlaneVector& v, double r_cap, const EnumOptions& options) {
    std::string canon;
    canon += "v=" + format_double(v.x) + "," + format_double(v.y);
    canon += ";cap=" + format_double(r_cap);
    canon += ";quantum=" + format_double(options.dedup_quantum);
    canon += ";slack=" + format_double(options.norm_slack);
    canon += ";depth=" + std::to_string(options.max_depth);
    canon += ";window=" + std::to_string(options.stabilization_window);
    return canon;
}

template <typename T>
void put_raw(std::string& out, const T& value) {
    const char* p = reinterpret_cast<const char*>(&value);
    out.append(p, sizeof(T));
}

}  // namespace

std::string orbit_cache_key(const std::string& lattice_id, const PlaneVector& v, double r_cap,
                            const EnumOptions& options) {
    const std::string canon = "lattice=" + lattice_id + ";" + options_canonical(v, r_cap, options);
    return hex64(fnv1a64(canon));
}

std::string orbit_cache_filename(const std::string& key) {
    return "orb1-" + key + ".bin";
}

std::string write_orbit_cache(const std::string& dir, const OrbitSet& orbit) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string key =
        orbit_cache_key(orbit.lattice_id, orbit.base, orbit.r_cap, orbit.options);
    const fs::path path = fs::path(dir) / orbit_cache_filename(key);

    nlohmann::json header;
    header["key"] = key;
    header["lattice"] = orbit.lattice_id;
    header["v"] = {orbit.base.x, orbit.base.y};
    header["r_cap"] = orbit.r_cap;
    header["dedup_quantum"] = orbit.options.dedup_quantum;
    header["norm_slack"] = orbit.options.norm_slack;
    header["max_depth"] = orbit.options.max_depth;
    header["stabilization_window"] = orbit.options.stabilization_window;
    header["stabilized"] = orbit.stabilized;
    header["depth_used"] = orbit.depth_used;
    header["states_explored"] = orbit.states_explored;
    header["provenance"] = orbit.provenance;
    header["count"] = orbit.points.size();
    const std::string header_text = header.dump();

    std::string payload;
    payload.reserve(orbit.points.size() * 16);
    for (const PlaneVector& p : orbit.points) {
        put_raw(payload, p.x);
        put_raw(payload, p.y);
    }
    const std::uint64_t checksum = fnv1a64(payload.data(), payload.size());

    std::string blob;
    blob.append(kMagic, 4);
    put_raw(blob, kVersion);
    put_raw(blob, static_cast<std::uint64_t>(header_text.size()));
    blob += header_text;
    blob += payload;
    put_raw(blob, checksum);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("write_orbit_cache: cannot open '" + path.string() + "'");
    }
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) {
        throw std::runtime_error("write_orbit_cache: write failed for '" + path.string() + "'");
    }
    return path.string();
}

CacheLookup read_orbit_cache(const std::string& dir, const std::string& lattice_id,
                             const PlaneVector& v, double r_cap, const EnumOptions& options) {
    namespace fs = std::filesystem;
    CacheLookup result;
    const std::string key = orbit_cache_key(lattice_id, v, r_cap, options);
    const fs::path path = fs::path(dir) / orbit_cache_filename(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return result;
    }
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::size_t min_size = 4 + 4 + 8 + 8;
    if (blob.size() < min_size || std::memcmp(blob.data(), kMagic, 4) != 0) {
        result.note = "cache file rejected: bad magic";
        return result;
    }
    std::uint32_t version = 0;
    std::memcpy(&version, blob.data() + 4, 4);
    if (version != kVersion) {
        result.note = "cache file rejected: unsupported version";
        return result;
    }
    std::uint64_t header_len = 0;
    std::memcpy(&header_len, blob.data() + 8, 8);
    const std::size_t header_off = 16;
    if (header_off + header_len + 8 > blob.size()) {
        result.note = "cache file rejected: truncated header";
        return result;
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(blob.substr(header_off, header_len));
    } catch (const std::exception&) {
        result.note = "cache file rejected: unreadable header";
        return result;
    }
    if (header.value("key", std::string()) != key) {
        result.note = "cache file rejected: key mismatch";
        return result;
    }
    const std::uint64_t count = header.value("count", std::uint64_t{0});
    const std::size_t payload_off = header_off + header_len;
    const std::size_t payload_len = count * 16;
    if (payload_off + payload_len + 8 != blob.size()) {
        result.note = "cache file rejected: size mismatch";
        return result;
    }
    std::uint64_t stored_checksum = 0;
    std::memcpy(&stored_checksum, blob.data() + payload_off + payload_len, 8);
    if (stored_checksum != fnv1a64(blob.data() + payload_off, payload_len)) {
        result.note = "cache file rejected: checksum mismatch";
        return result;
    }

    OrbitSet orbit;
    orbit.lattice_id = lattice_id;
    orbit.base = v;
    orbit.r_cap = r_cap;
    orbit.options = options;
    orbit.stabilized = header.value("stabilized", false);
    orbit.depth_used = header.value("depth_used", std::size_t{0});
    orbit.states_explored = header.value("states_explored", std::size_t{0});
    orbit.provenance = header.value("provenance", std::string("cache"));
    orbit.points.resize(count);
    std::memcpy(orbit.points.data(), blob.data() + payload_off, payload_len);
    orbit.norms.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        orbit.norms[i] = orbit.points[i].norm();
    }
    result.orbit = std::move(orbit);
    return result;
}

OrbitSet cached_enumerate_orbit(const std::string& dir, const LatticeSpec& lattice,
                                const PlaneVector& v, double r_cap, const EnumOptions& options,
                                bool* hit) {
    CacheLookup lookup = read_orbit_cache(dir, lattice.id, v, r_cap, options);
    if (lookup.orbit) {
        if (hit) {
            *hit = true;
        }
        return std::move(*lookup.orbit);
    }
    if (hit) {
        *hit = false;
    }
    OrbitSet orbit = enumerate_orbit(lattice, v, r_cap, options);
    write_orbit_cache(dir, orbit);
    return orbit;
}

CacheGcResult cache_gc(const std::string& dir, std::uintmax_t max_bytes) {
    namespace fs = std::filesystem;
    CacheGcResult result;
    if (!fs::exists(dir)) {
        return result;
    }
    struct Entry {
        fs::path path;
        fs::file_time_type mtime;
        std::uintmax_t size;
    };
    std::vector<Entry> entries;
    for (const auto& de : fs::directory_iterator(dir)) {
        if (!de.is_regular_file()) {
            continue;
        }
        const std::string name = de.path().filename().string();
        if (name.rfind("orb1-", 0) != 0) {
            continue;
        }
        entries.push_back(Entry{de.path(), de.last_write_time(), de.file_size()});
    }
    result.files_before = entries.size();
    for (const Entry& e : entries) {
        result.bytes_before += e.size;
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.mtime < b.mtime; });
    std::uintmax_t total = result.bytes_before;
    std::size_t removed = 0;
    for (const Entry& e : entries) {
        if (total <= max_bytes) {
            break;
        }
        std::error_code ec;
        if (fs::remove(e.path, ec)) {
            total -= e.size;
            ++removed;
            result.removed_files.push_back(e.path.filename().string());
        }
    }
    result.removed = removed;
    result.files_after = result.files_before - removed;
    result.bytes_after = total;
    return result;
}

}  // namespace orbitcount
