#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitcount {

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t value);

// Shortest round-trip decimal form of a double, for deterministic text output.
std::string format_double(double value);

// Flat key = value file with optional [section] headers. Section keys are
// addressed as "section.key". '#' starts a comment, blank lines are skipped.
class ConfigFile {
  public:
    static ConfigFile parse_text(const std::string& text);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long_or(const std::string& key, long fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;  // whitespace separated

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // Digest over the sorted key=value pairs, independent of formatting.
    std::string digest() const;

  private:
    std::map<std::string, std::string> entries_;
};

// Raised on malformed config text or on a value that fails to parse; the
// message names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two column CSV with a leading "# config_digest=..." comment line.
void write_csv(const std::string& path, const std::string& digest,
               const std::vector<std::string>& column_names,
               const std::vector<std::vector<double>>& columns);

}  // namespace orbitcount
