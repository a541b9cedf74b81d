#include "orbitcount/textio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orbitcount {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& text) {
    return fnv1a64(text.data(), text.size());
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

std::string format_double(double value) {
    // Try increasing precision until the text round-trips exactly.
    for (int prec = 15; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", prec, value);
        if (std::strtod(buf, nullptr) == value) {
            return std::string(buf);
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf);
}

ConfigFile ConfigFile::parse_text(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) {
            return std::string();
        }
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(full)) {
            throw ConfigError("config: duplicate key '" + full + "'");
        }
        cfg.entries_[full] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

bool ConfigFile::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

std::string ConfigFile::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw ConfigError("config: missing key '" + key + "'");
    }
    return it->second;
}

std::string ConfigFile::get_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double ConfigFile::get_double(const std::string& key) const {
    const std::string text = get(key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError("config: key '" + key + "' is not a number: '" + text + "'");
    }
    return v;
}

double ConfigFile::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long ConfigFile::get_long(const std::string& key) const {
    const std::string text = get(key);
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + text + "'");
    }
    return v;
}

long ConfigFile::get_long_or(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}

std::vector<double> ConfigFile::get_doubles(const std::string& key) const {
    std::istringstream in(get(key));
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) {
        out.push_back(v);
    }
    if (out.empty()) {
        throw ConfigError("config: key '" + key + "' holds no numbers");
    }
    return out;
}

std::string ConfigFile::digest() const {
    std::string canon;
    for (const auto& [k, v] : entries_) {
        canon += k;
        canon += '=';
        canon += v;
        canon += '\n';
    }
    return hex64(fnv1a64(canon));
}

void write_csv(const std::string& path, const std::string& digest,
               const std::vector<std::string>& column_names,
               const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || column_names.size() != columns.size()) {
        throw std::invalid_argument("write_csv: column names and columns must align");
    }
    const std::size_t rows = columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) {
            throw std::invalid_argument("write_csv: ragged columns");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_csv: cannot open '" + path + "'");
    }
    out << "# config_digest=" << digest << "\n";
    for (std::size_t c = 0; c < column_names.size(); ++c) {
        out << (c ? "," : "") << column_names[c];
    }
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << format_double(columns[c][r]);
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write_csv: write failed for '" + path + "'");
    }
}

}  // namespace orbitcount
