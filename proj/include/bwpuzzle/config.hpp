#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bwpuzzle {

/// Flat key = value text. '#' starts a comment; blank lines are ignored;
/// later keys override earlier ones.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get(const std::string& key, const std::string& fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    /// Comma-separated list; also accepts "first..last:step".
    std::vector<std::uint64_t> get_u64_list(const std::string& key, std::vector<std::uint64_t> fallback) const;

    /// Throws ConfigError naming the first key not in `known`.
    void require_known(const std::set<std::string>& known) const;

private:
    std::map<std::string, std::string> values_;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what);
double parse_double(const std::string& text, const std::string& what);

}  // namespace bwpuzzle
