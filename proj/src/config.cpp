#include "bwpuzzle/config.hpp"

#include <fstream>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    const auto t = trim(text);
    try {
        if (t.empty() || t.front() < '0' || t.front() > '9') throw std::invalid_argument(t);
        std::size_t used = 0;
        // Accept integral scientific forms such as 1e5.
        if (t.find_first_of("eE.") != std::string::npos) {
            const double d = std::stod(t, &used);
            if (used != t.size() || d != static_cast<double>(static_cast<std::uint64_t>(d)))
                throw std::invalid_argument(t);
            return static_cast<std::uint64_t>(d);
        }
        const auto v = std::stoull(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a non-negative integer: '" + t + "'");
    }
}

double parse_double(const std::string& text, const std::string& what) {
    const auto t = trim(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + t + "'");
    }
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return parse(in);
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_u64(it->second, key);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(it->second, key);
}

std::vector<std::uint64_t> KeyValueConfig::get_u64_list(const std::string& key,
                                                         std::vector<std::uint64_t> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const auto& text = it->second;
    std::vector<std::uint64_t> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const auto colon = text.find(':', dots);
        const auto first = parse_u64(text.substr(0, dots), key);
        const auto last = parse_u64(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2), key);
        const auto step = colon == std::string::npos ? 1 : parse_u64(text.substr(colon + 1), key);
        if (step == 0 || last < first) throw ConfigError(key + ": bad range '" + text + "'");
        for (auto v = first; v <= last; v += step) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(parse_u64(text.substr(start, comma - start), key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void KeyValueConfig::require_known(const std::set<std::string>& known) const {
    for (const auto& [k, v] : values_)
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
}

}  // namespace bwpuzzle
