#pragma once

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace testsupport {

inline std::map<std::string, std::string> golden() {
    std::ifstream in(std::string(BWPUZZLE_FIXTURES) + "/golden_vectors.txt");
    if (!in) throw std::runtime_error("missing golden_vectors.txt");
    std::map<std::string, std::string> out;
    for (std::string line; std::getline(in, line);) {
        auto eq = line.find('=');
        if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

inline std::string fixture(const std::string& name) { return std::string(BWPUZZLE_FIXTURES) + "/" + name; }

}  // namespace testsupport
