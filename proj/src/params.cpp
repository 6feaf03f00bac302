#include "bwpuzzle/params.hpp"

#include <limits>
#include <sstream>
#include <vector>

#include "bwpuzzle/errors.hpp"

namespace bwpuzzle {

void validate_kappa(std::uint64_t kappa) {
    if (kappa < 160 || kappa % 8 != 0)
        throw DomainError("kappa must be a multiple of 8 and at least 160, got " + std::to_string(kappa));
}

void PuzzleParams::validate() const {
    constexpr std::uint64_t kU32 = std::numeric_limits<std::uint32_t>::max();
    if (N < 1) throw DomainError("N must be at least 1");
    if (n < 1 || n > kU32) throw DomainError("n must be in [1, 2^32)");
    if (L < 1 || L > kU32) throw DomainError("L must be in [1, 2^32)");
    if (m < 1) throw DomainError("m must be at least 1");
    if (theta_ms < 1) throw DomainError("theta must be positive");
    validate_kappa(kappa);
}

void PuzzleParams::encode(Bytes& out) const {
    for (auto v : {N, n, L, m, theta_ms, kappa}) put_be64(out, v);
}

PuzzleParams PuzzleParams::decode(ByteReader& in) {
    PuzzleParams p;
    p.N = in.u64();
    p.n = in.u64();
    p.L = in.u64();
    p.m = in.u64();
    p.theta_ms = in.u64();
    p.kappa = in.u64();
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ProtocolError(std::string("invalid encoded parameters: ") + e.what());
    }
    return p;
}

PuzzleParams PuzzleParams::parse(const std::string& csv) {
    std::vector<std::uint64_t> fields;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            if (item.empty() || item.front() < '0' || item.front() > '9') throw std::invalid_argument(item);
            std::size_t used = 0;
            fields.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("not an unsigned integer in parameter list: '" + item + "'");
        }
    }
    if (fields.size() != 6) throw DomainError("expected six parameters N,n,L,m,theta,kappa");
    PuzzleParams p{fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]};
    p.validate();
    return p;
}

std::string PuzzleParams::to_string() const {
    std::ostringstream os;
    os << N << ',' << n << ',' << L << ',' << m << ',' << theta_ms << ',' << kappa;
    return os.str();
}

}  // namespace bwpuzzle
