#include "hypersum/protocol_math.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "hypersum/errors.hpp"

namespace hypersum {

std::uint32_t dimension_count(std::uint64_t n_parties) {
    if (n_parties < 2) {
        throw TooFew("group size " + std::to_string(n_parties) + " is below the minimum of 2");
    }
    if (!std::has_single_bit(n_parties)) {
        throw NotPowerOfTwo("group size " + std::to_string(n_parties) +
                            " is not a power of two");
    }
    return static_cast<std::uint32_t>(std::countr_zero(n_parties));
}

PartyIndex peer_index(PartyIndex u, StageIndex t, std::uint32_t d, HypercubeConfig config) {
    if (d == 0 || d >= 32) {
        throw std::invalid_argument("dimension must be in [1, 31]");
    }
    if (t >= d) {
        throw StageOutOfRange("stage " + std::to_string(t) + " outside [0, " +
                              std::to_string(d) + ")");
    }
    if (u >= (PartyIndex{1} << d)) {
        throw std::invalid_argument("party index outside the hypercube");
    }
    const StageIndex dimension = config == HypercubeConfig::A ? t : d - t - 1;
    return u ^ (PartyIndex{1} << dimension);
}

std::uint32_t hamming_distance(std::uint64_t u, std::uint64_t v) {
    return static_cast<std::uint32_t>(std::popcount(u ^ v));
}

}  // namespace hypersum
