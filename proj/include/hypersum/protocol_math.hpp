#pragma once

#include <cstdint>

namespace hypersum {

/// Index of a registered party, equal to its registration order. Valid
/// values are [0, N) and carry exactly log2(N) significant bits.
using PartyIndex = std::uint32_t;

/// One round of pairwise exchange, in [0, log2(N)).
using StageIndex = std::uint32_t;

/// The two parallel aggregation runs: A carries masked secrets (x + e),
/// B carries the masks (e). Their difference reveals only the total.
enum class HypercubeConfig : std::uint8_t { A, B };

/// log2(n_parties) for an exact power of two.
/// Throws TooFew for n < 2, NotPowerOfTwo otherwise.
std::uint32_t dimension_count(std::uint64_t n_parties);

/// The party paired with `u` at stage `t` in a d-dimensional hypercube.
/// Configuration A walks dimensions 0..d-1; configuration B walks them in
/// reverse, so the two runs pair every party with different peers at the
/// initial stage (for d >= 2).
PartyIndex peer_index(PartyIndex u, StageIndex t, std::uint32_t d, HypercubeConfig config);

std::uint32_t hamming_distance(std::uint64_t u, std::uint64_t v);

}  // namespace hypersum
