#pragma once
#include "arith.hpp"
#include <vector>

namespace phimult {

// largest m for which the full preimage set of phi is representable in u64:
// every x with phi(x) <= 2.5e18 satisfies x <= 2^64 - 1 (see width notes in README)
constexpr u64 PREIMAGE_WIDTH_BUDGET = 2'500'000'000'000'000'000ull;

// all n with phi(n) = m, ascending; exact and complete for m <= PREIMAGE_WIDTH_BUDGET
std::vector<u64> preimages(u64 m, u64 seed = 1);

// |preimages(m)|
u64 multiplicity(u64 m, u64 seed = 1);

// independent check: scan n <= 2m^2 + 1 with a totient sieve; m <= 10^6
std::vector<u64> preimages_oracle(u64 m, const Config& cfg = default_config());

// one sieve pass collecting preimage sets for every m <= m_max at once
std::vector<std::vector<u64>> preimage_buckets_oracle(u64 m_max, const Config& cfg = default_config());

} // namespace phimult
