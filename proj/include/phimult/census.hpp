#pragma once
#include "arith.hpp"
#include <map>
#include <optional>
#include <string>

namespace phimult {

// n / phi(n) never exceeds this function of n (classical, with explicit constant)
long double totient_quotient_bound(long double n);

// least N with N / bound(N) > x: no n > N can have phi(n) <= x
u64 totient_scan_bound(u64 x);

// counts[i] = multiplicity of m, where index 0 holds m = 1 and index j holds m = 2j.
// Scans to twice the proven bound and checks the safety margin as it goes.
std::vector<u32> multiplicity_array(u64 limit, const Config& cfg = default_config());

struct CensusTable {
    u64 x = 0;
    u64 total = 0;                // totient values <= x
    std::map<u64, u64> counts;    // multiplicity k -> how many m <= x attain it
};

CensusTable census(u64 x, const Config& cfg = default_config());

std::optional<u64> smallest_with_multiplicity(u64 k, u64 limit,
                                              const Config& cfg = default_config());

struct RatioRow {
    u64 x, k, v_k, v;
    std::string ratio; // v_k / v rendered with six exact decimals
};

// for each checkpoint x and each multiplicity k observed at x: share of values with that k
std::vector<RatioRow> ratio_table(const std::vector<u64>& x_points,
                                  const Config& cfg = default_config());

std::string ratio_csv(const std::vector<RatioRow>& rows);

} // namespace phimult
