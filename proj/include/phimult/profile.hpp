#pragma once
#include "arith.hpp"
#include <map>
#include <string>
#include <vector>

namespace phimult {

struct WindowStat {
    i64 j = 0; // -1 for the underflow bucket [1, e), N for [x, infinity)
    long double lo = 0, hi = 0;
    u64 violations = 0;        // primes whose factor load here exceeds the budget
    u64 mass = 0;              // total prime-factor multiplicity landing here
    std::map<u64, u64> hist;   // load value -> number of primes with that load
};

struct ProfileReport {
    u64 x = 0, y = 0, N = 0;
    u64 budget = 0;  // ceil((delta + delta^2) ln ln x), the integer allowance
    u64 tested = 0;  // primes p <= y
    u64 failing = 0; // primes overloading at least one indexed window
    std::vector<WindowStat> windows; // j = -1, 0..N-1, N
};

// window the prime factors of p-1 for every prime p <= y against the edges
// E(j/N) = exp((ln x)^(j/N)); a prime fails when some window j in 0..N-1
// carries more than the budget; the buckets always tile Omega(p-1) exactly
ProfileReport normality_report(u64 x, u64 y, u64 N, const Config& cfg = default_config());

std::string profile_csv(const ProfileReport& rep);

// #{s <= y : s >= exp((ln ln x)^2), P+(s) <= s^(multiplier / ln ln x)}
// the exponent multiplier is 10 where the count is defined and 1 where it is
// consumed; both are exposed and the default matches the definition
u64 smooth_count(u64 x, u64 y, unsigned multiplier = 10, const Config& cfg = default_config());

struct OmegaStats {
    u64 x = 0;
    double mean_omega_n = 0;         // distinct prime factors, omega(1) = 0
    double mean_omega_p_minus_1 = 0; // over primes p <= x
    double loglog_x = 0;
};

OmegaStats omega_stats(u64 x, const Config& cfg = default_config());

} // namespace phimult
