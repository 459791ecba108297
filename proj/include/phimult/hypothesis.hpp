#pragma once
#include "arith.hpp"
#include <map>
#include <string>
#include <vector>

namespace phimult {

struct CountReport {
    u64 m = 0, x = 0;
    u64 count = 0;
    double normalized = 0; // count * ln(x)^2 / x, the scale the growth claim lives on
};

// primes s in (x/2, x] with s = 1 mod m and (s-1)/m prime
CountReport s_m_count(u64 m, u64 x, const Config& cfg = default_config());

// primes s in (x/2, x] with s = 1 mod m, (s-1)/m having at most two prime
// factors counted with multiplicity, all of them above x^(1/10)
CountReport chen_count(u64 m, u64 x, const Config& cfg = default_config());

struct PairFilterReport {
    u64 m = 0, x = 0;
    unsigned C = 0;
    u64 N = 0;            // window count derived from C
    u64 budget = 0;       // per-window prime-factor allowance (integer ceiling)
    u64 pairs_tested = 0; // (p, q) pairs that pass the basic gate 1 + pqm prime
    u64 survivors = 0;    // pairs failing none of the scored conditions
    std::map<std::string, u64> failures; // condition tag -> pairs failing it
};

// scan prime pairs x^(1/10) <= p <= sqrt(x) <= q <= x^(9/10), p != q, pqm <= x,
// 1 + pqm prime, and tally how often each rarity condition actually fires
PairFilterReport pair_filter(u64 m, u64 x, unsigned C, const Config& cfg = default_config());

struct AuditRow {
    u64 M = 0;
    long double Y = 0; // per-step exponent contribution at scale parameter M
};

struct AuditReport {
    unsigned C = 0;
    u64 N = 0;                  // 100 * (floor(4 ln(2C+2)) + 14 + 2C)
    std::string delta;          // "1/N", the window exponent step
    std::vector<AuditRow> rows; // Y for each M = 1..C
    u64 worst_M = 0;
    long double worst_Y = 0;
    bool pass = false; // worst_Y <= -2.603 keeps the exponent argument negative
};

// recompute the exponent bookkeeping that makes the pair counts summable
AuditReport exponent_audit(unsigned C);

struct ToyViolation {
    u64 M = 0;
    std::vector<u32> seq; // nondecreasing window indices, first one is 1
    long double lhs = 0, rhs = 0;
};

// exhaustively test sum_j (2 ln a_j + j b_j) <= N (M - 2 + 2 ln 2) over all
// nondecreasing index sequences of length M with first entry 1, where
// a_j = #{i : seq_i <= j} and b_j = #{i : seq_i = j}, j running to N-1
std::vector<ToyViolation> toy_inequality_violations(u64 N, u64 M_max);

} // namespace phimult
