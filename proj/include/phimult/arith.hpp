#pragma once
#include "common.hpp"
#include <functional>
#include <optional>
#include <vector>

namespace phimult {

// deterministic for all 64-bit inputs
bool is_prime(u64 n);

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> f; // (prime, exponent), primes ascending

    u32 omega() const { return (u32)f.size(); } // distinct primes
    u64 bigomega() const;                       // with multiplicity
    u64 p_min() const;                          // least prime factor, 1 for n=1
    u64 p_max() const;                          // greatest prime factor, 1 for n=1
    int mu() const;                             // Moebius value
    u64 tau() const;                            // divisor count
    std::vector<u64> divisors() const;          // all divisors, sorted
};

// trial division below a fixed cutoff, then seeded Brent-rho splitting
Factorization factorize(u64 n, u64 seed = 1);

u64 euler_phi(u64 n, u64 seed = 1);

// Jacobi symbol (a/n); n must be odd and positive
int jacobi(i64 a, u64 n);

// Kronecker symbol (a/2): 0 if a even, else +1 for a = +-1 mod 8, -1 otherwise
int kronecker2(i64 a);

// number of prime factors of n, with multiplicity, whose prime lies in [lo, hi)
u64 omega_window(u64 n, long double lo, long double hi, u64 seed = 1);

// combined congruence x = r1 mod m1, x = r2 mod m2; empty if incompatible
std::optional<std::pair<u64, u64>> crt_combine(u64 r1, u64 m1, u64 r2, u64 m2);

// primes below 65536, ascending; backs every sieve in the library
const std::vector<u32>& base_primes();

// ascending primes in [2, n]; n must stay modest (memory-checked)
std::vector<u64> primes_up_to(u64 n, const Config& cfg = default_config());

// smallest-prime-factor table for 1..limit; table[1] = 1, table[p] = p
class SmallestFactorTable {
public:
    explicit SmallestFactorTable(u32 limit, const Config& cfg = default_config());
    u32 limit() const { return limit_; }
    u32 operator[](u32 n) const { return spf_[n]; }
    // distinct prime factor count via repeated spf division
    u32 omega(u32 n) const;
    u64 bigomega(u32 n) const;
    u32 p_max(u32 n) const;

private:
    u32 limit_;
    std::vector<u32> spf_;
};

// calls fn(n, phi(n)) for every n in [lo, hi], segmented; hi < 2^32 required
void phi_range(u64 lo, u64 hi, const std::function<void(u64, u64)>& fn);

// calls fn(p) for every prime p in [lo, hi], segmented; hi < 2^32 required
void prime_range(u64 lo, u64 hi, const std::function<void(u64)>& fn);

} // namespace phimult
