#include "phimult/invphi.hpp"
#include <algorithm>
#include <cassert>

namespace phimult {

namespace {

struct PreimageSearch {
    std::vector<u64> cands; // primes p with p-1 | m, descending
    u64 m;
    u128 cap; // any preimage of m is below 8m, so partial products above that are dead
    std::vector<u64> out;

    void rec(u64 rem, size_t idx, u128 prod) {
        if (rem == 1) {
            if (prod > (u128)UINT64_MAX)
                throw verification_error("preimages: completed product left 64-bit range");
            out.push_back((u64)prod);
        }
        // no return: p = 2 contributes phi(2) = 1 and can still extend prod
        for (size_t i = idx; i < cands.size(); ++i) {
            u64 p = cands[i], pm1 = p - 1;
            if (rem % pm1 != 0) continue;
            u64 r = rem / pm1;
            u128 pw = p;
            while (true) {
                // prod*pw > cap kills this branch and every larger power of p
                if (prod > cap / pw) break;
                rec(r, i + 1, prod * pw);
                if (r % p != 0) break;
                r /= p;
                pw *= p; // bounded by cap*p, which fits u128
            }
        }
    }
};

} // namespace

std::vector<u64> preimages(u64 m, u64 seed) {
    if (m == 0) throw precondition_error("preimages: m must be positive");
    if (m > PREIMAGE_WIDTH_BUDGET)
        throw overflow_error("preimages: m exceeds the 64-bit completeness width budget");
    if (m == 1) return {1, 2};
    if (m & 1) return {};
    PreimageSearch s;
    s.m = m;
    s.cap = (u128)8 * m;
    for (u64 d : factorize(m, seed).divisors())
        if (d != UINT64_MAX && is_prime(d + 1)) s.cands.push_back(d + 1);
    std::sort(s.cands.rbegin(), s.cands.rend());
    s.rec(m, 0, 1);
    std::sort(s.out.begin(), s.out.end());
#ifndef NDEBUG
    for (u64 x : s.out) assert(euler_phi(x, seed) == m);
#endif
    return s.out;
}

u64 multiplicity(u64 m, u64 seed) { return preimages(m, seed).size(); }

std::vector<u64> preimages_oracle(u64 m, const Config& cfg) {
    if (m == 0 || m > 1'000'000)
        throw precondition_error("preimages_oracle: need 1 <= m <= 10^6");
    (void)cfg;
    std::vector<u64> out;
    u64 hi = 2 * m * m + 1;
    phi_range(1, hi, [&](u64 n, u64 ph) {
        if (ph == m) out.push_back(n);
    });
    return out;
}

std::vector<std::vector<u64>> preimage_buckets_oracle(u64 m_max, const Config& cfg) {
    if (m_max == 0 || m_max > 100'000)
        throw precondition_error("preimage_buckets_oracle: need 1 <= m_max <= 10^5");
    // rough reservation guard; buckets hold ~2 entries per even m on average
    check_memory(m_max * 64, cfg, "preimage buckets");
    std::vector<std::vector<u64>> buckets(m_max + 1);
    u64 hi = 2 * m_max * m_max + 1;
    phi_range(1, hi, [&](u64 n, u64 ph) {
        if (ph <= m_max) buckets[ph].push_back(n);
    });
    return buckets;
}

} // namespace phimult
