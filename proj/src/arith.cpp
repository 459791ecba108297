#include "phimult/arith.hpp"
#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace phimult {

namespace {

constexpr u64 TRIAL_CUTOFF = 4096;

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 brent_rho(u64 n, u64 seed) {
    // n is odd, composite, and has no factor below TRIAL_CUTOFF
    u64 state = seed ^ (n * 0x9e3779b97f4a7c15ull);
    while (true) {
        u64 c = splitmix64(state) % (n - 1) + 1;
        u64 y = splitmix64(state) % n;
        u64 g = 1, q = 1, x = 0, ys = 0;
        const u64 m = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (mulmod(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle degenerated; retry with a fresh constant
    }
}

void factor_rec(u64 n, u64 seed, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    u64 d = brent_rho(n, seed);
    factor_rec(d, seed, out);
    factor_rec(n / d, seed, out);
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    // deterministic witness set for the full 64-bit range
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

Factorization factorize(u64 n, u64 seed) {
    Factorization r;
    r.n = n;
    if (n == 0) throw precondition_error("factorize: n must be positive");
    std::vector<u64> ps;
    for (u64 p = 2; p <= TRIAL_CUTOFF && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { ps.push_back(p); n /= p; }
    }
    if (n > 1) factor_rec(n, seed, ps);
    std::sort(ps.begin(), ps.end());
    for (u64 p : ps) {
        if (!r.f.empty() && r.f.back().first == p) ++r.f.back().second;
        else r.f.emplace_back(p, 1);
    }
    return r;
}

u64 Factorization::bigomega() const {
    u64 s = 0;
    for (auto& [p, e] : f) s += e;
    return s;
}

u64 Factorization::p_min() const { return f.empty() ? 1 : f.front().first; }
u64 Factorization::p_max() const { return f.empty() ? 1 : f.back().first; }

int Factorization::mu() const {
    for (auto& [p, e] : f)
        if (e > 1) return 0;
    return (f.size() & 1) ? -1 : 1;
}

u64 Factorization::tau() const {
    u64 t = 1;
    for (auto& [p, e] : f) t *= e + 1;
    return t;
}

std::vector<u64> Factorization::divisors() const {
    std::vector<u64> ds{1};
    for (auto& [p, e] : f) {
        size_t sz = ds.size();
        u64 pw = 1;
        for (u32 i = 0; i < e; ++i) {
            pw *= p;
            for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 euler_phi(u64 n, u64 seed) {
    if (n == 0) throw precondition_error("euler_phi: n must be positive");
    u64 r = n;
    for (auto& [p, e] : factorize(n, seed).f) r -= r / p;
    return r;
}

int jacobi(i64 a, u64 n) {
    if (n == 0 || (n & 1) == 0) throw precondition_error("jacobi: n must be odd and positive");
    u64 ua = (u64)(((i128)a % (i128)n + (i128)n) % (i128)n);
    int t = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) t = -t;
        ua %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker2(i64 a) {
    if ((a & 1) == 0) return 0;
    i64 r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

u64 omega_window(u64 n, long double lo, long double hi, u64 seed) {
    if (n == 0) throw precondition_error("omega_window: n must be positive");
    u64 s = 0;
    for (auto& [p, e] : factorize(n, seed).f) {
        long double pd = (long double)p; // exact for u64 on 80-bit long double
        if (pd >= lo && pd < hi) s += e;
    }
    return s;
}

std::optional<std::pair<u64, u64>> crt_combine(u64 r1, u64 m1, u64 r2, u64 m2) {
    if (m1 == 0 || m2 == 0) throw precondition_error("crt_combine: moduli must be positive");
    r1 %= m1;
    r2 %= m2;
    u64 g = std::gcd(m1, m2);
    if ((r1 > r2 ? r1 - r2 : r2 - r1) % g != 0) return std::nullopt;
    u64 lcm = checked_u64((u128)(m1 / g) * m2, "crt_combine: combined modulus");
    // extended gcd tracking the coefficient of m1: at the end s0*m1 = g (mod m2)
    i128 s0 = 1, s1 = 0;
    u64 a = m1, b = m2;
    while (b) {
        u64 q = a / b;
        a -= q * b;
        std::swap(a, b);
        s0 -= (i128)q * s1; // coefficients stay below the moduli in magnitude
        std::swap(s0, s1);
    }
    u64 md = m2 / g;
    u64 s0m = md == 1 ? 0 : (u64)(((s0 % (i128)md) + (i128)md) % (i128)md);
    u64 diff_mod = md == 1 ? 0
                           : (u64)((((i128)r2 - (i128)r1) / (i128)g % (i128)md + (i128)md) % (i128)md);
    u64 t = md == 1 ? 0 : (u64)((u128)diff_mod * s0m % md); // t < m2/g, so t*m1 < lcm
    u64 x = (u64)(((u128)t * m1 + r1) % lcm);
    return std::make_pair(x, lcm);
}

const std::vector<u32>& base_primes() {
    static const std::vector<u32> ps = [] {
        const u32 N = 65536;
        std::vector<bool> comp(N, false);
        std::vector<u32> out;
        for (u32 i = 2; i < N; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (u64 j = (u64)i * i; j < N; j += i) comp[j] = true;
        }
        return out;
    }();
    return ps;
}

std::vector<u64> primes_up_to(u64 n, const Config& cfg) {
    check_memory(n / 8 + 64, cfg, "primes_up_to sieve");
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

SmallestFactorTable::SmallestFactorTable(u32 limit, const Config& cfg) : limit_(limit) {
    check_memory((u64)(limit + 1) * sizeof(u32), cfg, "smallest-factor table");
    spf_.assign((size_t)limit + 1, 0);
    if (limit >= 1) spf_[1] = 1;
    for (u32 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = i;
        if ((u64)i * i <= limit)
            for (u64 j = (u64)i * i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = i;
    }
}

u32 SmallestFactorTable::omega(u32 n) const {
    assert(n >= 1 && n <= limit_);
    u32 c = 0;
    while (n > 1) {
        u32 p = spf_[n];
        ++c;
        while (n % p == 0) n /= p;
    }
    return c;
}

u64 SmallestFactorTable::bigomega(u32 n) const {
    assert(n >= 1 && n <= limit_);
    u64 c = 0;
    while (n > 1) { ++c; n /= spf_[n]; }
    return c;
}

u32 SmallestFactorTable::p_max(u32 n) const {
    assert(n >= 1 && n <= limit_);
    u32 m = 1;
    while (n > 1) { m = spf_[n]; n /= spf_[n]; }
    // spf division yields factors in ascending order, so the last one is max
    return m;
}

void phi_range(u64 lo, u64 hi, const std::function<void(u64, u64)>& fn) {
    if (lo < 1) lo = 1;
    if (hi < lo) return;
    if (hi >= (1ull << 32)) throw precondition_error("phi_range: hi must stay below 2^32");
    const u64 SEG = 1 << 20;
    std::vector<u64> rem(SEG), ph(SEG);
    const auto& bp = base_primes();
    for (u64 base = lo; base <= hi; base += SEG) {
        u64 end = std::min(hi, base + SEG - 1);
        u64 len = end - base + 1;
        for (u64 i = 0; i < len; ++i) { rem[i] = base + i; ph[i] = base + i; }
        for (u32 p : bp) {
            u64 pp = p;
            if (pp * pp > end) break;
            u64 start = (base + pp - 1) / pp * pp;
            for (u64 j = start; j <= end; j += pp) {
                u64 i = j - base;
                ph[i] -= ph[i] / pp;
                while (rem[i] % pp == 0) rem[i] /= pp;
            }
        }
        for (u64 i = 0; i < len; ++i) {
            u64 n = base + i, v = ph[i];
            if (rem[i] > 1) v -= v / rem[i]; // one prime factor above the base bound
            if (n == 1) v = 1;
            fn(n, v);
        }
    }
}

void prime_range(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    if (lo < 2) lo = 2;
    if (hi < lo) return;
    if (hi >= (1ull << 32)) throw precondition_error("prime_range: hi must stay below 2^32");
    const u64 SEG = 1 << 20;
    std::vector<bool> comp(SEG);
    const auto& bp = base_primes();
    for (u64 base = lo; base <= hi; base += SEG) {
        u64 end = std::min(hi, base + SEG - 1);
        std::fill(comp.begin(), comp.end(), false);
        for (u32 p : bp) {
            u64 pp = p;
            if (pp * pp > end) break;
            u64 start = std::max(pp * pp, (base + pp - 1) / pp * pp);
            for (u64 j = start; j <= end; j += pp) comp[j - base] = true;
        }
        for (u64 n = base; n <= end; ++n)
            if (!comp[n - base]) fn(n);
    }
}

} // namespace phimult
