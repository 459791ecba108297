#include "phimult/profile.hpp"
#include <algorithm>
#include <cmath>
#include <sstream>

namespace phimult {

namespace {

// increasing edges E(j delta) = exp((ln x)^(j delta)), j = 0..N
std::vector<long double> window_edges(u64 x, u64 N) {
    std::vector<long double> e(N + 1);
    long double lx = logl((long double)x);
    for (u64 j = 0; j <= N; ++j)
        e[j] = expl(powl(lx, (long double)j / (long double)N));
    return e;
}

// index of the window holding prime r: -1 under E(0), N at or above E(1)
i64 window_of(u64 r, const std::vector<long double>& e) {
    long double rd = (long double)r;
    if (rd < e.front()) return -1;
    if (rd >= e.back()) return (i64)e.size() - 1;
    // binary search on the edges, then the half-open membership is immediate
    size_t lo = 0, hi = e.size() - 1;
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (rd >= e[mid]) lo = mid;
        else hi = mid;
    }
    return (i64)lo;
}

} // namespace

ProfileReport normality_report(u64 x, u64 y, u64 N, const Config& cfg) {
    if (N < 10) throw precondition_error("normality_report: N must be at least 10");
    if (x < 2 || y < 2 || y > x) throw precondition_error("normality_report: need 2 <= y <= x");
    // y >= x^(1/10), exactly: y^10 >= x
    u128 y10 = 1;
    bool big = false;
    for (int i = 0; i < 10 && !big; ++i) {
        y10 *= y;
        if (y10 > (u128)x) big = true;
    }
    if (!big && y10 < (u128)x)
        throw precondition_error("normality_report: y must be at least x^(1/10)");
    if (y > 100'000'000) throw budget_error("normality_report: y above the sieve budget");
    ProfileReport rep;
    rep.x = x;
    rep.y = y;
    rep.N = N;
    long double delta = 1.0L / (long double)N;
    rep.budget = (u64)ceill((delta + delta * delta) * logl(logl((long double)x)));
    auto edges = window_edges(x, N);
    rep.windows.resize(N + 2);
    for (u64 i = 0; i < N + 2; ++i) {
        i64 j = (i64)i - 1;
        rep.windows[i].j = j;
        rep.windows[i].lo = j < 0 ? 1.0L : edges[j];
        rep.windows[i].hi = j >= (i64)N ? 0.0L : edges[j + 1]; // 0 marks "unbounded"
    }
    SmallestFactorTable spf((u32)y, cfg);
    std::vector<u64> load(N + 2);
    prime_range(2, y, [&](u64 p) {
        ++rep.tested;
        std::fill(load.begin(), load.end(), 0);
        u64 total = 0;
        u32 v = (u32)(p - 1);
        while (v > 1) {
            u32 r = spf[v];
            u64 e = 0;
            while (v % r == 0) { v /= r; ++e; }
            load[(size_t)(window_of(r, edges) + 1)] += e;
            total += e;
        }
        u64 sum = 0;
        bool over = false;
        for (u64 i = 0; i < N + 2; ++i) {
            sum += load[i];
            ++rep.windows[i].hist[load[i]];
            rep.windows[i].mass += load[i];
            if (load[i] > rep.budget) {
                ++rep.windows[i].violations;
                if (i >= 1 && i <= N) over = true; // only indexed windows score
            }
        }
        if (sum != total)
            throw verification_error("normality_report: window loads fail to tile Omega(p-1)");
        if (over) ++rep.failing;
    });
    return rep;
}

std::string profile_csv(const ProfileReport& rep) {
    std::ostringstream os;
    os << "j,window_lo,window_hi,mean_omega,violations\n";
    os.precision(6);
    os << std::fixed;
    for (auto& w : rep.windows) {
        os << w.j << ',' << (double)w.lo << ',';
        if (w.hi == 0.0L) os << "inf";
        else os << (double)w.hi;
        long double mean = rep.tested ? (long double)w.mass / rep.tested : 0.0L;
        os << ',' << (double)mean << ',' << w.violations << '\n';
    }
    return os.str();
}

u64 smooth_count(u64 x, u64 y, unsigned multiplier, const Config& cfg) {
    if (x < 16) throw precondition_error("smooth_count: x must be at least 16");
    if (y > x) throw precondition_error("smooth_count: y must not exceed x");
    if (multiplier == 0) throw precondition_error("smooth_count: multiplier must be positive");
    if (y > 100'000'000) throw budget_error("smooth_count: y above the sieve budget");
    long double llx = logl(logl((long double)x));
    long double threshold = expl(llx * llx);
    long double alpha = (long double)multiplier / llx;
    if (threshold > (long double)y) return 0;
    u64 count = 0;
    SmallestFactorTable spf((u32)y, cfg);
    for (u64 s = 2; s <= y; ++s) {
        if ((long double)s < threshold) continue;
        u64 pmax = spf.p_max((u32)s);
        // P+(s) <= s^alpha, compared in logs; never tight for integer arguments
        if (logl((long double)pmax) <= alpha * logl((long double)s)) ++count;
    }
    return count;
}

OmegaStats omega_stats(u64 x, const Config& cfg) {
    if (x < 2) throw precondition_error("omega_stats: x must be at least 2");
    if (x > 100'000'000) throw budget_error("omega_stats: x above the sieve budget");
    OmegaStats st;
    st.x = x;
    st.loglog_x = (double)logl(logl((long double)x));
    SmallestFactorTable spf((u32)x, cfg);
    u64 sum_n = 0, primes = 0, sum_p = 0;
    for (u64 n = 1; n <= x; ++n) {
        u32 w = spf.omega((u32)n); // omega(1) = 0 by the spf convention
        sum_n += w;
        if (n >= 2 && spf[(u32)n] == n) {
            ++primes;
            sum_p += spf.omega((u32)(n - 1));
        }
    }
    st.mean_omega_n = (double)sum_n / (double)x;
    st.mean_omega_p_minus_1 = (double)sum_p / (double)primes;
    return st;
}

} // namespace phimult
