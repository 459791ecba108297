#include "phimult/census.hpp"
#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace phimult {

namespace {
// Euler-Mascheroni constant, enough digits for long double
constexpr long double EULER_GAMMA = 0.5772156649015328606L;
} // namespace

long double totient_quotient_bound(long double n) {
    long double ll = logl(logl(n));
    return expl(EULER_GAMMA) * ll + 3.0L / ll;
}

u64 totient_scan_bound(u64 x) {
    if (x == 0) throw precondition_error("totient_scan_bound: x must be positive");
    // n / bound(n) is increasing for n >= 100; walk up then bisect
    auto quot = [](u64 n) { return (long double)n / totient_quotient_bound((long double)n); };
    u64 lo = std::max<u64>(x, 100), hi = lo;
    if (quot(lo) > (long double)x) return lo; // conservative floor for tiny x
    while (quot(hi) <= (long double)x) {
        if (hi > UINT64_MAX / 2) throw overflow_error("totient_scan_bound: bound left u64");
        hi *= 2;
    }
    while (lo + 1 < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (quot(mid) > (long double)x) hi = mid;
        else lo = mid;
    }
    return hi;
}

std::vector<u32> multiplicity_array(u64 limit, const Config& cfg) {
    if (limit == 0) throw precondition_error("multiplicity_array: limit must be positive");
    u64 n0 = totient_scan_bound(limit);
    u64 hi = checked_mul(n0, 2, "multiplicity_array: doubled scan bound");
    if (hi >= (1ull << 32))
        throw budget_error("multiplicity_array: scan range exceeds the 32-bit sieve window");
    // index 0 <-> m = 1, index j <-> m = 2j; odd m > 1 are never totient values
    size_t slots = (size_t)(limit / 2) + 1;
    unsigned workers = std::max(1u, cfg.threads);
    check_memory(slots * sizeof(u32) + (u64)workers * (2u << 20) * 16, cfg,
                 "multiplicity array");
    std::vector<u32> cnt(slots, 0);
    auto tally = [&](u64 lo_n, u64 hi_n, bool atomic) {
        phi_range(lo_n, hi_n, [&](u64 n, u64 ph) {
            if (ph > limit) return;
            if (n > n0)
                throw verification_error("multiplicity_array: safety margin violated: phi(" +
                                         std::to_string(n) + ") = " + std::to_string(ph) +
                                         " <= limit beyond the proven bound");
            size_t idx = ph == 1 ? 0 : (size_t)(ph / 2);
            if (ph != 1 && (ph & 1)) return; // odd values above 1 are never hit
            if (atomic) std::atomic_ref<u32>(cnt[idx]).fetch_add(1, std::memory_order_relaxed);
            else ++cnt[idx];
        });
    };
    if (workers == 1 || hi < (u64)workers * 4) {
        tally(1, hi, false);
        return cnt;
    }
    // additions commute, so any worker count yields the identical array
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    u64 chunk = hi / workers + 1;
    for (unsigned w = 0; w < workers; ++w) {
        u64 lo_n = 1 + (u64)w * chunk;
        u64 hi_n = std::min(hi, lo_n + chunk - 1);
        pool.emplace_back([&, w, lo_n, hi_n] {
            try {
                if (lo_n <= hi_n) tally(lo_n, hi_n, true);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return cnt;
}

CensusTable census(u64 x, const Config& cfg) {
    auto cnt = multiplicity_array(x, cfg);
    CensusTable t;
    t.x = x;
    for (size_t i = 0; i < cnt.size(); ++i) {
        u64 m = i == 0 ? 1 : 2 * i;
        if (m > x || cnt[i] == 0) continue;
        ++t.counts[cnt[i]];
        ++t.total;
    }
    return t;
}

std::optional<u64> smallest_with_multiplicity(u64 k, u64 limit, const Config& cfg) {
    if (k == 0) throw precondition_error("smallest_with_multiplicity: k must be positive");
    auto cnt = multiplicity_array(limit, cfg);
    for (size_t i = 0; i < cnt.size(); ++i) {
        u64 m = i == 0 ? 1 : 2 * i;
        if (m <= limit && cnt[i] == k) return m;
    }
    return std::nullopt;
}

namespace {
// render num/den with six decimals, half-up, in pure integer arithmetic
std::string six_decimals(u64 num, u64 den) {
    u128 scaled = (u128)num * 2'000'000 + den; // = 2*den*(num*1e6/den + 1/2)
    u64 q = (u64)(scaled / ((u128)2 * den));
    std::string frac = std::to_string(q % 1'000'000);
    return std::to_string(q / 1'000'000) + "." + std::string(6 - frac.size(), '0') + frac;
}
} // namespace

std::vector<RatioRow> ratio_table(const std::vector<u64>& x_points, const Config& cfg) {
    if (x_points.empty()) throw precondition_error("ratio_table: no checkpoints given");
    std::vector<u64> xs = x_points;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.front() == 0) throw precondition_error("ratio_table: checkpoints must be positive");
    auto cnt = multiplicity_array(xs.back(), cfg);
    std::vector<RatioRow> rows;
    size_t upto = 0; // indices already folded into the running tallies
    std::map<u64, u64> vk;
    u64 total = 0;
    for (u64 x : xs) {
        for (; upto < cnt.size(); ++upto) {
            u64 m = upto == 0 ? 1 : 2 * upto;
            if (m > x) break;
            if (cnt[upto] == 0) continue;
            ++vk[cnt[upto]];
            ++total;
        }
        for (auto& [k, v] : vk)
            rows.push_back({x, k, v, total, six_decimals(v, total)});
    }
    return rows;
}

std::string ratio_csv(const std::vector<RatioRow>& rows) {
    std::ostringstream os;
    os << "x,k,V_k,V,ratio\n";
    for (auto& r : rows)
        os << r.x << ',' << r.k << ',' << r.v_k << ',' << r.v << ',' << r.ratio << '\n';
    return os.str();
}

} // namespace phimult
