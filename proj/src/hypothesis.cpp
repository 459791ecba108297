#include "phimult/hypothesis.hpp"
#include <algorithm>
#include <cmath>
#include <boost/multiprecision/cpp_int.hpp>

namespace phimult {

namespace {

using boost::multiprecision::cpp_int;

// a^e <= b^f, exactly
bool pow_le(u64 a, unsigned e, u64 b, unsigned f) {
    cpp_int lhs = 1, rhs = 1;
    for (unsigned i = 0; i < e; ++i) lhs *= a;
    for (unsigned i = 0; i < f; ++i) rhs *= b;
    return lhs <= rhs;
}

// least r with r^e >= x
u64 ceil_root(u64 x, unsigned e) {
    u64 r = (u64)powl((long double)x, 1.0L / e);
    while (r > 1 && !pow_le(x, 1, r, e)) ++r;
    while (r > 1 && pow_le(x, 1, r - 1, e)) --r;
    return r;
}

// greatest r with r^e <= x
u64 floor_root(u64 x, unsigned e) {
    u64 r = (u64)powl((long double)x, 1.0L / e);
    while (!pow_le(r, e, x, 1)) --r;
    while (pow_le(r + 1, e, x, 1)) ++r;
    return r;
}

double normalize_count(u64 count, u64 x) {
    double lx = std::log((double)x);
    return (double)count * lx * lx / (double)x;
}

} // namespace

CountReport s_m_count(u64 m, u64 x, const Config& cfg) {
    if (m == 0) throw precondition_error("s_m_count: m must be positive");
    if (x < 4) throw precondition_error("s_m_count: x must be at least 4");
    (void)cfg;
    CountReport rep{m, x, 0, 0};
    prime_range(x / 2 + 1, x, [&](u64 s) {
        if ((s - 1) % m != 0) return;
        u64 t = (s - 1) / m;
        if (t >= 2 && is_prime(t)) ++rep.count;
    });
    rep.normalized = normalize_count(rep.count, x);
    return rep;
}

CountReport chen_count(u64 m, u64 x, const Config& cfg) {
    if (m == 0 || (m & 1)) throw precondition_error("chen_count: m must be even");
    if (x < 16) throw precondition_error("chen_count: x must be at least 16");
    CountReport rep{m, x, 0, 0};
    prime_range(x / 2 + 1, x, [&](u64 s) {
        if ((s - 1) % m != 0) return;
        u64 t = (s - 1) / m;
        if (t < 2) return;
        auto f = factorize(t, cfg.seed);
        if (f.bigomega() > 2) return;
        // least factor above x^(1/10), checked as p^10 > x without rounding
        if (pow_le(f.p_min(), 10, x, 1)) return;
        ++rep.count;
    });
    rep.normalized = normalize_count(rep.count, x);
    return rep;
}

namespace {

// window count for scale parameter C; the floor argument stays well clear of
// integer boundaries for every C in the supported range
u64 window_count(unsigned C) {
    long double t = 4.0L * logl(2.0L * C + 2.0L);
    return 100 * ((u64)floorl(t) + 14 + 2ull * C);
}

u64 factor_budget(u64 N, u64 x) {
    long double delta = 1.0L / (long double)N;
    long double raw = (delta + delta * delta) * logl(logl((long double)x));
    return (u64)ceill(raw); // the real-valued allowance is far below 1 at desk scale
}

// decreasing window edges: W_j = exp((ln x)^(1 - j*delta)), W_N pinned to 2;
// returns the j in [0, N-1] whose window [W_{j+1}, W_j) holds the prime r,
// or N for r < 2 (cannot happen) and -1 for r >= W_0 = x
i64 window_of(u64 r, u64 x, u64 N) {
    long double lr = logl((long double)r);
    long double llx = logl(logl((long double)x));
    if (lr <= logl(2.0L)) return (i64)N - 1; // r = 2 sits in the last window
    // exponent z with r = exp((ln x)^z); window j covers z in (1-(j+1)d, 1-jd]
    long double z = logl(lr) / llx;
    long double delta = 1.0L / (long double)N;
    i64 j = (i64)floorl((1.0L - z) / delta);
    if (j < 0) return -1;
    if (j >= (i64)N) return (i64)N - 1;
    // nudge across boundaries computed in long double
    auto edge = [&](i64 jj) { // W_jj
        if (jj >= (i64)N) return 2.0L;
        return expl(powl(logl((long double)x), 1.0L - (long double)jj * delta));
    };
    while (j > 0 && (long double)r >= edge(j)) --j;
    while (j < (i64)N - 1 && (long double)r < edge(j + 1)) ++j;
    return j;
}

} // namespace

PairFilterReport pair_filter(u64 m, u64 x, unsigned C, const Config& cfg) {
    if (m == 0 || (m & 1)) throw precondition_error("pair_filter: m must be even");
    if (x < 1024) throw precondition_error("pair_filter: x must be at least 1024");
    if (C < 1 || C > 12) throw precondition_error("pair_filter: C must lie in [1, 12]");
    PairFilterReport rep;
    rep.m = m;
    rep.x = x;
    rep.C = C;
    rep.N = window_count(C);
    rep.budget = factor_budget(rep.N, x);
    for (const char* tag : {"large_square_divisor", "divisor_translates_prime",
                            "self_translates_prime", "exceptional_modulus_skipped",
                            "p_divides_q_minus_1", "window_overload"})
        rep.failures[tag] = 0;

    u64 p_lo = ceil_root(x, 10);
    u64 p_hi = floor_root(x, 2);
    u64 q_lo = ceil_root(x, 2);
    // q <= x^(9/10), i.e. q^10 <= x^9
    u64 q_hi = (u64)powl((long double)x, 0.9L);
    while (!pow_le(q_hi, 10, x, 9)) --q_hi;
    while (pow_le(q_hi + 1, 10, x, 9)) ++q_hi;

    auto mdivs = factorize(m, cfg.seed).divisors();
    long double l4 = powl(logl((long double)x), 4.0L);

    std::vector<u64> ps, qs;
    prime_range(p_lo, p_hi, [&](u64 p) { ps.push_back(p); });
    prime_range(q_lo, q_hi, [&](u64 q) { qs.push_back(q); });

    for (u64 p : ps) {
        for (u64 q : qs) {
            if (q == p) continue;
            u128 pqm = (u128)p * q * m;
            if (pqm > x) break; // qs ascend, everything later only grows
            u64 s = (u64)pqm + 1;
            if (!is_prime(s)) continue;
            ++rep.pairs_tested;
            bool bad = false;

            // a square divisor d^2 | (p-1)(q-1) with d beyond ln^4 x
            u64 v = (p - 1) * (q - 1); // both below sqrt(x)*x^(9/10), fits u64 at desk scale
            for (u64 d : factorize(v, cfg.seed).divisors()) {
                if ((long double)d <= l4) continue;
                if (v % d == 0 && (v / d) % d == 0) {
                    ++rep.failures["large_square_divisor"];
                    bad = true;
                    break;
                }
            }

            // d*p+1, d*q+1 composite for every d | m; d*pq+1 composite except d = m
            bool hit = false;
            for (u64 d : mdivs) {
                if (is_prime(d * p + 1) || is_prime(d * q + 1)) { hit = true; break; }
                if (d != m && is_prime(checked_u64((u128)d * p * q + 1, "pair_filter: dpq+1"))) {
                    hit = true;
                    break;
                }
            }
            if (hit) { ++rep.failures["divisor_translates_prime"]; bad = true; }

            // the four self-translates must all be composite
            if (is_prime(p * (p - 1) + 1) || is_prime(q * (q - 1) + 1) ||
                is_prime(checked_u64((u128)p * q * (p - 1) + 1, "pair_filter: pq(p-1)+1")) ||
                is_prime(checked_u64((u128)p * q * (q - 1) + 1, "pair_filter: pq(q-1)+1"))) {
                ++rep.failures["self_translates_prime"];
                bad = true;
            }

            if ((q - 1) % p == 0) { ++rep.failures["p_divides_q_minus_1"]; bad = true; }

            // shifted-prime factor load per window, for both p-1 and q-1
            bool overload = false;
            for (u64 v2 : {p - 1, q - 1}) {
                std::map<i64, u64> load;
                for (auto& [r, e] : factorize(v2, cfg.seed).f)
                    load[window_of(r, x, rep.N)] += e;
                for (auto& [j, c] : load)
                    if (j >= 0 && c > rep.budget) { overload = true; break; }
                if (overload) break;
            }
            if (overload) { ++rep.failures["window_overload"]; bad = true; }

            if (!bad) ++rep.survivors;
        }
    }
    return rep;
}

AuditReport exponent_audit(unsigned C) {
    if (C < 1 || C > 12) throw precondition_error("exponent_audit: C must lie in [1, 12]");
    AuditReport rep;
    rep.C = C;
    rep.N = window_count(C);
    rep.delta = "1/" + std::to_string(rep.N);
    long double delta = 1.0L / (long double)rep.N;
    for (u64 M = 1; M <= C; ++M) {
        long double Y = -4.0L + 2.0L * logl(2.0L) +
                        delta * (14.0L + 2.0L * M + 4.0L * logl(2.0L * M + 2.0L));
        rep.rows.push_back({M, Y});
        if (rep.worst_M == 0 || Y > rep.worst_Y) {
            rep.worst_M = M;
            rep.worst_Y = Y;
        }
    }
    rep.pass = rep.worst_Y <= -2.603L;
    return rep;
}

namespace {

void toy_rec(u64 N, u64 M, std::vector<u32>& seq, u32 next_min,
             std::vector<ToyViolation>& out) {
    if (seq.size() == M) {
        // a_j, b_j from the sequence; the claimed bound then follows or fails
        long double lhs = 0;
        for (u64 j = 1; j <= N - 1; ++j) {
            u64 a = 0, b = 0;
            for (u32 v : seq) {
                if (v <= j) ++a;
                if (v == j) ++b;
            }
            lhs += 2.0L * logl((long double)a) + (long double)j * b;
        }
        long double rhs = (long double)N * ((long double)M - 2.0L + 2.0L * logl(2.0L));
        if (lhs > rhs) out.push_back({M, seq, lhs, rhs});
        return;
    }
    for (u32 v = next_min; v <= (u32)N - 1; ++v) {
        seq.push_back(v);
        toy_rec(N, M, seq, v, out);
        seq.pop_back();
    }
}

} // namespace

std::vector<ToyViolation> toy_inequality_violations(u64 N, u64 M_max) {
    if (N < 2) throw precondition_error("toy_inequality_violations: N must be at least 2");
    if (M_max == 0) throw precondition_error("toy_inequality_violations: M_max must be positive");
    std::vector<ToyViolation> out;
    for (u64 M = 1; M <= M_max; ++M) {
        std::vector<u32> seq{1}; // first index pinned to the outermost window
        toy_rec(N, M, seq, 1, out);
    }
    return out;
}

} // namespace phimult
