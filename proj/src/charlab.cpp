#include "phimult/charlab.hpp"
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace phimult {

namespace {

// Legendre/Kronecker symbol of D at a prime (2 handled by the Kronecker rule)
int prime_symbol(i64 D, u64 p) {
    if (p == 2) return kronecker2(D);
    return jacobi(D, p);
}

bool odd_squarefree(u64 n, u64 seed = 1) {
    if (n == 0 || (n & 1) == 0) return false;
    return factorize(n, seed).mu() != 0;
}

// |v| <= 2 p^(3/4), decided exactly as v^4 <= 16 p^3
bool within_davenport_bound(i64 v, u64 p) {
    u128 v4 = (u128)(v < 0 ? -v : v);
    v4 = v4 * v4;
    v4 = v4 * v4;
    return v4 <= (u128)16 * p * p * p;
}

} // namespace

rational legendre_product(i64 D, u64 z, const std::vector<u64>& exclude, const Config& cfg) {
    if (z < 2) throw precondition_error("legendre_product: z must be at least 2");
    if (z > 10'000'000) throw budget_error("legendre_product: z above 10^7");
    (void)cfg;
    rational acc = 1;
    prime_range(2, z, [&](u64 p) {
        if (std::find(exclude.begin(), exclude.end(), p) != exclude.end()) return;
        int s = prime_symbol(D, p);
        acc *= rational((i64)p - s, (i64)p);
    });
    return acc;
}

i64 char_sum_f(u64 n, i64 a, i64 b) {
    if (!odd_squarefree(n)) throw precondition_error("char_sum_f: n must be odd square-free");
    if (std::gcd((u64)(((a % (i64)n) + (i64)n) % (i64)n), n) != 1 && n > 1)
        throw precondition_error("char_sum_f: a must be coprime to n");
    i64 s = 0;
    for (u64 j = 1; j <= n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        s += jacobi(a * (i64)j + b, n);
    }
    if (s < -1 || s > 1)
        throw verification_error("char_sum_f: value left {-1,0,1}, which cannot happen");
    return s;
}

i64 char_sum_g(u64 n, i64 a, i64 b) {
    if (!odd_squarefree(n)) throw precondition_error("char_sum_g: n must be odd square-free");
    u64 am = (u64)(((a % (i64)n) + (i64)n) % (i64)n);
    u64 bm = (u64)(((b % (i64)n) + (i64)n) % (i64)n);
    if (n > 1 && (std::gcd(am, n) != 1 || std::gcd(bm, n) != 1))
        throw precondition_error("char_sum_g: a and b must be coprime to n");
    i64 s = 0;
    for (u64 j = 1; j <= n; ++j)
        s += jacobi((i64)j, n) * jacobi(a * (i64)j + b, n);
    if (s != 1 && s != -1)
        throw verification_error("char_sum_g: |value| != 1, which cannot happen");
    return s;
}

QuadRootReport quad_root_count(i64 a, i64 b, i64 c, u64 prime) {
    if (prime < 3 || !is_prime(prime))
        throw precondition_error("quad_root_count: prime must be an odd prime");
    if (prime > 1'000'000) throw budget_error("quad_root_count: residue scan above 10^6");
    i64 p = (i64)prime;
    i64 am = ((a % p) + p) % p, bm = ((b % p) + p) % p, cm = ((c % p) + p) % p;
    if (am == 0) throw precondition_error("quad_root_count: prime must not divide a");
    QuadRootReport rep;
    rep.prime = prime;
    for (i64 n = 0; n < p; ++n) {
        i64 v = ((am * n % p) * n + bm * n + cm) % p;
        if (v == 0) ++rep.brute;
    }
    i64 disc = (bm * bm % p - 4 * am % p * cm % p + p) % p;
    rep.formula = (u64)(1 + jacobi(disc, prime));
    rep.match = rep.brute == rep.formula;
    return rep;
}

ConstellationReport constellation_root_count(u64 r, u64 s, u64 t, u64 u, u64 prime) {
    if (!is_prime(prime)) throw precondition_error("constellation_root_count: prime required");
    if (prime > 10'000) throw budget_error("constellation_root_count: grid scan above 10^4");
    if (r == 0 || s == 0 || t == 0 || u == 0)
        throw precondition_error("constellation_root_count: parameters must be positive");
    ConstellationReport rep;
    rep.prime = prime;
    u64 p = prime, rm = r % p, sm = s % p, tm = t % p, um = u % p;
    for (u64 g = 0; g < p; ++g) {
        u64 rg1 = (rm * g + 1) % p;
        for (u64 h = 0; h < p; ++h) {
            u64 w = rg1 * ((sm * h + 1) % p) % p;
            u64 ghw = g * h % p * w % p;
            u64 f = (tm * w + 1) % p * ((um * ghw + 1) % p) % p * ghw % p;
            if (f == 0) ++rep.rho;
        }
    }
    u128 thirty = (u128)30 * r * s * t * u;
    rep.bound_applicable = thirty % p != 0;
    if (rep.bound_applicable) {
        // -12 - 2p^(3/4) <= rho - 6p <= -10 + 2p^(3/4), fourth powers keep it exact
        i64 d = (i64)rep.rho - (i64)(6 * p);
        bool lower = d >= -12 || within_davenport_bound(d + 12, p);
        bool upper = d <= -10 || within_davenport_bound(d + 10, p);
        rep.satisfied = lower && upper;
    }
    return rep;
}

DavenportReport davenport_sum(u64 r, u64 s, u64 u, u64 prime) {
    if (prime < 3 || !is_prime(prime))
        throw precondition_error("davenport_sum: prime must be an odd prime");
    if (prime > 1'000'000) throw budget_error("davenport_sum: summation above 10^6");
    if (r % prime == 0 || s % prime == 0 || u % prime == 0)
        throw precondition_error("davenport_sum: prime must not divide r, s, u");
    DavenportReport rep;
    rep.prime = prime;
    u64 p = prime;
    u64 uinv = powmod(u % p, p - 2, p);
    u64 shift = 4 * (s % p) % p * uinv % p; // the 4 s u^{-1} translate
    for (u64 a = 1; a < p; ++a) {
        i64 t1 = jacobi((i64)((1 + 4 * (r % p) % p * a) % p), p);
        i64 t2 = jacobi((i64)a, p);
        i64 t3 = jacobi((i64)((a + p - shift) % p), p);
        rep.value += t1 * t2 * t3;
    }
    rep.satisfied = within_davenport_bound(rep.value, p);
    return rep;
}

ProductBoundReport char_product_bound(i64 D, u64 y, unsigned c_num, unsigned c_den,
                                      u64 E, const Config& cfg) {
    if (y < 2) throw precondition_error("char_product_bound: y must be at least 2");
    if (y > 50) throw budget_error("char_product_bound: y above the enumeration budget of 50");
    if (c_den == 0 || c_num < c_den || c_num > 2 * c_den)
        throw precondition_error("char_product_bound: c must lie in [1, 2]");
    if (E == 0) throw precondition_error("char_product_bound: E must be positive");
    ProductBoundReport rep;
    rep.D = D;
    rep.y = y;
    rep.E = E;
    rep.c_num = c_num;
    rep.c_den = c_den;
    rep.below_floor = y < cfg.y_floor;
    rep.lhs_base = 1;
    prime_range(2, y, [&](u64 p) {
        if (E % p == 0) return;
        rep.lhs_base *= rational((i64)p - prime_symbol(D, p), (i64)p);
    });
    // truncation height y^(ln ln y); the power sits well clear of integers here
    u64 height = std::max<u64>(1, (u64)powl((long double)y, logl(logl((long double)y))));
    rep.rhs = 0;
    u64 twoE = checked_mul(E, 2, "char_product_bound: 2E");
    for (u64 n = 1; n <= height; ++n) {
        if (std::gcd(n, twoE) != 1) continue;
        auto f = factorize(n, cfg.seed);
        if (f.mu() == 0 || f.p_max() > y) continue;
        // c^omega(n) * mu(n) * (D/n) / n, exactly
        rational term(f.mu() * jacobi(D, n), (i64)n);
        for (u32 i = 0; i < f.omega(); ++i) term *= rational(c_num, c_den);
        rep.rhs += term;
    }
    rep.rhs *= 4;
    if (rep.rhs <= 0) {
        rep.satisfied = false;
    } else {
        // lhs^c <= rhs with c = c_num/c_den: compare lhs^c_num against rhs^c_den
        rational l = 1, r = 1;
        for (unsigned i = 0; i < c_num; ++i) l *= rep.lhs_base;
        for (unsigned i = 0; i < c_den; ++i) r *= rep.rhs;
        rep.satisfied = l <= r;
    }
    return rep;
}

long double divisor_logsum(u64 w, unsigned t, const Config& cfg) {
    if (w < 2 || t < 2) throw precondition_error("divisor_logsum: need w >= 2 and t >= 2");
    auto fz = factorize(w, cfg.seed);
    long double states = 1;
    for (unsigned i = 1; i < t; ++i) {
        states *= (long double)fz.tau();
        if (states > 1e7L) throw budget_error("divisor_logsum: factorization tree too large");
    }
    // ordered factorizations, every part at least 2
    std::function<long double(u64, unsigned)> rec = [&](u64 rem, unsigned parts) -> long double {
        if (parts == 1)
            return rem >= 2 ? 1.0L / logl((long double)rem) : 0.0L;
        long double acc = 0;
        for (u64 d : factorize(rem, cfg.seed).divisors())
            if (d >= 2 && rem / d >= 2)
                acc += (1.0L / logl((long double)d)) * rec(rem / d, parts - 1);
        return acc;
    };
    return rec(w, t);
}

namespace {

u64 draw(u64& state, u64 lo, u64 hi) { // uniform-ish in [lo, hi]
    return lo + splitmix64(state) % (hi - lo + 1);
}

std::string fmt_params(std::initializer_list<std::pair<const char*, u64>> kv) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : kv) {
        if (!first) os << ';';
        os << k << '=' << v;
        first = false;
    }
    return os.str();
}

} // namespace

std::vector<GridRow> char_grid(const std::string& kind, u64 seed) {
    std::vector<GridRow> rows;
    u64 state = seed;
    if (kind == "f") {
        for (u64 n = 1; n <= 1000; n += 2) {
            if (!odd_squarefree(n)) continue;
            for (int i = 0; i < 20; ++i) {
                u64 a = 1;
                if (n > 1)
                    do a = draw(state, 1, n - 1); while (std::gcd(a, n) != 1);
                u64 b = n == 1 ? 0 : draw(state, 0, n - 1);
                i64 v = char_sum_f(n, (i64)a, (i64)b);
                rows.push_back({"f", fmt_params({{"n", n}, {"a", a}, {"b", b}}),
                                std::to_string(v), "1", v >= -1 && v <= 1});
            }
        }
    } else if (kind == "g") {
        for (u64 n = 1; n <= 500; n += 2) {
            if (!odd_squarefree(n)) continue;
            for (int i = 0; i < 10; ++i) {
                u64 a = 1, b = 1;
                if (n > 1) {
                    do a = draw(state, 1, n - 1); while (std::gcd(a, n) != 1);
                    do b = draw(state, 1, n - 1); while (std::gcd(b, n) != 1);
                }
                i64 v = char_sum_g(n, (i64)a, (i64)b);
                rows.push_back({"g", fmt_params({{"n", n}, {"a", a}, {"b", b}}),
                                std::to_string(v), "1", v == 1 || v == -1});
            }
        }
    } else if (kind == "roots") {
        for (u64 p : primes_up_to(97)) {
            if (p == 2) continue;
            for (int i = 0; i < 100; ++i) {
                u64 a;
                do a = draw(state, 0, p - 1); while (a == 0);
                u64 b = draw(state, 0, p - 1), c = draw(state, 0, p - 1);
                auto rep = quad_root_count((i64)a, (i64)b, (i64)c, p);
                rows.push_back({"roots",
                                fmt_params({{"a", a}, {"b", b}, {"c", c}, {"prime", p}}),
                                std::to_string(rep.brute), std::to_string(rep.formula),
                                rep.match});
            }
        }
    } else if (kind == "rho") {
        for (u64 p : primes_up_to(199)) {
            if (p <= 7) continue;
            for (int i = 0; i < 10; ++i) {
                u64 v[4];
                for (auto& x : v)
                    do x = draw(state, 1, 1000); while (std::gcd(x, 30 * p) != 1);
                auto rep = constellation_root_count(v[0], v[1], v[2], v[3], p);
                rows.push_back({"rho",
                                fmt_params({{"r", v[0]}, {"s", v[1]}, {"t", v[2]},
                                            {"u", v[3]}, {"prime", p}}),
                                std::to_string(rep.rho),
                                "6p" + std::string(rep.bound_applicable ? "" : ":n/a"),
                                rep.bound_applicable && rep.satisfied});
            }
        }
    } else if (kind == "davenport") {
        for (u64 p : primes_up_to(499)) {
            if (p == 2) continue;
            for (int i = 0; i < 5; ++i) {
                u64 v[3];
                for (auto& x : v)
                    do x = draw(state, 1, 1000); while (x % p == 0);
                auto rep = davenport_sum(v[0], v[1], v[2], p);
                rows.push_back({"davenport",
                                fmt_params({{"r", v[0]}, {"s", v[1]}, {"u", v[2]}, {"prime", p}}),
                                std::to_string(rep.value), "2p^(3/4)", rep.satisfied});
            }
        }
    } else {
        throw precondition_error("char_grid: unknown kind " + kind);
    }
    return rows;
}

std::string grid_csv(const std::vector<GridRow>& rows) {
    std::ostringstream os;
    os << "kind,params,value,bound,satisfied\n";
    for (auto& r : rows)
        os << r.kind << ',' << r.params << ',' << r.value << ',' << r.bound << ','
           << (r.satisfied ? "true" : "false") << '\n';
    return os.str();
}

} // namespace phimult
