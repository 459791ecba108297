#include <doctest.h>

#include <phimult/profile.hpp>

#include <cmath>

using namespace phimult;

TEST_CASE("factor windows tile the factor count of p-1 exactly") {
    auto rep = normality_report(10000, 10000, 10);
    CHECK(rep.budget == 1);
    CHECK(rep.tested == 1229);
    CHECK(rep.failing == 360);
    REQUIRE(rep.windows.size() == 12); // underflow, 0..9, overflow
    CHECK(rep.windows.front().j == -1);
    CHECK(rep.windows.back().j == 10);

    // every histogram is a distribution over the tested primes
    u64 mass_total = 0;
    for (auto& w : rep.windows) {
        u64 hsum = 0, hmass = 0;
        for (auto& [load, freq] : w.hist) {
            hsum += freq;
            hmass += load * freq;
        }
        CHECK(hsum == rep.tested);
        CHECK(hmass == w.mass);
        if (w.j >= 0 && w.j < 10) {
            u64 over = 0;
            for (auto& [load, freq] : w.hist)
                if (load > rep.budget) over += freq;
            CHECK(over == w.violations);
        }
        mass_total += w.mass;
    }

    // the tiling identity, recomputed from scratch: total mass is sum of Omega(p-1)
    u64 want_mass = 0;
    prime_range(2, 10000, [&](u64 p) { want_mass += factorize(p - 1).bigomega(); });
    CHECK(mass_total == want_mass);

    // edges are increasing and anchored at e and x
    for (size_t i = 0; i + 1 < rep.windows.size(); ++i) {
        CHECK(rep.windows[i].hi == rep.windows[i + 1].lo);
        CHECK(rep.windows[i].lo < rep.windows[i].hi);
    }
    CHECK(rep.windows[0].lo == 1.0L);
    CHECK(std::abs((double)(rep.windows[0].hi - std::exp(1.0))) < 1e-12);
    CHECK(rep.windows.back().hi == 0.0L); // marks the unbounded tail
    CHECK((double)rep.windows.back().lo == doctest::Approx(10000.0));
}

TEST_CASE("every prime factor lands in exactly one window") {
    auto rep = normality_report(100000, 2000, 10);
    for (u64 p : {2ull, 3ull, 101ull, 1999ull}) {
        for (auto& [q, e] : factorize(p - 1).f) {
            int covered = 0;
            long double qd = (long double)q;
            for (auto& w : rep.windows) {
                long double hi = w.hi == 0.0L ? 1e30L : w.hi;
                if (qd >= w.lo && qd < hi) ++covered;
            }
            CHECK(covered == 1);
        }
    }
}

TEST_CASE("failure shares scale like the measured trend") {
    auto a = normality_report(10000, 10000, 10);
    auto b = normality_report(100000, 100000, 10);
    CHECK(b.tested == 9592);
    CHECK(b.failing == 2871);
    double sa = (double)a.failing / (double)a.tested;
    double sb = (double)b.failing / (double)b.tested;
    CHECK(sa > 0.25);
    CHECK(sa < 0.36);
    CHECK(sb > 0.25);
    CHECK(sb < 0.36);
}

TEST_CASE("profile csv lists underflow, indexed, and overflow rows") {
    auto rep = normality_report(10000, 10000, 10);
    auto csv = profile_csv(rep);
    CHECK(csv.rfind("j,window_lo,window_hi,mean_omega,violations\n", 0) == 0);
    CHECK(csv.find("\n-1,1.000000,2.718282,") != std::string::npos);
    CHECK(csv.find(",inf,") != std::string::npos);
    CHECK(csv.find("\n1,3.485502,4.754219,0.000000,0\n") != std::string::npos);
}

TEST_CASE("window preconditions") {
    CHECK_THROWS_AS(normality_report(100, 1000, 10), precondition_error);   // y > x
    CHECK_THROWS_AS(normality_report(1000000, 3, 10), precondition_error);  // y^10 < x
    CHECK_THROWS_AS(normality_report(10000, 10000, 9), precondition_error); // N too small
    CHECK_THROWS_AS(normality_report(10000, 10000, 0), precondition_error);
    CHECK_THROWS_AS(normality_report(1ull << 62, 200000000, 10), budget_error);
}

TEST_CASE("smooth counts at the configured exponent") {
    CHECK(smooth_count(1000000, 10000) == 9013);
    CHECK(smooth_count(1000000, 10000, 1) == 960);
    CHECK(smooth_count(1000000, 5000) <= smooth_count(1000000, 10000));
    // tiny x: the admission threshold exceeds y, so nothing counts
    CHECK(smooth_count(20, 3) == 0);
    CHECK_THROWS_AS(smooth_count(10, 5), precondition_error);
    CHECK_THROWS_AS(smooth_count(1000, 2000), precondition_error); // y > x
    CHECK_THROWS_AS(smooth_count(1000000, 10000, 0), precondition_error);
}

TEST_CASE("smooth counts agree with per-integer factorization") {
    const u64 x = 1000000, y = 2000;
    u64 want = 0;
    long double lnln = logl(logl((long double)x));
    long double thr = expl(lnln * lnln);
    long double alpha = 1.0L / lnln;
    for (u64 s = 2; s <= y; ++s) {
        if ((long double)s < thr) continue;
        if (logl((long double)factorize(s).p_max()) <= alpha * logl((long double)s)) ++want;
    }
    CHECK(smooth_count(x, y, 1) == want);
}

TEST_CASE("omega statistics over n and over shifted primes") {
    auto st = omega_stats(1000);
    CHECK(st.mean_omega_n == doctest::Approx(2.126).epsilon(1e-12)); // sum = 2126
    CHECK(st.mean_omega_p_minus_1 == doctest::Approx(438.0 / 168.0).epsilon(1e-12));
    CHECK(st.loglog_x == doctest::Approx(std::log(std::log(1000.0))).epsilon(1e-12));

    // independent recount
    u64 sum_n = 0;
    for (u64 n = 1; n <= 1000; ++n) sum_n += factorize(n).omega();
    CHECK(sum_n == 2126);
    u64 sum_p = 0, primes = 0;
    prime_range(2, 1000, [&](u64 p) {
        sum_p += factorize(p - 1).omega();
        ++primes;
    });
    CHECK(primes == 168);
    CHECK(sum_p == 438);

    auto big = omega_stats(1000000);
    CHECK(big.mean_omega_n == doctest::Approx(2.853708).epsilon(1e-9));
    CHECK(big.mean_omega_p_minus_1 == doctest::Approx(3.5179877194323423).epsilon(1e-9));

    CHECK_THROWS_AS(omega_stats(1), precondition_error);
}
