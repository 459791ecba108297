#pragma once
#include "arith.hpp"
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace phimult {

using rational = boost::multiprecision::cpp_rational;

// prod over primes w <= z, w not excluded, of (1 - (D/w)/w), exactly;
// the symbol at w = 2 is the Kronecker extension
rational legendre_product(i64 D, u64 z, const std::vector<u64>& exclude = {},
                          const Config& cfg = default_config());

// sum of ((a*j + b)/n) over j mod n coprime to n; n odd square-free, gcd(a,n)=1;
// always lands in {-1, 0, 1}
i64 char_sum_f(u64 n, i64 a, i64 b);

// sum of (j/n)((a*j + b)/n) over all j mod n; n odd square-free, gcd(ab,n)=1;
// always +-1
i64 char_sum_g(u64 n, i64 a, i64 b);

struct QuadRootReport {
    u64 prime = 0;
    u64 brute = 0;    // roots of a n^2 + b n + c mod prime, counted directly
    u64 formula = 0;  // 1 + ((b^2 - 4ac)/prime)
    bool match = false;
};

QuadRootReport quad_root_count(i64 a, i64 b, i64 c, u64 prime);

struct ConstellationReport {
    u64 prime = 0;
    u64 rho = 0;             // zeros mod prime of (tw+1)(ughw+1)ghw, w = (rg+1)(sh+1)
    bool bound_applicable = false; // prime must not divide 30rstu
    bool satisfied = false;        // -12 - 2 prime^(3/4) <= rho - 6 prime <= -10 + 2 prime^(3/4)
};

ConstellationReport constellation_root_count(u64 r, u64 s, u64 t, u64 u, u64 prime);

struct DavenportReport {
    u64 prime = 0;
    i64 value = 0;          // the complete character sum E
    bool satisfied = false; // |E| <= 2 prime^(3/4), checked as E^4 <= 16 prime^3
};

DavenportReport davenport_sum(u64 r, u64 s, u64 u, u64 prime);

struct ProductBoundReport {
    i64 D = 0;
    u64 y = 0, E = 0;
    unsigned c_num = 1, c_den = 1;
    rational lhs_base;      // the Euler product before raising to c
    rational rhs;           // four times the truncated square-free character sum
    bool satisfied = false; // lhs_base^c <= rhs, compared as lhs^c_num <= rhs^c_den
    bool below_floor = false; // y under the configured floor: informational only
};

// compare the restricted Euler product against its truncated-sum majorant;
// everything exact, c a rational in [1, 2]
ProductBoundReport char_product_bound(i64 D, u64 y, unsigned c_num, unsigned c_den,
                                      u64 E, const Config& cfg = default_config());

// sum over ordered factorizations w = d_1 * ... * d_t, every part >= 2,
// of the product of 1/ln(d_i)
long double divisor_logsum(u64 w, unsigned t, const Config& cfg = default_config());

struct GridRow {
    std::string kind;   // f | g | roots | rho | davenport
    std::string params;
    std::string value;
    std::string bound;
    bool satisfied = false;
};

// the five seeded verification sweeps; every row must come back satisfied
std::vector<GridRow> char_grid(const std::string& kind, u64 seed);

std::string grid_csv(const std::vector<GridRow>& rows);

} // namespace phimult
