#pragma once
#include "invphi.hpp"
#include <string>
#include <vector>

namespace phimult {

enum class Admissibility { ok, degenerate, obstructed };

struct AdmissibilityReport {
    Admissibility status = Admissibility::ok;
    u64 obstruction = 0; // the blocking prime when status == obstructed
};

// literal scan over primes r <= 2m+1 for a unit a mod r keeping a, 2a+1, 2ma+1
// all nonzero mod r; an r with no such a blocks the prime search forever
AdmissibilityReport admissibility_check(u64 m, const Config& cfg = default_config());

struct HelperPlan {
    u64 m = 0;
    std::vector<u64> ds;                       // divisors of 2m in [3, 2m)
    std::vector<std::pair<u64, u64>> helpers;  // (d_i, p_i), one prime per divisor
    u64 residue = 0, modulus = 1;              // p in this class forces p_i | d_i*p + 1
};

// pick distinct helper primes p_i > d_i with p_i not dividing 2m - d_i,
// then intersect the congruences -1/d_i mod p_i into a single class
HelperPlan residue_class_for(u64 m, const Config& cfg = default_config());

enum class StepKind { triple, pair };

// a checkable record that `product` has exactly `verified_multiplicity` preimages,
// produced by one growth step from a value m of known multiplicity k
struct Certificate {
    StepKind kind = StepKind::triple;
    u64 m = 0, k = 0;
    u64 prime = 0;                   // p (triple: product = 2mp) or q (pair: m*q*(q-1))
    u64 product = 0;
    u64 verified_multiplicity = 0;
    std::vector<u64> preimage_list;  // full preimage set of product, ascending
    // triple-only search data; zeroed / empty for pair certificates
    u64 residue = 0, modulus = 0;
    std::vector<std::pair<u64, u64>> helpers;
};

std::string certificate_to_json(const Certificate& c);

// raised when certificate text cannot be decoded at all (vs. failing verification)
struct malformed_certificate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Certificate certificate_from_json(const std::string& text);

// search h = 0,1,2,... for a prime p = residue + h*modulus > 2m+1 with 2p+1 and
// 2mp+1 prime and d*p+1 composite for every d | 2m other than 2 and 2m; then
// multiplicity(2mp) = k+2 unconditionally, and the recomputation must agree
Certificate triple_step(u64 m, u64 k, u64 h_limit, const Config& cfg = default_config());

struct PairSearchResult {
    std::vector<Certificate> certificates;       // q with multiplicity(m*q*(q-1)) = k+2
    std::vector<std::pair<u64, u64>> exceptions; // (q, observed multiplicity) otherwise
    u64 scanned = 0;                             // primes q examined with m*q+1 prime
};

// scan primes q in (2*max_preimage(m), q_limit] with m*q+1 prime; the k+2 jump
// holds for most q but not all, so every candidate is verified by recomputation
PairSearchResult pair_step_search(u64 m, u64 k, u64 q_limit,
                                  size_t stop_after = SIZE_MAX,
                                  const Config& cfg = default_config());

struct TrivialSolutions {
    u64 m = 0, p = 0, q = 0;
    u64 target = 0;              // m * p * (p-1) * q * (q-1)
    std::vector<u64> solutions;  // the guaranteed preimages of target, ascending
};

// the always-present preimages of m*p*(p-1)*q*(q-1): p^2 q^2 a for each preimage a
// of m, plus pq*s and 2pq*s where s = mpq+1; requires p, q distinct odd primes
// not dividing any preimage of m, with s prime
TrivialSolutions trivial_solutions(u64 m, u64 p, u64 q, const Config& cfg = default_config());

// re-run every primality, search, and preimage computation behind a certificate;
// throws verification_error with a reason if anything fails to reproduce
void verify_certificate(const Certificate& c, const Config& cfg = default_config());

} // namespace phimult
