#include "phimult/construct.hpp"
#include <algorithm>
#include <set>
#include <json.hpp>

namespace phimult {

namespace {
constexpr u64 ADMISSIBILITY_SCAN_LIMIT = 200'000'000; // largest 2m+1 we will sieve
constexpr u64 JSON_EXACT_MAX = 1ull << 53;            // doubles are exact below this
} // namespace

AdmissibilityReport admissibility_check(u64 m, const Config& cfg) {
    (void)cfg;
    if (m == 0) throw precondition_error("admissibility_check: m must be positive");
    if (m == 1) return {Admissibility::degenerate, 0};
    u64 bound = checked_mul(m, 2, "admissibility_check: 2m") + 1;
    if (bound > ADMISSIBILITY_SCAN_LIMIT)
        throw budget_error("admissibility_check: prime scan to 2m+1 = " +
                           std::to_string(bound) + " exceeds the sieve budget");
    AdmissibilityReport rep;
    prime_range(2, bound, [&](u64 r) {
        if (rep.status == Admissibility::obstructed) return;
        u64 m_mod = 2 * (m % r) % r;
        for (u64 a = 1; a < r; ++a) {
            if ((2 * a + 1) % r != 0 && (m_mod * a + 1) % r != 0) return; // witness found
        }
        rep.status = Admissibility::obstructed;
        rep.obstruction = r;
    });
    return rep;
}

HelperPlan residue_class_for(u64 m, const Config& cfg) {
    (void)cfg;
    if (m == 0) throw precondition_error("residue_class_for: m must be positive");
    HelperPlan plan;
    plan.m = m;
    u64 two_m = checked_mul(m, 2, "residue_class_for: 2m");
    for (u64 d : factorize(two_m).divisors())
        if (d >= 3 && d < two_m) plan.ds.push_back(d);
    std::set<u64> used;
    for (u64 d : plan.ds) {
        u64 p = d + 1;
        while (used.count(p) || !is_prime(p) || (two_m - d) % p == 0) ++p;
        used.insert(p);
        plan.helpers.emplace_back(d, p);
        // residue r with d*r + 1 = 0 mod p, i.e. r = -1/d mod p
        u64 inv = powmod(d % p, p - 2, p);
        u64 r = (p - inv) % p;
        auto comb = crt_combine(plan.residue, plan.modulus, r, p);
        if (!comb)
            throw verification_error("residue_class_for: incompatible helper congruences");
        plan.residue = comb->first;
        plan.modulus = comb->second;
    }
    return plan;
}

namespace {

// the three-prime gate plus the composite wall over the divisors of 2m
bool triple_candidate_ok(u64 m, u64 p, const std::vector<u64>& divs_2m) {
    if (p <= 2 * m + 1 || !is_prime(p)) return false;
    if (!is_prime(checked_u64((u128)2 * p + 1, "triple step: 2p+1"))) return false;
    if (!is_prime(checked_u64((u128)2 * m * p + 1, "triple step: 2mp+1"))) return false;
    for (u64 d : divs_2m) {
        if (d == 2 || d == 2 * m) continue;
        if (is_prime(d * p + 1)) return false; // d < 2m keeps d*p+1 below 2mp+1
    }
    return true;
}

} // namespace

Certificate triple_step(u64 m, u64 k, u64 h_limit, const Config& cfg) {
    auto pre = preimages(m, cfg.seed);
    if (pre.size() != k)
        throw precondition_error("triple_step: multiplicity of " + std::to_string(m) +
                                 " is " + std::to_string(pre.size()) + ", not " +
                                 std::to_string(k));
    auto adm = admissibility_check(m, cfg);
    if (adm.status == Admissibility::degenerate)
        throw precondition_error("triple_step: m = 1 is degenerate");
    if (adm.status == Admissibility::obstructed)
        throw precondition_error("triple_step: obstruction at r = " +
                                 std::to_string(adm.obstruction) +
                                 ": no prime in any class can qualify");
    auto plan = residue_class_for(m, cfg);
    auto divs_2m = factorize(2 * m).divisors();
    for (u64 h = 0; h <= h_limit; ++h) {
        u128 cand = (u128)plan.residue + (u128)h * plan.modulus;
        u64 p = checked_u64(cand, "triple_step: candidate prime");
        if (!triple_candidate_ok(m, p, divs_2m)) continue;
        u64 product = checked_mul(2 * m, p, "triple_step: 2mp");
        auto got = preimages(product, cfg.seed);
        if (got.size() != k + 2)
            throw verification_error("triple_step: multiplicity of " + std::to_string(product) +
                                     " is " + std::to_string(got.size()) + ", expected " +
                                     std::to_string(k + 2) + "; the step guarantee is broken");
        Certificate c;
        c.kind = StepKind::triple;
        c.m = m;
        c.k = k;
        c.prime = p;
        c.product = product;
        c.verified_multiplicity = got.size();
        c.preimage_list = std::move(got);
        c.residue = plan.residue;
        c.modulus = plan.modulus;
        c.helpers = plan.helpers;
        return c;
    }
    throw budget_error("triple_step: no qualifying prime with h <= " + std::to_string(h_limit));
}

PairSearchResult pair_step_search(u64 m, u64 k, u64 q_limit, size_t stop_after,
                                  const Config& cfg) {
    if (m < 2 || (m & 1))
        throw precondition_error("pair_step_search: m must be even and at least 2");
    if (k == 0) throw precondition_error("pair_step_search: k must be positive");
    auto pre = preimages(m, cfg.seed);
    if (pre.size() != k)
        throw precondition_error("pair_step_search: multiplicity of " + std::to_string(m) +
                                 " is " + std::to_string(pre.size()) + ", not " +
                                 std::to_string(k));
    u64 lo = checked_mul(pre.back(), 2, "pair_step_search: 2 * max preimage");
    PairSearchResult res;
    for (u64 q = lo + 1; q <= q_limit; ++q) {
        if (!is_prime(q)) continue;
        u64 s = checked_u64((u128)m * q + 1, "pair_step_search: m*q+1");
        if (!is_prime(s)) continue;
        ++res.scanned;
        u64 product = checked_mul(checked_mul(m, q, "pair_step_search: m*q"), q - 1,
                                  "pair_step_search: m*q*(q-1)");
        auto got = preimages(product, cfg.seed);
        if (got.size() == k + 2) {
            Certificate c;
            c.kind = StepKind::pair;
            c.m = m;
            c.k = k;
            c.prime = q;
            c.product = product;
            c.verified_multiplicity = got.size();
            c.preimage_list = std::move(got);
            res.certificates.push_back(std::move(c));
            if (res.certificates.size() >= stop_after) break;
        } else {
            res.exceptions.emplace_back(q, got.size());
        }
    }
    return res;
}

TrivialSolutions trivial_solutions(u64 m, u64 p, u64 q, const Config& cfg) {
    if (!is_prime(p) || !is_prime(q) || p == q || p == 2 || q == 2)
        throw precondition_error("trivial_solutions: p, q must be distinct odd primes");
    auto pre = preimages(m, cfg.seed);
    if (pre.empty())
        throw precondition_error("trivial_solutions: m has no preimages");
    for (u64 a : pre)
        if (a % p == 0 || a % q == 0)
            throw precondition_error("trivial_solutions: " + std::to_string(p) + " or " +
                                     std::to_string(q) + " divides the preimage " +
                                     std::to_string(a));
    u64 s = checked_u64((u128)checked_mul(checked_mul(m, p, "trivial_solutions: mp"), q,
                                          "trivial_solutions: mpq") + 1,
                        "trivial_solutions: mpq+1");
    if (!is_prime(s))
        throw precondition_error("trivial_solutions: mpq+1 = " + std::to_string(s) +
                                 " is not prime");
    TrivialSolutions out;
    out.m = m;
    out.p = p;
    out.q = q;
    out.target = checked_mul(
        checked_mul(checked_mul(m, p, "trivial_solutions: target"), p - 1, "trivial_solutions: target"),
        checked_mul(q, q - 1, "trivial_solutions: target"), "trivial_solutions: target");
    u64 p2q2 = checked_mul(checked_mul(p, p, "trivial_solutions: p^2"),
                           checked_mul(q, q, "trivial_solutions: q^2"), "trivial_solutions: p^2q^2");
    for (u64 a : pre)
        out.solutions.push_back(checked_mul(p2q2, a, "trivial_solutions: p^2q^2a"));
    u64 pqs = checked_mul(p * q, s, "trivial_solutions: pqs");
    out.solutions.push_back(pqs);
    out.solutions.push_back(checked_mul(pqs, 2, "trivial_solutions: 2pqs"));
    std::sort(out.solutions.begin(), out.solutions.end());
    if (std::adjacent_find(out.solutions.begin(), out.solutions.end()) != out.solutions.end())
        throw verification_error("trivial_solutions: the guaranteed preimages collide");
    for (u64 n : out.solutions)
        if (euler_phi(n, cfg.seed) != out.target)
            throw verification_error("trivial_solutions: phi(" + std::to_string(n) +
                                     ") != " + std::to_string(out.target));
    return out;
}

void verify_certificate(const Certificate& c, const Config& cfg) {
    auto fail = [](const std::string& why) { throw verification_error("certificate: " + why); };
    if (c.verified_multiplicity != c.k + 2) fail("verified_multiplicity is not k + 2");
    auto pre_m = preimages(c.m, cfg.seed);
    if (pre_m.size() != c.k)
        fail("multiplicity of m recomputes to " + std::to_string(pre_m.size()));
    if (!is_prime(c.prime)) fail("recorded prime is composite");
    if (c.kind == StepKind::triple) {
        u64 p = c.prime;
        if (c.modulus == 0 || p % c.modulus != c.residue % c.modulus)
            fail("prime is outside the recorded residue class");
        auto plan = residue_class_for(c.m, cfg);
        if (plan.residue != c.residue || plan.modulus != c.modulus || plan.helpers != c.helpers)
            fail("helper plan does not reproduce");
        auto adm = admissibility_check(c.m, cfg);
        if (adm.status != Admissibility::ok) fail("m is not admissible");
        if (!triple_candidate_ok(c.m, p, factorize(2 * c.m).divisors()))
            fail("prime fails the three-prime-and-composite-wall conditions");
        if (c.product != checked_mul(2 * c.m, p, "certificate: 2mp")) fail("product is not 2mp");
    } else {
        if ((c.m & 1) || c.m < 2) fail("pair step requires even m");
        if (c.prime <= checked_mul(pre_m.back(), 2, "certificate: 2 * max preimage"))
            fail("prime does not clear twice the largest preimage of m");
        if (!is_prime(checked_mul(c.m, c.prime, "certificate: m*q") + 1)) fail("m*q+1 is composite");
        u64 prod = checked_mul(checked_mul(c.m, c.prime, "certificate: m*q"), c.prime - 1,
                               "certificate: m*q*(q-1)");
        if (c.product != prod) fail("product is not m*q*(q-1)");
    }
    auto got = preimages(c.product, cfg.seed);
    if (got != c.preimage_list) fail("preimage list does not reproduce");
    if (got.size() != c.verified_multiplicity) fail("multiplicity does not reproduce");
}

namespace {

nlohmann::json json_u64(u64 v) {
    if (v < JSON_EXACT_MAX) return nlohmann::json(v);
    return nlohmann::json(std::to_string(v)); // decimal string keeps it exact
}

u64 parse_u64_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw malformed_certificate(std::string("missing field: ") + key);
    const auto& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<u64>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw malformed_certificate(std::string("field is not a decimal string: ") + key);
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw malformed_certificate(std::string("field out of range: ") + key);
        }
    }
    throw malformed_certificate(std::string("field has wrong type: ") + key);
}

u64 parse_u64_value(const nlohmann::json& v, const char* where) {
    if (v.is_number_unsigned()) return v.get<u64>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw malformed_certificate(std::string("list entry is not a decimal string in ") + where);
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw malformed_certificate(std::string("list entry out of range in ") + where);
        }
    }
    throw malformed_certificate(std::string("list entry has wrong type in ") + where);
}

} // namespace

std::string certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["kind"] = c.kind == StepKind::triple ? "triple" : "pair";
    j["m"] = json_u64(c.m);
    j["k"] = json_u64(c.k);
    j["prime"] = json_u64(c.prime);
    j["product"] = json_u64(c.product);
    j["verified_multiplicity"] = json_u64(c.verified_multiplicity);
    auto arr = nlohmann::json::array();
    for (u64 v : c.preimage_list) arr.push_back(json_u64(v));
    j["preimages"] = std::move(arr);
    j["residue"] = json_u64(c.residue);
    j["modulus"] = json_u64(c.modulus);
    auto hs = nlohmann::json::array();
    for (auto& [d, p] : c.helpers) hs.push_back(nlohmann::json::array({json_u64(d), json_u64(p)}));
    j["helpers"] = std::move(hs);
    return j.dump();
}

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw malformed_certificate(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw malformed_certificate("top level is not an object");
    Certificate c;
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw malformed_certificate("missing or non-string field: kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "triple") c.kind = StepKind::triple;
    else if (kind == "pair") c.kind = StepKind::pair;
    else throw malformed_certificate("unknown kind: " + kind);
    c.m = parse_u64_field(j, "m");
    c.k = parse_u64_field(j, "k");
    c.prime = parse_u64_field(j, "prime");
    c.product = parse_u64_field(j, "product");
    c.verified_multiplicity = parse_u64_field(j, "verified_multiplicity");
    if (!j.contains("preimages") || !j.at("preimages").is_array())
        throw malformed_certificate("missing or non-array field: preimages");
    for (const auto& v : j.at("preimages"))
        c.preimage_list.push_back(parse_u64_value(v, "preimages"));
    c.residue = parse_u64_field(j, "residue");
    c.modulus = parse_u64_field(j, "modulus");
    if (!j.contains("helpers") || !j.at("helpers").is_array())
        throw malformed_certificate("missing or non-array field: helpers");
    for (const auto& h : j.at("helpers")) {
        if (!h.is_array() || h.size() != 2)
            throw malformed_certificate("helper entry is not a pair");
        c.helpers.emplace_back(parse_u64_value(h[0], "helpers"), parse_u64_value(h[1], "helpers"));
    }
    return c;
}

} // namespace phimult
