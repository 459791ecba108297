#include "phimult/census.hpp"
#include "phimult/charlab.hpp"
#include "phimult/construct.hpp"
#include "phimult/hypothesis.hpp"
#include "phimult/invphi.hpp"
#include "phimult/profile.hpp"
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <json.hpp>

using namespace phimult;
using nlohmann::json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* USAGE = R"(usage: phimult <subcommand> [--flag value ...]

subcommands:
  invphi --m M                         all n with phi(n) = M
  mult --m M                           how many n have phi(n) = M
  census --x X                         multiplicity spectrum of totients <= X
  smallest --k K --limit L             least m <= L with exactly K preimages
  ratio --points X1,X2,...             multiplicity shares at checkpoints
  construct --m M --k K [--h-limit H]  certified step m -> 2mp with k -> k+2
  part1 --m M --k K --q-limit Q        certified steps m -> m*q*(q-1)
         [--first N]
  trivial --m M --p P --q Q            guaranteed preimages of m*p*(p-1)*q*(q-1)
  s-count --m M --x X                  primes s in (X/2,X], s=1 mod M, (s-1)/M prime
  chen-count --m M --x X               same with (s-1)/M an almost-prime
  pair-filter --m M --x X [--C C]      prime-pair rarity-condition tallies
  audit [--C C] [--toy-n N --toy-m M]  exponent bookkeeping and partition check
  char product --D D --z Z [--exclude p1,p2,...]
  char f|g --n N --a A --b B
  char roots --a A --b B --c C --prime P
  char rho --r R --s S --t T --u U --prime P
  char davenport --r R --s S --u U --prime P
  char product-bound --D D --y Y --c NUM[/DEN] --E E
  char logsum --w W --t T
  char grid --kind f|g|roots|rho|davenport
  profile windows --x X --y Y [--N N]
  profile smooth --x X --y Y [--multiplier M]
  profile omega --x X
  verify --in FILE                     re-check a construction certificate

global flags: --seed N --memory-mb N --threads N --y-floor N
              --format json|csv --out FILE
)";

class Args {
public:
    Args(int argc, char** argv, int start) {
        for (int i = start; i < argc; ++i) {
            std::string key = argv[i];
            if (key.size() < 3 || key.rfind("--", 0) != 0)
                throw usage_error("expected --flag, got '" + key + "'");
            if (i + 1 >= argc) throw usage_error("flag " + key + " needs a value");
            kv_[key.substr(2)] = argv[++i];
        }
    }

    bool has(const std::string& k) const { return kv_.count(k) != 0; }

    std::string str(const std::string& k) {
        auto it = kv_.find(k);
        if (it == kv_.end()) throw usage_error("missing required flag --" + k);
        used_.insert(k);
        return it->second;
    }

    std::string str_or(const std::string& k, const std::string& dflt) {
        return has(k) ? str(k) : dflt;
    }

    u64 num(const std::string& k) { return parse_num(k, str(k)); }

    u64 num_or(const std::string& k, u64 dflt) { return has(k) ? num(k) : dflt; }

    i64 snum(const std::string& k) {
        std::string v = str(k);
        bool neg = !v.empty() && v[0] == '-';
        u64 mag = parse_num(k, neg ? v.substr(1) : v);
        if (mag > (u64)INT64_MAX) throw usage_error("flag --" + k + " is out of range");
        return neg ? -(i64)mag : (i64)mag;
    }

    std::vector<u64> num_list(const std::string& k) {
        std::vector<u64> out;
        std::string s = str(k), item;
        std::istringstream is(s);
        while (std::getline(is, item, ',')) out.push_back(parse_num(k, item));
        if (out.empty()) throw usage_error("flag --" + k + " needs a nonempty list");
        return out;
    }

    void finish() const {
        for (auto& [k, v] : kv_)
            if (!used_.count(k)) throw usage_error("unknown flag --" + k);
    }

private:
    static u64 parse_num(const std::string& k, const std::string& v) {
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            throw usage_error("flag --" + k + " needs an unsigned number, got '" + v + "'");
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            throw usage_error("flag --" + k + " is out of range");
        }
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

json json_u64(u64 v) {
    if (v < (1ull << 53)) return json(v);
    return json(std::to_string(v)); // exact decimal string beyond double precision
}

std::string rat_str(const rational& r) { return r.str(); }

json cert_json(const Certificate& c) { return json::parse(certificate_to_json(c)); }

// c in [1,2] given as "3/2" or a plain decimal like "1.25", converted exactly
std::pair<unsigned, unsigned> parse_ratio(const std::string& s) {
    auto bad = [&] { return usage_error("cannot parse ratio '" + s + "'"); };
    auto digits = [](const std::string& t) {
        return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!digits(a) || !digits(b)) throw bad();
        return {(unsigned)std::stoul(a), (unsigned)std::stoul(b)};
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        if (!digits(s)) throw bad();
        return {(unsigned)std::stoul(s), 1};
    }
    std::string a = s.substr(0, dot), b = s.substr(dot + 1);
    if (!digits(a) || !digits(b) || b.size() > 6) throw bad();
    unsigned den = 1;
    for (size_t i = 0; i < b.size(); ++i) den *= 10;
    unsigned num = (unsigned)std::stoul(a) * den + (unsigned)std::stoul(b);
    unsigned g = std::gcd(num, den);
    return {num / g, den / g};
}

struct Output {
    std::string text;
    bool raw = false; // csv and other preformatted text print as-is
};

Output run_char(const std::string& kind, Args& args, const Config& cfg,
                const std::string& format) {
    if (kind == "product") {
        i64 D = args.snum("D");
        u64 z = args.num("z");
        std::vector<u64> excl;
        if (args.has("exclude")) excl = args.num_list("exclude");
        auto v = legendre_product(D, z, excl, cfg);
        json j;
        j["D"] = D;
        j["z"] = json_u64(z);
        j["exclude"] = excl;
        j["value"] = rat_str(v);
        return {j.dump(), false};
    }
    if (kind == "f" || kind == "g") {
        u64 n = args.num("n");
        i64 a = args.snum("a"), b = args.snum("b");
        i64 v = kind == "f" ? char_sum_f(n, a, b) : char_sum_g(n, a, b);
        json j;
        j["n"] = json_u64(n);
        j["a"] = a;
        j["b"] = b;
        j["value"] = v;
        return {j.dump(), false};
    }
    if (kind == "roots") {
        auto rep = quad_root_count(args.snum("a"), args.snum("b"),
                                   args.snum("c"), args.num("prime"));
        json j;
        j["prime"] = json_u64(rep.prime);
        j["brute"] = json_u64(rep.brute);
        j["formula"] = json_u64(rep.formula);
        j["match"] = rep.match;
        return {j.dump(), false};
    }
    if (kind == "rho") {
        auto rep = constellation_root_count(args.num("r"), args.num("s"), args.num("t"),
                                            args.num("u"), args.num("prime"));
        json j;
        j["prime"] = json_u64(rep.prime);
        j["rho"] = json_u64(rep.rho);
        j["bound_applicable"] = rep.bound_applicable;
        j["satisfied"] = rep.satisfied;
        return {j.dump(), false};
    }
    if (kind == "davenport") {
        auto rep = davenport_sum(args.num("r"), args.num("s"), args.num("u"),
                                 args.num("prime"));
        json j;
        j["prime"] = json_u64(rep.prime);
        j["value"] = rep.value;
        j["satisfied"] = rep.satisfied;
        return {j.dump(), false};
    }
    if (kind == "product-bound") {
        i64 D = args.snum("D");
        auto [cn, cd] = parse_ratio(args.str("c"));
        auto rep = char_product_bound(D, args.num("y"), cn, cd, args.num("E"), cfg);
        json j;
        j["D"] = rep.D;
        j["y"] = json_u64(rep.y);
        j["E"] = json_u64(rep.E);
        j["c"] = std::to_string(rep.c_num) + "/" + std::to_string(rep.c_den);
        j["lhs_base"] = rat_str(rep.lhs_base);
        j["lhs_approx"] = std::pow((double)rep.lhs_base.convert_to<double>(),
                                   (double)rep.c_num / rep.c_den);
        j["rhs"] = rat_str(rep.rhs);
        j["rhs_approx"] = rep.rhs.convert_to<double>();
        j["satisfied"] = rep.satisfied;
        j["below_floor"] = rep.below_floor;
        return {j.dump(), false};
    }
    if (kind == "logsum") {
        u64 w = args.num("w");
        unsigned t = (unsigned)args.num("t");
        long double v = divisor_logsum(w, t, cfg);
        json j;
        j["w"] = json_u64(w);
        j["t"] = t;
        j["value"] = (double)v;
        return {j.dump(), false};
    }
    if (kind == "grid") {
        auto rows = char_grid(args.str("kind"), cfg.seed);
        if (format == "json") {
            json arr = json::array();
            for (auto& r : rows) {
                json j;
                j["kind"] = r.kind;
                j["params"] = r.params;
                j["value"] = r.value;
                j["bound"] = r.bound;
                j["satisfied"] = r.satisfied;
                arr.push_back(std::move(j));
            }
            json top;
            top["rows"] = std::move(arr);
            return {top.dump(), false};
        }
        return {grid_csv(rows), true};
    }
    throw usage_error("unknown char kind '" + kind + "'");
}

Output run_profile(const std::string& kind, Args& args, const Config& cfg,
                   const std::string& format) {
    if (kind == "windows") {
        auto rep = normality_report(args.num("x"), args.num("y"), args.num_or("N", 10), cfg);
        if (format == "csv") return {profile_csv(rep), true};
        json j;
        j["x"] = json_u64(rep.x);
        j["y"] = json_u64(rep.y);
        j["N"] = json_u64(rep.N);
        j["budget"] = json_u64(rep.budget);
        j["tested"] = json_u64(rep.tested);
        j["failing"] = json_u64(rep.failing);
        json ws = json::array();
        for (auto& w : rep.windows) {
            json x;
            x["j"] = w.j;
            x["lo"] = (double)w.lo;
            x["hi"] = w.hi == 0.0L ? json() : json((double)w.hi);
            x["mass"] = json_u64(w.mass);
            x["violations"] = json_u64(w.violations);
            json h;
            for (auto& [load, freq] : w.hist) h[std::to_string(load)] = json_u64(freq);
            x["hist"] = std::move(h);
            ws.push_back(std::move(x));
        }
        j["windows"] = std::move(ws);
        return {j.dump(), false};
    }
    if (kind == "smooth") {
        u64 x = args.num("x"), y = args.num("y");
        unsigned mult = (unsigned)args.num_or("multiplier", 10);
        u64 c = smooth_count(x, y, mult, cfg);
        json j;
        j["x"] = json_u64(x);
        j["y"] = json_u64(y);
        j["multiplier"] = mult;
        j["count"] = json_u64(c);
        return {j.dump(), false};
    }
    if (kind == "omega") {
        auto st = omega_stats(args.num("x"), cfg);
        json j;
        j["x"] = json_u64(st.x);
        j["mean_omega_n"] = st.mean_omega_n;
        j["mean_omega_p_minus_1"] = st.mean_omega_p_minus_1;
        j["loglog_x"] = st.loglog_x;
        return {j.dump(), false};
    }
    throw usage_error("unknown profile kind '" + kind + "'");
}

Output run(const std::string& cmd, Args& args, const Config& cfg,
           const std::string& format) {
    if (cmd == "invphi") {
        u64 m = args.num("m");
        auto pre = preimages(m, cfg.seed);
        json j;
        j["m"] = json_u64(m);
        j["A"] = json_u64(pre.size());
        json arr = json::array();
        for (u64 v : pre) arr.push_back(json_u64(v));
        j["preimages"] = std::move(arr);
        return {j.dump(), false};
    }
    if (cmd == "mult") {
        u64 m = args.num("m");
        json j;
        j["m"] = json_u64(m);
        j["A"] = json_u64(multiplicity(m, cfg.seed));
        return {j.dump(), false};
    }
    if (cmd == "census") {
        auto t = census(args.num("x"), cfg);
        json j;
        j["x"] = json_u64(t.x);
        j["total"] = json_u64(t.total);
        json c;
        for (auto& [k, v] : t.counts) c[std::to_string(k)] = json_u64(v);
        j["counts"] = std::move(c);
        return {j.dump(), false};
    }
    if (cmd == "smallest") {
        u64 k = args.num("k"), limit = args.num("limit");
        auto m = smallest_with_multiplicity(k, limit, cfg);
        json j;
        j["k"] = json_u64(k);
        j["limit"] = json_u64(limit);
        j["m"] = m ? json_u64(*m) : json();
        return {j.dump(), false};
    }
    if (cmd == "ratio") {
        auto rows = ratio_table(args.num_list("points"), cfg);
        if (format == "csv") return {ratio_csv(rows), true};
        json arr = json::array();
        for (auto& r : rows) {
            json x;
            x["x"] = json_u64(r.x);
            x["k"] = json_u64(r.k);
            x["V_k"] = json_u64(r.v_k);
            x["V"] = json_u64(r.v);
            x["ratio"] = r.ratio;
            arr.push_back(std::move(x));
        }
        json top;
        top["rows"] = std::move(arr);
        return {top.dump(), false};
    }
    if (cmd == "construct") {
        auto cert = triple_step(args.num("m"), args.num("k"),
                                args.num_or("h-limit", 100'000), cfg);
        return {cert_json(cert).dump(), false};
    }
    if (cmd == "part1") {
        size_t first = (size_t)args.num_or("first", 0);
        auto res = pair_step_search(args.num("m"), args.num("k"), args.num("q-limit"),
                                    first == 0 ? SIZE_MAX : first, cfg);
        json j;
        json certs = json::array();
        for (auto& c : res.certificates) certs.push_back(cert_json(c));
        j["certificates"] = std::move(certs);
        json exc = json::array();
        for (auto& [q, a] : res.exceptions)
            exc.push_back(json::array({json_u64(q), json_u64(a)}));
        j["exceptions"] = std::move(exc);
        j["scanned"] = json_u64(res.scanned);
        return {j.dump(), false};
    }
    if (cmd == "trivial") {
        auto t = trivial_solutions(args.num("m"), args.num("p"), args.num("q"), cfg);
        json j;
        j["m"] = json_u64(t.m);
        j["p"] = json_u64(t.p);
        j["q"] = json_u64(t.q);
        j["target"] = json_u64(t.target);
        json arr = json::array();
        for (u64 v : t.solutions) arr.push_back(json_u64(v));
        j["solutions"] = std::move(arr);
        return {j.dump(), false};
    }
    if (cmd == "s-count" || cmd == "chen-count") {
        u64 m = args.num("m"), x = args.num("x");
        auto rep = cmd == "s-count" ? s_m_count(m, x, cfg) : chen_count(m, x, cfg);
        json j;
        j["m"] = json_u64(rep.m);
        j["x"] = json_u64(rep.x);
        j["count"] = json_u64(rep.count);
        j["normalized"] = rep.normalized;
        return {j.dump(), false};
    }
    if (cmd == "pair-filter") {
        auto rep = pair_filter(args.num("m"), args.num("x"),
                               (unsigned)args.num_or("C", cfg.pair_filter_C), cfg);
        json j;
        j["m"] = json_u64(rep.m);
        j["x"] = json_u64(rep.x);
        j["C"] = rep.C;
        j["N"] = json_u64(rep.N);
        j["budget"] = json_u64(rep.budget);
        j["pairs_tested"] = json_u64(rep.pairs_tested);
        j["survivors"] = json_u64(rep.survivors);
        json f;
        for (auto& [tag, n] : rep.failures) f[tag] = json_u64(n);
        j["failures"] = std::move(f);
        return {j.dump(), false};
    }
    if (cmd == "audit") {
        auto rep = exponent_audit((unsigned)args.num_or("C", cfg.pair_filter_C));
        json j;
        j["C"] = rep.C;
        j["N"] = json_u64(rep.N);
        j["delta"] = rep.delta;
        json rows = json::array();
        for (auto& r : rep.rows) {
            json x;
            x["M"] = json_u64(r.M);
            x["Y"] = (double)r.Y;
            rows.push_back(std::move(x));
        }
        j["rows"] = std::move(rows);
        j["worst_M"] = json_u64(rep.worst_M);
        j["worst_Y"] = (double)rep.worst_Y;
        j["pass"] = rep.pass;
        if (args.has("toy-n") || args.has("toy-m")) {
            auto viol = toy_inequality_violations(args.num("toy-n"), args.num("toy-m"));
            json vs = json::array();
            for (auto& v : viol) {
                json x;
                x["M"] = json_u64(v.M);
                x["seq"] = v.seq;
                x["lhs"] = (double)v.lhs;
                x["rhs"] = (double)v.rhs;
                vs.push_back(std::move(x));
            }
            j["toy_violations"] = std::move(vs);
        }
        return {j.dump(), false};
    }
    if (cmd == "verify") {
        std::ifstream in(args.str("in"), std::ios::binary);
        if (!in) throw malformed_certificate("cannot open certificate file");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        if (text.empty()) throw malformed_certificate("certificate file is empty");
        auto cert = certificate_from_json(text);
        verify_certificate(cert, cfg);
        json j;
        j["valid"] = true;
        j["product"] = json_u64(cert.product);
        j["verified_multiplicity"] = json_u64(cert.verified_multiplicity);
        return {j.dump(), false};
    }
    throw usage_error("unknown subcommand '" + cmd + "'");
}

int fail(const char* type, const std::string& msg, int code, bool with_usage = false) {
    json j;
    j["error"] = {{"type", type}, {"message", msg}};
    std::cerr << j.dump() << "\n";
    if (with_usage) std::cerr << USAGE;
    return code;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) return fail("usage", "no subcommand given", 64, true);
    std::string cmd = argv[1];
    int flag_start = 2;
    std::string sub;
    if (cmd == "char" || cmd == "profile") {
        if (argc < 3 || std::string(argv[2]).rfind("--", 0) == 0)
            return fail("usage", cmd + " needs a kind argument", 64, true);
        sub = argv[2];
        flag_start = 3;
    }
    try {
        Args args(argc, argv, flag_start);
        Config cfg = default_config();
        cfg.seed = args.num_or("seed", cfg.seed);
        cfg.memory_budget_mb = args.num_or("memory-mb", cfg.memory_budget_mb);
        cfg.threads = (unsigned)args.num_or("threads", cfg.threads);
        cfg.y_floor = args.num_or("y-floor", cfg.y_floor);
        // grid sweeps are tabular by nature and default to CSV
        std::string default_format = (cmd == "char" && sub == "grid") ? "csv" : "json";
        std::string format = args.str_or("format", default_format);
        if (format != "json" && format != "csv")
            throw usage_error("--format must be json or csv");
        std::string out_path = args.str_or("out", "");

        Output out;
        if (cmd == "char") out = run_char(sub, args, cfg, format);
        else if (cmd == "profile") out = run_profile(sub, args, cfg, format);
        else out = run(cmd, args, cfg, format);
        args.finish();
        if (format == "csv" && !out.raw)
            throw usage_error("--format csv is not available for subcommand '" + cmd + "'");

        std::string text = out.raw ? out.text : out.text + "\n";
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) return fail("precondition", "cannot write to " + out_path, 2);
            f << text;
        }
        return 0;
    } catch (const usage_error& e) {
        return fail("usage", e.what(), 64, true);
    } catch (const malformed_certificate& e) {
        return fail("malformed", e.what(), 65);
    } catch (const overflow_error& e) {
        return fail("overflow", e.what(), 2);
    } catch (const precondition_error& e) {
        return fail("precondition", e.what(), 2);
    } catch (const budget_error& e) {
        return fail("budget", e.what(), 3);
    } catch (const verification_error& e) {
        return fail("verification", e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 70);
    }
}
