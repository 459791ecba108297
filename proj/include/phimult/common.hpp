#pragma once
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace phimult {

using u8   = uint8_t;
using u32  = uint32_t;
using u64  = uint64_t;
using i64  = int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// domain violation on an operation's stated input contract
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// result or intermediate would leave the 64-bit working range
struct overflow_error : precondition_error {
    using precondition_error::precondition_error;
};

// a bounded search or resource allowance ran out before success
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a quantity that is proven to hold failed to hold: indicates a defect
struct verification_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct Config {
    u64 seed = 1;
    u64 memory_budget_mb = 2048;
    unsigned threads = 1;
    unsigned pair_filter_C = 8;
    u64 y_floor = 10;
};

inline Config default_config() {
    Config cfg;
    if (const char* e = std::getenv("PHIMULT_MEMORY_MB")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v > 0) cfg.memory_budget_mb = v;
    }
    return cfg;
}

inline void check_memory(u64 bytes, const Config& cfg, const char* what) {
    u64 budget = cfg.memory_budget_mb * 1024ull * 1024ull;
    if (bytes > budget)
        throw budget_error(std::string("memory budget exhausted: ") + what + " needs " +
                           std::to_string(bytes / (1024 * 1024) + 1) + " MiB, budget " +
                           std::to_string(cfg.memory_budget_mb) + " MiB");
}

// deterministic 64-bit mixer, used for seeding searches and test grids
inline u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 b, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// narrow a 128-bit value, or report which operation left 64-bit range
inline u64 checked_u64(u128 v, const char* what) {
    if (v > (u128)UINT64_MAX)
        throw overflow_error(std::string(what) + " exceeds 64-bit range");
    return (u64)v;
}

inline u64 checked_mul(u64 a, u64 b, const char* what) {
    return checked_u64((u128)a * b, what);
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) { s += char('0' + (unsigned)(v % 10)); v /= 10; }
    return std::string(s.rbegin(), s.rend());
}

} // namespace phimult
