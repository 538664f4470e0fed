#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace todolist::bench {

/// std::mt19937_64 (whose stream the standard fixes) with bounded draws
/// defined here, so workloads are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [lo, hi] by rejection sampling.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

/// Insert keys are 5 * U[0, n-1], drawn n times with replacement; searches
/// draw 5n keys from U[-2, 5n+3].
struct WorkloadSpec {
    std::uint64_t seed = 1;
    std::size_t n = 100'000;
    std::size_t search_multiplier = 5;
};

struct Workload {
    std::vector<std::int64_t> inserts;
    std::vector<std::int64_t> searches;
};

Workload make_workload(const WorkloadSpec& spec);

enum class OpKind { insert, erase, search };

struct Op {
    OpKind kind;
    std::int64_t key;
};

std::string_view to_string(OpKind k);

/// Mixed operations for differential checks: keys in [0, key_hi], half
/// inserts, a quarter erases, a quarter searches.
std::vector<Op> make_mixed_ops(std::size_t count, std::int64_t key_hi, std::uint64_t seed);

/// Access-sequence shapes for the working-set variant.
struct AccessPattern {
    enum class Kind { uniform, zipf, windowed, repeat_burst };
    Kind kind = Kind::uniform;
    double zipf_s = 1.0;       // exponent for zipf
    std::size_t window = 16;   // width for windowed
};

/// Parses "uniform", "zipf", "zipf(s)", "windowed", "windowed(k)" or
/// "repeat-burst". Throws std::invalid_argument otherwise.
AccessPattern parse_pattern(std::string_view text);
std::string to_string(const AccessPattern& p);

/// `length` accesses over keys 1..n.
///  - uniform: independent uniform keys.
///  - zipf: rank r drawn with probability proportional to r^-s, ranks mapped
///    to keys through a seeded permutation.
///  - windowed: uniform within a window of k consecutive keys that slides by
///    one every k accesses.
///  - repeat-burst: uniform keys, each accessed twice in a row.
std::vector<std::int64_t> make_access_sequence(std::size_t n, const AccessPattern& p, std::size_t length,
                                               std::uint64_t seed);

}  // namespace todolist::bench
