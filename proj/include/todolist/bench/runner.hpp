#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "todolist/bench/workload.hpp"
#include "todolist/stats.hpp"

namespace todolist::bench {

/// One CSV row: the totals for one phase of one trial.
struct BenchRecord {
    std::string structure;
    std::optional<double> epsilon;  // empty for structures without one
    std::size_t n = 0;
    std::size_t n_distinct = 0;
    std::string phase;  // "insert", "build" or "search"
    std::uint64_t ops = 0;
    OpStats stats;
    std::uint64_t seed = 0;
    std::uint64_t wall_ns = 0;  // informational only
};

/// Runs the standard workload for n against one structure: n inserts (or a
/// bulk build for static structures) followed by the search phase, which
/// asks for the successor of each probe. Returns one record per phase.
/// When `per_op` is given, the stats delta of every operation is appended.
std::vector<BenchRecord> run_trial(const std::string& structure, double epsilon, std::size_t n,
                                   std::uint64_t seed, std::vector<OpStats>* per_op = nullptr);

struct SweepConfig {
    std::size_t n = 100'000;
    double eps_from = 0.05;
    double eps_to = 0.6;
    double eps_step = 0.05;
    std::uint64_t seed = 1;
    std::string structure = "todolist";
};

/// The epsilon grid eps_from, eps_from + step, ... <= eps_to, rounded to
/// 1e-9 so accumulated steps print cleanly. Throws on an invalid range.
std::vector<double> epsilon_grid(double from, double to, double step);

/// One trial per epsilon, all on the same workload.
std::vector<BenchRecord> run_epsilon_sweep(const SweepConfig& cfg);

struct RaceConfig {
    std::size_t n_from = 25'000;
    std::size_t n_to = 100'000;
    std::size_t n_step = 25'000;
    std::vector<std::string> structures = {"todolist", "skiplist", "sorted-array"};
    std::vector<double> epsilons = {0.2};  // applied to the todolist variants
    std::uint64_t seed = 1;
};

/// Trials for every (n, structure, epsilon). Validates every structure id
/// before running anything.
std::vector<BenchRecord> run_race(const RaceConfig& cfg);

/// Per-access comparison budget for the working-set variant:
/// ceil(log w) + ceil(2 sqrt(ceil(log w))) + ceil(1/eps) + 4, logs base 2 - eps.
std::uint64_t working_set_bound(std::size_t w, double epsilon);

struct WorkingSetConfig {
    std::size_t n = 10'000;
    double epsilon = 0.2;
    AccessPattern pattern;
    std::size_t length = 10'000;
    std::uint64_t seed = 1;
    std::size_t validate_every = 0;  // 0 disables structural checks
};

struct WorkingSetAccess {
    std::size_t t = 0;
    std::int64_t key = 0;
    std::size_t w = 0;  // working-set number before the access
    int found_level = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t bound = 0;
    std::uint64_t rebuild_touches = 0;
};

struct WorkingSetResult {
    std::vector<WorkingSetAccess> accesses;
    std::size_t violations = 0;  // accesses over their bound
    double mean_comparisons = 0.0;
    OpStats stats;
};

/// Replays an access sequence on a working-set todolist, tracking w for
/// every access and checking the comparison budget.
WorkingSetResult run_working_set(const WorkingSetConfig& cfg);

struct Divergence {
    std::size_t op_index = 0;
    Op op{};
    std::string expected;
    std::string got;
};

struct OracleReport {
    std::string structure;
    std::size_t ops_run = 0;
    std::optional<Divergence> divergence;
    bool passed() const { return !divergence; }
    /// Length of the shortest failing prefix, or 0 on success.
    std::size_t failing_prefix() const { return divergence ? divergence->op_index + 1 : 0; }
};

struct OracleConfig {
    std::string structure = "todolist";
    double epsilon = 0.2;
    std::size_t ops = 100'000;
    std::uint64_t seed = 1;
    std::int64_t key_hi = 5'000;
    bool inject_fault = false;  // use the reference engine without delete repair
};

/// Replays mixed operations on the structure and on std::set and stops at
/// the first differing answer.
OracleReport run_oracle_check(const OracleConfig& cfg);

/// Replays mixed operations on the packed and reference engines, comparing
/// full search outcomes including comparison counts.
OracleReport run_engine_cross_check(double epsilon, std::size_t ops, std::uint64_t seed, std::int64_t key_hi = 5'000);

}  // namespace todolist::bench
