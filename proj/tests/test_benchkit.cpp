#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "todolist/bench/csv.hpp"
#include "todolist/bench/runner.hpp"
#include "todolist/bench/workload.hpp"
#include "todolist/dictionary.hpp"

namespace tb = todolist::bench;

namespace {

std::string csv_without_wall(std::vector<tb::BenchRecord> rows) {
    for (auto& r : rows) r.wall_ns = 0;
    std::ostringstream os;
    tb::write_csv(os, rows);
    return os.str();
}

const tb::BenchRecord& phase(const std::vector<tb::BenchRecord>& rows, const std::string& name) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.phase == name; });
    REQUIRE(it != rows.end());
    return *it;
}

}  // namespace

TEST_CASE("rng follows the standard mt19937_64 stream") {
    tb::Rng rng(5489);
    std::uint64_t v = 0;
    for (int i = 0; i < 10'000; ++i) v = rng.next();
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("bounded draws stay in range and hit both ends") {
    tb::Rng rng(3);
    bool lo = false;
    bool hi = false;
    for (int i = 0; i < 10'000; ++i) {
        const auto x = rng.uniform(-2, 5);
        REQUIRE(x >= -2);
        REQUIRE(x <= 5);
        lo |= x == -2;
        hi |= x == 5;
    }
    CHECK(lo);
    CHECK(hi);
    CHECK_THROWS_AS(rng.uniform(3, 2), std::invalid_argument);
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("workload domains are exactly the stated sets") {
    const std::size_t n = 2000;
    const auto w = tb::make_workload({11, n, 5});
    REQUIRE(w.inserts.size() == n);
    REQUIRE(w.searches.size() == 5 * n);
    const auto nn = static_cast<std::int64_t>(n);
    for (auto k : w.inserts) {
        REQUIRE(k % 5 == 0);
        REQUIRE(k >= 0);
        REQUIRE(k <= 5 * (nn - 1));
    }
    std::int64_t lo = INT64_MAX;
    std::int64_t hi = INT64_MIN;
    for (auto q : w.searches) {
        REQUIRE(q >= -2);
        REQUIRE(q <= 5 * nn + 3);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    CHECK(lo == -2);
    CHECK(hi == 5 * nn + 3);
}

TEST_CASE("same seed gives the same workload") {
    const auto a = tb::make_workload({7, 1000, 5});
    const auto b = tb::make_workload({7, 1000, 5});
    const auto c = tb::make_workload({8, 1000, 5});
    CHECK(a.inserts == b.inserts);
    CHECK(a.searches == b.searches);
    CHECK(a.inserts != c.inserts);
}

TEST_CASE("access patterns parse and generate") {
    using K = tb::AccessPattern::Kind;
    CHECK(tb::parse_pattern("uniform").kind == K::uniform);
    CHECK(tb::parse_pattern("repeat-burst").kind == K::repeat_burst);
    CHECK(tb::parse_pattern("zipf").zipf_s == 1.0);
    CHECK(tb::parse_pattern("zipf(1.5)").zipf_s == 1.5);
    CHECK(tb::parse_pattern("windowed(32)").window == 32);
    CHECK(tb::to_string(tb::parse_pattern("windowed(32)")) == "windowed(32)");
    for (const char* bad : {"", "normal", "zipf(", "zipf(x)", "windowed(0)", "zipf(-1)", "uniform(3)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(tb::parse_pattern(bad), std::invalid_argument);
    }

    const std::size_t n = 1000;
    for (const char* p : {"uniform", "zipf(1.2)", "windowed(16)", "repeat-burst"}) {
        const auto seq = tb::make_access_sequence(n, tb::parse_pattern(p), 5000, 4);
        REQUIRE(seq.size() == 5000);
        for (auto x : seq) {
            REQUIRE(x >= 1);
            REQUIRE(x <= static_cast<std::int64_t>(n));
        }
        CHECK(seq == tb::make_access_sequence(n, tb::parse_pattern(p), 5000, 4));
    }
    const auto burst = tb::make_access_sequence(n, tb::parse_pattern("repeat-burst"), 1000, 2);
    for (std::size_t i = 0; i + 1 < burst.size(); i += 2) REQUIRE(burst[i] == burst[i + 1]);

    const auto win = tb::make_access_sequence(n, tb::parse_pattern("windowed(16)"), 1600, 2);
    for (std::size_t b = 0; b < win.size(); b += 16) {
        std::set<std::int64_t> distinct(win.begin() + static_cast<std::ptrdiff_t>(b),
                                        win.begin() + static_cast<std::ptrdiff_t>(b + 16));
        REQUIRE(distinct.size() <= 16);
    }
}

TEST_CASE("trial records conserve per-operation counters") {
    for (const char* id : {"todolist", "todolist-linked", "skiplist", "skiplist-cached", "sorted-array", "balanced-tree"}) {
        CAPTURE(id);
        std::vector<todolist::OpStats> per_op;
        const auto rows = tb::run_trial(id, 0.2, 3000, 9, &per_op);
        REQUIRE(rows.size() == 2);
        todolist::OpStats sum;
        for (const auto& s : per_op) sum += s;
        todolist::OpStats recorded;
        for (const auto& r : rows) recorded += r.stats;
        CHECK(sum.comparisons == recorded.comparisons);
        CHECK(sum.node_visits == recorded.node_visits);
        CHECK(sum.rebuild_touches == recorded.rebuild_touches);
        CHECK(sum.global_rebuilds == recorded.global_rebuilds);

        const auto w = tb::make_workload({9, 3000, 5});
        const std::set<std::int64_t> distinct(w.inserts.begin(), w.inserts.end());
        CHECK(rows[0].n_distinct == distinct.size());
        CHECK(rows[1].n_distinct == distinct.size());
        CHECK(rows[1].ops == 15'000);
        CHECK(rows[0].phase == (std::string(id) == "sorted-array" || std::string(id) == "balanced-tree" ? "build" : "insert"));
        CHECK(rows[0].epsilon.has_value() == todolist::uses_epsilon(id));
    }
}

TEST_CASE("csv header and determinism") {
    CHECK(tb::kCsvHeader ==
          "structure,epsilon,n,n_distinct,phase,ops,comparisons,node_visits,rebuild_touches,global_rebuilds,seed,wall_ns");
    tb::RaceConfig cfg;
    cfg.n_from = 2000;
    cfg.n_to = 4000;
    cfg.n_step = 2000;
    cfg.structures = {"todolist", "skiplist", "balanced-tree"};
    cfg.epsilons = {0.2, 0.35};
    cfg.seed = 3;
    const auto a = tb::run_race(cfg);
    const auto b = tb::run_race(cfg);
    CHECK(a.size() == 2 * (2 + 1 + 1) * 2);
    CHECK(csv_without_wall(a) == csv_without_wall(b));

    std::istringstream lines(csv_without_wall(a));
    std::string line;
    std::getline(lines, line);
    CHECK(line == tb::kCsvHeader);
    std::getline(lines, line);
    CHECK(line.rfind("todolist,0.2,2000,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
    const std::string tree = tb::format_record(phase(std::vector<tb::BenchRecord>(a.begin() + 6, a.begin() + 8), "build"));
    CHECK(tree.rfind("balanced-tree,,2000,", 0) == 0);
}

TEST_CASE("race rejects unknown structures before running") {
    tb::RaceConfig cfg;
    cfg.structures = {"todolist", "red-black"};
    try {
        tb::run_race(cfg);
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("sorted-array") != std::string::npos);
    }
    cfg.structures = {"todolist"};
    cfg.n_from = 10;
    cfg.n_to = 5;
    CHECK_THROWS_AS(tb::run_race(cfg), std::invalid_argument);
}

TEST_CASE("epsilon grid") {
    const auto g = tb::epsilon_grid(0.02, 0.68, 0.01);
    CHECK(g.size() == 67);
    CHECK(g.front() == 0.02);
    CHECK(g.back() == doctest::Approx(0.68));
    CHECK(tb::epsilon_grid(0.05, 0.6, 0.05).size() == 12);
    CHECK_THROWS_AS(tb::epsilon_grid(0.0, 0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(tb::epsilon_grid(0.5, 0.4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(tb::epsilon_grid(0.1, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(tb::epsilon_grid(0.1, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("sweep at n = 10^5: touches fall and comparisons rise with eps") {
    tb::SweepConfig cfg;
    cfg.n = 100'000;
    cfg.eps_from = 0.05;
    cfg.eps_to = 0.6;
    cfg.eps_step = 0.05;
    cfg.seed = 1;
    const auto rows = tb::run_epsilon_sweep(cfg);
    std::vector<double> eps;
    std::vector<double> touches;
    double cmp_01 = 0;
    double cmp_06 = 0;
    for (const auto& r : rows) {
        if (r.phase == "insert" && *r.epsilon <= 0.4 + 1e-9) {
            eps.push_back(*r.epsilon);
            touches.push_back(static_cast<double>(r.stats.rebuild_touches) / static_cast<double>(r.ops));
        }
        if (r.phase == "search") {
            const double mean = static_cast<double>(r.stats.comparisons) / static_cast<double>(r.ops);
            if (std::abs(*r.epsilon - 0.1) < 1e-9) cmp_01 = mean;
            if (std::abs(*r.epsilon - 0.6) < 1e-9) cmp_06 = mean;
        }
    }
    REQUIRE(eps.size() == 8);
    const double rho = oracle::spearman(eps, touches);
    CAPTURE(rho);
    CHECK(rho < -0.9);
    CHECK(cmp_01 < cmp_06);
}

TEST_CASE("sorted array stays within 1.1 log n per search") {
    tb::RaceConfig cfg;
    cfg.n_from = 25'000;
    cfg.n_to = 100'000;
    cfg.n_step = 75'000;
    cfg.structures = {"sorted-array"};
    for (const auto& r : tb::run_race(cfg)) {
        if (r.phase != "search") continue;
        const double ratio = static_cast<double>(r.stats.comparisons) / static_cast<double>(r.ops) /
                             std::log2(static_cast<double>(r.n_distinct));
        CHECK(ratio <= 1.1);
    }
}

TEST_CASE("working-set runs") {
    tb::WorkingSetConfig cfg;
    cfg.n = 100'000;
    cfg.epsilon = 0.2;
    cfg.length = 20'000;
    cfg.seed = 5;

    cfg.pattern = tb::parse_pattern("uniform");
    const auto uni = tb::run_working_set(cfg);
    CHECK(uni.violations == 0);

    cfg.pattern = tb::parse_pattern("windowed(16)");
    const auto win = tb::run_working_set(cfg);
    CHECK(win.violations == 0);
    CAPTURE(uni.mean_comparisons);
    CAPTURE(win.mean_comparisons);
    CHECK(2.0 * win.mean_comparisons <= uni.mean_comparisons);

    cfg.pattern = tb::parse_pattern("repeat-burst");
    const auto burst = tb::run_working_set(cfg);
    CHECK(burst.violations == 0);
    for (std::size_t i = 1; i < burst.accesses.size(); i += 2) {
        REQUIRE(burst.accesses[i].w == 1);
        REQUIRE(burst.accesses[i].comparisons <= 5 + 4);
    }

    std::ostringstream os;
    tb::write_working_set_csv(os, win);
    std::string first;
    std::getline(std::istringstream(os.str()) >> std::ws, first);
    CHECK(first == tb::kWorkingSetCsvHeader);
}

TEST_CASE("working-set runs validate structure when asked") {
    tb::WorkingSetConfig cfg;
    cfg.n = 3000;
    cfg.length = 3000;
    cfg.validate_every = 50;
    cfg.pattern = tb::parse_pattern("zipf(1.0)");
    CHECK_NOTHROW(tb::run_working_set(cfg));
}

TEST_CASE("differential oracle check") {
    SUBCASE("todolist passes 10^5 ops") {
        tb::OracleConfig cfg;
        cfg.structure = "todolist";
        cfg.ops = 100'000;
        cfg.seed = 77;
        const auto rep = tb::run_oracle_check(cfg);
        CHECK(rep.passed());
        CHECK(rep.ops_run == 100'000);
        CHECK(rep.failing_prefix() == 0);
    }
    SUBCASE("static structures answer searches over the inserted keys") {
        tb::OracleConfig cfg;
        cfg.structure = "balanced-tree";
        cfg.ops = 20'000;
        CHECK(tb::run_oracle_check(cfg).passed());
    }
    SUBCASE("an engine without delete repair is caught") {
        tb::OracleConfig cfg;
        cfg.inject_fault = true;
        cfg.ops = 100'000;
        cfg.key_hi = 400;
        const auto rep = tb::run_oracle_check(cfg);
        REQUIRE_FALSE(rep.passed());
        CHECK(rep.failing_prefix() > 0);
        CHECK(rep.failing_prefix() <= 100'000);
        CHECK(rep.divergence->expected != rep.divergence->got);
    }
    SUBCASE("packed and reference engines produce identical streams") {
        const auto rep = tb::run_engine_cross_check(0.3, 50'000, 4);
        CHECK(rep.passed());
    }
}
