// todolist-bench: CSV workloads for todolists and the baseline structures.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "todolist/bench/csv.hpp"
#include "todolist/bench/runner.hpp"
#include "todolist/dictionary.hpp"

namespace tb = todolist::bench;

namespace {

struct Options {
    std::size_t n = 100'000;
    std::vector<double> eps;
    double eps_from = 0.05;
    double eps_to = 0.6;
    double eps_step = 0.05;
    std::size_t n_from = 25'000;
    std::size_t n_to = 100'000;
    std::size_t n_step = 25'000;
    std::string structures;
    std::uint64_t seed = 1;
    std::string out;
    std::string pattern = "uniform";
    std::size_t length = 10'000;
    bool paper_scale = false;
};

std::vector<std::string> split_ids(const std::string& s) {
    std::vector<std::string> ids;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) ids.push_back(item);
    }
    return ids;
}

/// Writes to --out when given, otherwise to stdout.
template <typename Fn>
void emit(const Options& o, Fn&& write) {
    if (o.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open " + o.out);
    write(f);
}

int run_sweep(Options o, const CLI::App& sub) {
    if (o.paper_scale) {
        if (!sub.count("--n")) o.n = 1'000'000;
        if (!sub.count("--eps-from")) o.eps_from = 0.02;
        if (!sub.count("--eps-to")) o.eps_to = 0.68;
        if (!sub.count("--eps-step")) o.eps_step = 0.01;
    }
    tb::SweepConfig cfg;
    cfg.n = o.n;
    cfg.eps_from = o.eps_from;
    cfg.eps_to = o.eps_to;
    cfg.eps_step = o.eps_step;
    cfg.seed = o.seed;
    if (!o.structures.empty()) cfg.structure = o.structures;
    auto rows = tb::run_epsilon_sweep(cfg);
    emit(o, [&](std::ostream& os) { tb::write_csv(os, rows); });
    return 0;
}

int run_race(Options o, const CLI::App& sub) {
    if (o.paper_scale) {
        if (!sub.count("--n-to")) o.n_to = 2'000'000;
    }
    tb::RaceConfig cfg;
    cfg.n_from = o.n_from;
    cfg.n_to = o.n_to;
    cfg.n_step = o.n_step;
    cfg.seed = o.seed;
    if (!o.structures.empty()) cfg.structures = split_ids(o.structures);
    if (!o.eps.empty()) cfg.epsilons = o.eps;
    auto rows = tb::run_race(cfg);
    tb::sort_records(rows);
    emit(o, [&](std::ostream& os) { tb::write_csv(os, rows); });
    return 0;
}

int run_wset(Options o, const CLI::App& sub) {
    tb::WorkingSetConfig cfg;
    cfg.n = sub.count("--n") ? o.n : (o.paper_scale ? 1'000'000 : 10'000);
    cfg.epsilon = o.eps.empty() ? 0.2 : o.eps.front();
    cfg.pattern = tb::parse_pattern(o.pattern);
    cfg.length = o.length;
    cfg.seed = o.seed;
    const auto res = tb::run_working_set(cfg);
    emit(o, [&](std::ostream& os) { tb::write_working_set_csv(os, res); });
    std::cerr << "wset " << tb::to_string(cfg.pattern) << " n=" << cfg.n << " eps=" << cfg.epsilon
              << " mean_comparisons=" << res.mean_comparisons << " violations=" << res.violations << "\n";
    return res.violations == 0 ? 0 : 3;
}

int run_oracle(Options o, const CLI::App& sub) {
    const auto ids = o.structures.empty() ? std::vector<std::string>{"todolist"} : split_ids(o.structures);
    const std::size_t ops = sub.count("--n") ? o.n : 100'000;
    const double eps = o.eps.empty() ? 0.2 : o.eps.front();
    int status = 0;
    for (const auto& id : ids) {
        tb::OracleConfig cfg;
        cfg.structure = id;
        cfg.epsilon = eps;
        cfg.ops = ops;
        cfg.seed = o.seed;
        const auto rep = tb::run_oracle_check(cfg);
        if (rep.passed()) {
            std::cout << id << ": pass (" << rep.ops_run << " ops)\n";
        } else {
            const auto& d = *rep.divergence;
            std::cout << id << ": FAIL at op " << d.op_index << " (" << tb::to_string(d.op.kind) << " " << d.op.key
                      << "), prefix length " << rep.failing_prefix() << "\n  expected: " << d.expected
                      << "\n  got:      " << d.got << "\n";
            status = 3;
        }
    }
    const auto cross = tb::run_engine_cross_check(eps, ops, o.seed);
    if (cross.passed()) {
        std::cout << cross.structure << ": identical (" << cross.ops_run << " ops)\n";
    } else {
        std::cout << cross.structure << ": FAIL at op " << cross.divergence->op_index << "\n";
        status = 3;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workloads and differential checks for todolists and baseline dictionaries"};
    app.require_subcommand(1);
    Options o;

    std::string ids_help = "Comma-separated structure ids:";
    for (const auto& id : todolist::structure_ids()) ids_help += " " + id;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Workload seed");
        sub->add_option("--out", o.out, "Write CSV here instead of stdout");
        sub->add_flag("--paper-scale", o.paper_scale, "Use the large published parameter ranges");
    };

    auto* sweep = app.add_subcommand("sweep", "Epsilon sweep: one insert and one search record per epsilon");
    sweep->add_option("--n", o.n, "Insert count");
    sweep->add_option("--eps-from", o.eps_from);
    sweep->add_option("--eps-to", o.eps_to);
    sweep->add_option("--eps-step", o.eps_step);
    sweep->add_option("--structures", o.structures, "todolist or todolist-linked");
    add_common(sweep);

    auto* race = app.add_subcommand("race", "Structure race over a range of n");
    race->add_option("--n-from", o.n_from);
    race->add_option("--n-to", o.n_to);
    race->add_option("--n-step", o.n_step);
    race->add_option("--structures", o.structures, ids_help);
    race->add_option("--eps", o.eps, "Epsilon values for the todolist variants")->delimiter(',');
    add_common(race);

    auto* wset = app.add_subcommand("wset", "Working-set workload with per-access trace");
    wset->add_option("--n", o.n, "Universe size");
    wset->add_option("--eps", o.eps, "Epsilon")->delimiter(',');
    wset->add_option("--pattern", o.pattern, "uniform, zipf(s), windowed(k) or repeat-burst");
    wset->add_option("--length", o.length, "Number of accesses");
    add_common(wset);

    auto* oracle = app.add_subcommand("oracle", "Differential check against a sorted-set model");
    oracle->add_option("--structures", o.structures, ids_help);
    oracle->add_option("--n", o.n, "Number of mixed operations");
    oracle->add_option("--eps", o.eps, "Epsilon for the todolist variants")->delimiter(',');
    add_common(oracle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep(o, *sweep);
        if (race->parsed()) return run_race(o, *race);
        if (wset->parsed()) return run_wset(o, *wset);
        if (oracle->parsed()) return run_oracle(o, *oracle);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
