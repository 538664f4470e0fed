#include "todolist/bench/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "todolist/dictionary.hpp"
#include "todolist/height_policy.hpp"
#include "todolist/linked_todolist.hpp"
#include "todolist/packed_todolist.hpp"
#include "todolist/working_set.hpp"
#include "todolist/working_todolist.hpp"

namespace todolist::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

std::string show(const std::optional<std::int64_t>& k) { return k ? std::to_string(*k) : "none"; }
std::string show(bool b) { return b ? "true" : "false"; }

std::string show(const SearchOutcome<std::int64_t>& o) {
    return "pred=" + show(o.predecessor_key) + " succ=" + show(o.successor_key) + " found=" + show(o.found) +
           " cmp=" + std::to_string(o.comparisons) + "+" + std::to_string(o.equality_comparisons);
}

void require_known(const std::string& id) {
    const auto& ids = structure_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) make_dictionary(id, 0.5, 0);  // throws with the list
}

}  // namespace

std::vector<BenchRecord> run_trial(const std::string& structure, double epsilon, std::size_t n, std::uint64_t seed,
                                   std::vector<OpStats>* per_op) {
    auto dict = make_dictionary(structure, epsilon, seed);
    const Workload w = make_workload(WorkloadSpec{seed, n, 5});

    BenchRecord base;
    base.structure = structure;
    if (uses_epsilon(structure)) base.epsilon = epsilon;
    base.n = n;
    base.seed = seed;

    std::vector<BenchRecord> out;

    // Insert or build phase.
    {
        BenchRecord rec = base;
        const OpStats before = dict->stats();
        const auto t0 = Clock::now();
        if (dict->is_static()) {
            rec.phase = "build";
            std::vector<std::int64_t> keys = w.inserts;
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
            dict->build(std::move(keys));
        } else {
            rec.phase = "insert";
            for (auto k : w.inserts) {
                if (per_op) {
                    const OpStats s0 = dict->stats();
                    dict->insert(k);
                    per_op->push_back(dict->stats() - s0);
                } else {
                    dict->insert(k);
                }
            }
        }
        rec.wall_ns = elapsed_ns(t0);
        rec.ops = w.inserts.size();
        rec.stats = dict->stats() - before;
        out.push_back(rec);
    }

    const std::size_t distinct = dict->size();
    out.front().n_distinct = distinct;

    // Search phase.
    {
        BenchRecord rec = base;
        rec.phase = "search";
        rec.n_distinct = distinct;
        const OpStats before = dict->stats();
        const auto t0 = Clock::now();
        std::int64_t sink = 0;
        for (auto q : w.searches) {
            if (per_op) {
                const OpStats s0 = dict->stats();
                sink += dict->successor(q).value_or(0);
                per_op->push_back(dict->stats() - s0);
            } else {
                sink += dict->successor(q).value_or(0);
            }
        }
        rec.wall_ns = elapsed_ns(t0);
        volatile std::int64_t keep = sink;  // stop the search loop being optimized out
        (void)keep;
        rec.ops = w.searches.size();
        rec.stats = dict->stats() - before;
        out.push_back(rec);
    }
    return out;
}

std::vector<double> epsilon_grid(double from, double to, double step) {
    if (!(from > 0.0 && from <= to && to < 1.0)) throw std::invalid_argument("need 0 < eps-from <= eps-to < 1");
    if (!(step > 0.0)) throw std::invalid_argument("eps-step must be positive");
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double e = std::round((from + static_cast<double>(k) * step) * 1e9) / 1e9;
        if (e > to + 1e-12) break;
        grid.push_back(e);
    }
    return grid;
}

std::vector<BenchRecord> run_epsilon_sweep(const SweepConfig& cfg) {
    if (!uses_epsilon(cfg.structure)) {
        require_known(cfg.structure);
        throw std::invalid_argument("sweep needs a todolist structure, got '" + cfg.structure + "'");
    }
    const auto grid = epsilon_grid(cfg.eps_from, cfg.eps_to, cfg.eps_step);
    std::vector<BenchRecord> out;
    for (double eps : grid) {
        auto recs = run_trial(cfg.structure, eps, cfg.n, cfg.seed);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

std::vector<BenchRecord> run_race(const RaceConfig& cfg) {
    if (cfg.structures.empty()) throw std::invalid_argument("no structures given");
    for (const auto& s : cfg.structures) require_known(s);
    if (cfg.n_from == 0 || cfg.n_from > cfg.n_to || cfg.n_step == 0) {
        throw std::invalid_argument("need 1 <= n-from <= n-to and n-step >= 1");
    }
    for (double e : cfg.epsilons) HeightPolicy check(e);

    std::vector<BenchRecord> out;
    for (std::size_t n = cfg.n_from; n <= cfg.n_to; n += cfg.n_step) {
        for (const auto& s : cfg.structures) {
            if (uses_epsilon(s)) {
                for (double e : cfg.epsilons) {
                    auto recs = run_trial(s, e, n, cfg.seed);
                    out.insert(out.end(), recs.begin(), recs.end());
                }
            } else {
                auto recs = run_trial(s, 0.5, n, cfg.seed);
                out.insert(out.end(), recs.begin(), recs.end());
            }
        }
    }
    return out;
}

std::uint64_t working_set_bound(std::size_t w, double epsilon) {
    const HeightPolicy p(epsilon);
    const auto lg = static_cast<std::uint64_t>(p.ceil_log(w));
    std::uint64_t root2 = 0;  // ceil(2 sqrt(lg)) = smallest r with r^2 >= 4 lg
    while (root2 * root2 < 4 * lg) ++root2;
    const auto inv = static_cast<std::uint64_t>(std::ceil(1.0 / epsilon - 1e-9));
    return lg + root2 + inv + 4;
}

WorkingSetResult run_working_set(const WorkingSetConfig& cfg) {
    WorkingTodoList wt(cfg.n, cfg.epsilon);
    const auto seq = make_access_sequence(cfg.n, cfg.pattern, cfg.length, cfg.seed);
    WorkingSetTracker tracker(cfg.n, seq.size());

    WorkingSetResult res;
    res.accesses.reserve(seq.size());
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        WorkingSetAccess a;
        a.t = t;
        a.key = seq[t];
        a.w = tracker.observe(seq[t]);
        const auto out = wt.access(seq[t]);
        a.found_level = out.found_level;
        a.comparisons = out.comparisons;
        a.bound = working_set_bound(a.w, cfg.epsilon);
        a.rebuild_touches = out.rebuild ? out.rebuild->touches : 0;
        if (a.comparisons > a.bound) ++res.violations;
        total += a.comparisons;
        res.accesses.push_back(a);
        if (cfg.validate_every && (t + 1) % cfg.validate_every == 0) {
            wt.validate();
            wt.validate_working_set(tracker.snapshot());
        }
    }
    res.mean_comparisons = seq.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(seq.size());
    res.stats = wt.stats();
    return res;
}

OracleReport run_oracle_check(const OracleConfig& cfg) {
    if (cfg.ops == 0) throw std::invalid_argument("oracle check needs at least one op");
    auto dict = cfg.inject_fault ? make_faulty_todolist(cfg.epsilon) : make_dictionary(cfg.structure, cfg.epsilon, cfg.seed);
    const auto ops = make_mixed_ops(cfg.ops, cfg.key_hi, cfg.seed);

    OracleReport rep;
    rep.structure = cfg.inject_fault ? "todolist-linked (faulty)" : cfg.structure;
    std::set<std::int64_t> model;

    if (dict->is_static()) {
        // Static structures hold every key the workload would insert.
        for (const auto& op : ops) {
            if (op.kind == OpKind::insert) model.insert(op.key);
        }
        dict->build(std::vector<std::int64_t>(model.begin(), model.end()));
    }

    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Op& op = ops[i];
        std::string expected;
        std::string got;
        if (op.kind == OpKind::insert && !dict->is_static()) {
            expected = show(model.insert(op.key).second);
            got = show(dict->insert(op.key));
        } else if (op.kind == OpKind::erase && !dict->is_static()) {
            expected = show(model.erase(op.key) == 1);
            got = show(dict->erase(op.key));
        } else if (op.kind == OpKind::search) {
            const auto it = model.lower_bound(op.key);
            std::optional<std::int64_t> succ;
            if (it != model.end()) succ = *it;
            std::optional<std::int64_t> pred;
            if (it != model.begin()) pred = *std::prev(it);
            const bool has = succ && *succ == op.key;
            const auto o = dict->find_predecessor(op.key);
            expected = "pred=" + show(pred) + " succ=" + show(succ) + " found=" + show(has);
            got = "pred=" + show(o.predecessor_key) + " succ=" + show(o.successor_key) + " found=" + show(o.found);
            if (expected == got && dict->successor(op.key) != succ) got = "successor()=" + show(dict->successor(op.key));
        }
        ++rep.ops_run;
        if (expected != got) {
            rep.divergence = Divergence{i, op, expected, got};
            return rep;
        }
    }
    if (dict->size() != model.size()) {
        rep.divergence = Divergence{ops.size() - 1, ops.back(), "size=" + std::to_string(model.size()),
                                    "size=" + std::to_string(dict->size())};
    }
    return rep;
}

OracleReport run_engine_cross_check(double epsilon, std::size_t ops_count, std::uint64_t seed, std::int64_t key_hi) {
    LinkedTodoList<std::int64_t> ref(epsilon);
    PackedTodoList<std::int64_t> packed(epsilon);
    const auto ops = make_mixed_ops(ops_count, key_hi, seed);

    OracleReport rep;
    rep.structure = "todolist vs todolist-linked";
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Op& op = ops[i];
        std::string expected;
        std::string got;
        switch (op.kind) {
            case OpKind::insert:
                expected = show(ref.insert(op.key));
                got = show(packed.insert(op.key));
                break;
            case OpKind::erase:
                expected = show(ref.erase(op.key));
                got = show(packed.erase(op.key));
                break;
            case OpKind::search:
                expected = show(ref.find_predecessor(op.key));
                got = show(packed.find_predecessor(op.key));
                break;
        }
        if (expected == got && ref.height() != packed.height()) {
            expected = "height=" + std::to_string(ref.height());
            got = "height=" + std::to_string(packed.height());
        }
        ++rep.ops_run;
        if (expected != got) {
            rep.divergence = Divergence{i, op, expected, got};
            return rep;
        }
    }
    return rep;
}

}  // namespace todolist::bench
