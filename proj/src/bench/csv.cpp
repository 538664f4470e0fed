#include "todolist/bench/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace todolist::bench {

std::string format_record(const BenchRecord& r) {
    std::string eps;
    if (r.epsilon) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", *r.epsilon);
        eps = buf;
    }
    std::string out;
    out.reserve(128);
    out += r.structure;
    out += ',';
    out += eps;
    for (auto v : {static_cast<std::uint64_t>(r.n), static_cast<std::uint64_t>(r.n_distinct)}) {
        out += ',';
        out += std::to_string(v);
    }
    out += ',';
    out += r.phase;
    for (auto v : {r.ops, r.stats.comparisons, r.stats.node_visits, r.stats.rebuild_touches,
                   r.stats.global_rebuilds, r.seed, r.wall_ns}) {
        out += ',';
        out += std::to_string(v);
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& rows, bool header) {
    if (header) os << kCsvHeader << '\n';
    for (const auto& r : rows) os << format_record(r) << '\n';
}

void sort_records(std::vector<BenchRecord>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRecord& a, const BenchRecord& b) {
        const double ea = a.epsilon.value_or(-1.0);
        const double eb = b.epsilon.value_or(-1.0);
        if (a.structure != b.structure) return a.structure < b.structure;
        if (ea != eb) return ea < eb;
        return a.n < b.n;
    });
}

void write_working_set_csv(std::ostream& os, const WorkingSetResult& res, bool header) {
    if (header) os << kWorkingSetCsvHeader << '\n';
    for (const auto& a : res.accesses) {
        os << a.t << ',' << a.key << ',' << a.w << ',' << a.found_level << ',' << a.comparisons << ',' << a.bound
           << ',' << a.rebuild_touches << '\n';
    }
}

}  // namespace todolist::bench
