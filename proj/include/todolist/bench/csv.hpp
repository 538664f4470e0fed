#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "todolist/bench/runner.hpp"

namespace todolist::bench {

inline constexpr std::string_view kCsvHeader =
    "structure,epsilon,n,n_distinct,phase,ops,comparisons,node_visits,rebuild_touches,global_rebuilds,seed,wall_ns";

inline constexpr std::string_view kWorkingSetCsvHeader = "t,key,w,found_level,comparisons,bound,rebuild_touches";

std::string format_record(const BenchRecord& r);
void write_csv(std::ostream& os, const std::vector<BenchRecord>& rows, bool header = true);

/// Sorts rows by (structure, epsilon, n), keeping phase order within a trial.
void sort_records(std::vector<BenchRecord>& rows);

void write_working_set_csv(std::ostream& os, const WorkingSetResult& res, bool header = true);

}  // namespace todolist::bench
