#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "todolist/bench/csv.hpp"
#include "todolist/bench/runner.hpp"
#include "todolist/linked_todolist.hpp"
#include "todolist/packed_todolist.hpp"
#include "todolist/working_todolist.hpp"

namespace py = pybind11;
namespace tb = todolist::bench;

namespace {

using Key = std::int64_t;

template <typename List>
void bind_todolist(py::module_& m, const char* name, const char* doc) {
    py::class_<List>(m, name, doc)
        .def(py::init<double>(), py::arg("epsilon") = 0.2)
        .def("insert", &List::insert, py::arg("key"), "Adds key; returns False if already present.")
        .def("erase", &List::erase, py::arg("key"), "Removes key; returns False if absent.")
        .def("contains", &List::contains, py::arg("key"))
        .def("__contains__", &List::contains)
        .def("successor", &List::successor, py::arg("key"), "Smallest stored key >= key, or None.")
        .def("find_predecessor", &List::find_predecessor, py::arg("key"))
        .def("keys", &List::keys)
        .def("level_keys", &List::level_keys, py::arg("level"))
        .def("validate", &List::validate, "Raises RuntimeError if an invariant is broken.")
        .def("stats", &List::stats)
        .def("reset_stats", &List::reset_stats)
        .def("__len__", &List::size)
        .def_property_readonly("epsilon", &List::epsilon)
        .def_property_readonly("height", &List::height);
}

std::string to_csv(const std::vector<tb::BenchRecord>& rows) {
    std::ostringstream os;
    tb::write_csv(os, rows);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Top-down skiplists (todolists) with comparison instrumentation";

    py::class_<todolist::OpStats>(m, "OpStats")
        .def_readonly("comparisons", &todolist::OpStats::comparisons)
        .def_readonly("node_visits", &todolist::OpStats::node_visits)
        .def_readonly("rebuild_touches", &todolist::OpStats::rebuild_touches)
        .def_readonly("level_rebuilds", &todolist::OpStats::level_rebuilds)
        .def_readonly("global_rebuilds", &todolist::OpStats::global_rebuilds);

    using Outcome = todolist::SearchOutcome<Key>;
    py::class_<Outcome>(m, "SearchOutcome")
        .def_readonly("predecessor", &Outcome::predecessor_key)
        .def_readonly("successor", &Outcome::successor_key)
        .def_readonly("found", &Outcome::found)
        .def_readonly("comparisons", &Outcome::comparisons)
        .def_readonly("equality_comparisons", &Outcome::equality_comparisons)
        .def_readonly("found_level", &Outcome::found_level);

    bind_todolist<todolist::PackedTodoList<Key>>(m, "TodoList", "Dynamic todolist on packed per-element link tables.");
    bind_todolist<todolist::LinkedTodoList<Key>>(m, "LinkedTodoList", "Pointer-per-level reference todolist.");

    py::class_<todolist::WorkingRebuildReport>(m, "WorkingRebuildReport")
        .def_readonly("level", &todolist::WorkingRebuildReport::level)
        .def_readonly("anchor_size", &todolist::WorkingRebuildReport::anchor_size)
        .def_readonly("labeled", &todolist::WorkingRebuildReport::labeled)
        .def_readonly("touches", &todolist::WorkingRebuildReport::touches)
        .def_readonly("sizes", &todolist::WorkingRebuildReport::sizes);

    py::class_<todolist::AccessOutcome>(m, "AccessOutcome")
        .def_readonly("found_level", &todolist::AccessOutcome::found_level)
        .def_readonly("comparisons", &todolist::AccessOutcome::comparisons)
        .def_readonly("rebuild", &todolist::AccessOutcome::rebuild);

    using W = todolist::WorkingTodoList;
    py::class_<W>(m, "WorkingTodoList", "Working-set todolist over the universe 1..n.")
        .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("epsilon") = 0.2)
        .def("access", &W::access, py::arg("key"))
        .def("level_keys", &W::level_keys, py::arg("level"))
        .def("queue_order", &W::queue_order)
        .def("validate", &W::validate)
        .def("stats", &W::stats)
        .def("reset_stats", &W::reset_stats)
        .def_property_readonly("universe", &W::universe)
        .def_property_readonly("epsilon", &W::epsilon)
        .def_property_readonly("height", &W::height);

    m.def(
        "sweep_csv",
        [](std::size_t n, double eps_from, double eps_to, double eps_step, std::uint64_t seed,
           const std::string& structure) {
            tb::SweepConfig cfg;
            cfg.n = n;
            cfg.eps_from = eps_from;
            cfg.eps_to = eps_to;
            cfg.eps_step = eps_step;
            cfg.seed = seed;
            cfg.structure = structure;
            py::gil_scoped_release release;
            return to_csv(tb::run_epsilon_sweep(cfg));
        },
        py::arg("n") = 100'000, py::arg("eps_from") = 0.05, py::arg("eps_to") = 0.6, py::arg("eps_step") = 0.05,
        py::arg("seed") = 1, py::arg("structure") = "todolist", "Epsilon sweep as CSV text.");

    m.def(
        "race_csv",
        [](std::size_t n_from, std::size_t n_to, std::size_t n_step, std::vector<std::string> structures,
           std::vector<double> epsilons, std::uint64_t seed) {
            tb::RaceConfig cfg{n_from, n_to, n_step, std::move(structures), std::move(epsilons), seed};
            py::gil_scoped_release release;
            auto rows = tb::run_race(cfg);
            tb::sort_records(rows);
            return to_csv(rows);
        },
        py::arg("n_from") = 25'000, py::arg("n_to") = 100'000, py::arg("n_step") = 25'000,
        py::arg("structures") = std::vector<std::string>{"todolist", "skiplist", "sorted-array"},
        py::arg("epsilons") = std::vector<double>{0.2}, py::arg("seed") = 1, "Structure race as CSV text.");
}
