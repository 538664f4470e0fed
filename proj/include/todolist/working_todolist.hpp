#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "todolist/height_policy.hpp"
#include "todolist/link_table.hpp"
#include "todolist/stats.hpp"

namespace todolist {

struct WorkingRebuildReport {
    int level = 0;                    // index i whose list anchored the rebuild
    std::size_t anchor_size = 0;      // |L_i| at the time of the rebuild
    std::size_t labeled = 0;          // queue nodes labeled by position
    std::uint64_t touches = 0;        // elements written into L_0..L_{i-1}
    std::vector<std::size_t> sizes;   // |L_0|..|L_{i-1}| afterwards
};

struct AccessOutcome {
    int found_level = 0;
    std::uint64_t comparisons = 0;
    std::optional<WorkingRebuildReport> rebuild;
};

/// Working-set todolist over the fixed universe {1, ..., n}.
///
/// Keys accessed recently sit in low levels: L_i holds every key whose
/// working-set number is at most (2 - eps)^i. A recency queue tracks access
/// order and drives the rebuilds that restore |L_0| <= 1/eps + 1.
///
/// Accesses reorder the queue, so one instance must not be shared between
/// threads.
class WorkingTodoList {
public:
    using Key = std::int64_t;

    WorkingTodoList(std::size_t n, double epsilon);

    /// Searches for x, moves it to the queue front and promotes it to L_0.
    /// Throws std::out_of_range unless 1 <= x <= n.
    AccessOutcome access(Key x);

    std::size_t universe() const { return n_; }
    double epsilon() const { return policy_.epsilon(); }
    int height() const { return h_; }
    std::size_t level_size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
    double level0_budget() const { return 1.0 / policy_.epsilon() + 1.0; }
    const HeightPolicy& policy() const { return policy_; }

    /// Highest (smallest-index) level containing x.
    int top_level(Key x) const;
    std::vector<Key> level_keys(int i) const;
    /// Queue contents, most recently accessed first.
    std::vector<Key> queue_order() const;
    std::size_t labeled_count() const;

    OpStats stats() const;
    void reset_stats();

    /// Checks the level-0 budget, nesting, the neighbor property, the full
    /// bottom level, queue integrity and that no labels survive. Throws
    /// std::logic_error on the first violation.
    void validate() const;

    /// Checks that every key with working-set number w sits in L_i for the
    /// smallest i with w <= (2 - eps)^i. `w` is indexed by key; w[0] unused.
    void validate_working_set(std::span<const std::size_t> w) const;

private:
    using Index = std::uint32_t;

    Index next_at(Index u, int level) const { return links_[u][static_cast<std::size_t>(h_ - level)]; }
    Index& next_at(Index u, int level) { return links_[u][static_cast<std::size_t>(h_ - level)]; }
    int top_of(Index u) const { return h_ + 1 - static_cast<int>(links_[u].height()); }

    void move_to_front(Index x);
    WorkingRebuildReport working_rebuild();

    HeightPolicy policy_;
    HeightPolicy rebuild_policy_;
    std::size_t n_;
    int h_ = 0;
    std::vector<LinkTable<Index>> links_;  // slot d is level h - d; index 0 is the sentinel
    std::vector<std::size_t> sizes_;
    std::vector<Index> q_prev_;
    std::vector<Index> q_next_;
    std::vector<std::uint32_t> label_;
    std::vector<Index> path_;
    std::vector<int> new_top_;
    CountingLess<Key> less_;
    std::uint64_t visits_ = 0;
    std::uint64_t rebuild_touches_ = 0;
    std::uint64_t level_rebuilds_ = 0;
};

}  // namespace todolist
