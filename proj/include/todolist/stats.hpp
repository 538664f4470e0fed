#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>

namespace todolist {

/// Instrumentation counters shared by every dictionary in the library.
///
/// Counters only grow during the lifetime of a structure; reset() is the
/// sole way to zero them.
struct OpStats {
    std::uint64_t comparisons = 0;
    std::uint64_t node_visits = 0;
    std::uint64_t rebuild_touches = 0;
    std::uint64_t level_rebuilds = 0;
    std::uint64_t global_rebuilds = 0;

    void reset() { *this = OpStats{}; }

    OpStats& operator+=(const OpStats& o) {
        comparisons += o.comparisons;
        node_visits += o.node_visits;
        rebuild_touches += o.rebuild_touches;
        level_rebuilds += o.level_rebuilds;
        global_rebuilds += o.global_rebuilds;
        return *this;
    }

    friend OpStats operator-(OpStats a, const OpStats& b) {
        a.comparisons -= b.comparisons;
        a.node_visits -= b.node_visits;
        a.rebuild_touches -= b.rebuild_touches;
        a.level_rebuilds -= b.level_rebuilds;
        a.global_rebuilds -= b.global_rebuilds;
        return a;
    }

    friend bool operator==(const OpStats&, const OpStats&) = default;
};

/// Relaxed atomic counter with value semantics. Searches are logically const
/// but still count, so concurrent readers of one structure need this.
class Counter {
public:
    Counter() = default;
    Counter(const Counter& o) : v_(o.get()) {}
    Counter& operator=(const Counter& o) {
        v_.store(o.get(), std::memory_order_relaxed);
        return *this;
    }

    void add(std::uint64_t d = 1) const { v_.fetch_add(d, std::memory_order_relaxed); }
    std::uint64_t get() const { return v_.load(std::memory_order_relaxed); }
    void reset() { v_.store(0, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> v_{0};
};

/// The single point through which every key comparison flows. Wraps a strict
/// weak ordering; comparisons are made through a Tally so each operation
/// knows its own cost, and the tally folds into the shared total when it goes
/// out of scope.
template <typename Key, typename Compare = std::less<Key>>
class CountingLess {
public:
    class Tally {
    public:
        explicit Tally(const CountingLess& owner) : owner_(&owner) {}
        Tally(const Tally&) = delete;
        Tally& operator=(const Tally&) = delete;
        ~Tally() { owner_->total_.add(n_); }

        bool operator()(const Key& a, const Key& b) {
            ++n_;
            return owner_->cmp_(a, b);
        }

        std::uint64_t count() const { return n_; }

    private:
        const CountingLess* owner_;
        std::uint64_t n_ = 0;
    };

    explicit CountingLess(Compare cmp = Compare{}) : cmp_(std::move(cmp)) {}

    Tally tally() const { return Tally(*this); }
    const Compare& base() const { return cmp_; }
    std::uint64_t count() const { return total_.get(); }
    void reset() { total_.reset(); }

private:
    Compare cmp_;
    Counter total_;
};

/// Result of a top-down predecessor search.
///
/// `comparisons` counts the descent only (one per level that has a successor
/// to look at). Resolving `found` needs one more comparison against the
/// successor; it is reported in `equality_comparisons` so the descent cost
/// can be checked against the h+1 bound on its own.
template <typename Key>
struct SearchOutcome {
    std::optional<Key> predecessor_key;
    std::optional<Key> successor_key;
    bool found = false;
    std::uint64_t comparisons = 0;
    std::uint64_t equality_comparisons = 0;
    std::optional<int> found_level;

    std::uint64_t total_comparisons() const { return comparisons + equality_comparisons; }

    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

}  // namespace todolist
