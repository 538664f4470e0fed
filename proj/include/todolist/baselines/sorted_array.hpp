#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "todolist/stats.hpp"

namespace todolist::baselines {

/// Static sorted array searched by binary search. Built once from strictly
/// increasing keys; insert and erase throw.
template <typename Key, typename Compare = std::less<Key>>
class SortedArray {
public:
    using key_type = Key;
    using Outcome = SearchOutcome<Key>;

    explicit SortedArray(Compare cmp = Compare{}) : less_(std::move(cmp)) {}

    SortedArray(std::vector<Key> sorted, Compare cmp = Compare{}) : less_(std::move(cmp)) { build(std::move(sorted)); }

    void build(std::vector<Key> sorted) {
        const auto& raw = less_.base();
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (!raw(sorted[i - 1], sorted[i])) throw std::invalid_argument("sorted array needs strictly increasing keys");
        }
        keys_ = std::move(sorted);
    }

    std::size_t size() const { return keys_.size(); }
    const std::vector<Key>& keys() const { return keys_; }

    OpStats stats() const {
        OpStats s;
        s.comparisons = less_.count();
        s.node_visits = visits_.get();
        return s;
    }
    void reset_stats() {
        less_.reset();
        visits_.reset();
    }

    /// Smallest stored key >= x. At most floor(log2 n) + 1 comparisons.
    std::optional<Key> successor(const Key& x) const {
        auto cmp = less_.tally();
        const std::size_t i = lower_bound(x, cmp);
        if (i == keys_.size()) return std::nullopt;
        return keys_[i];
    }

    Outcome find_predecessor(const Key& x) const {
        auto cmp = less_.tally();
        const std::size_t i = lower_bound(x, cmp);
        Outcome out;
        out.comparisons = cmp.count();
        if (i > 0) out.predecessor_key = keys_[i - 1];
        if (i < keys_.size()) {
            out.successor_key = keys_[i];
            out.found = !cmp(x, keys_[i]);
            out.equality_comparisons = 1;
        }
        return out;
    }

    bool contains(const Key& x) const { return find_predecessor(x).found; }

    [[noreturn]] bool insert(const Key&) { throw std::logic_error("sorted array is static"); }
    [[noreturn]] bool erase(const Key&) { throw std::logic_error("sorted array is static"); }

private:
    template <typename Tally>
    std::size_t lower_bound(const Key& x, Tally& cmp) const {
        std::size_t lo = 0;
        std::size_t len = keys_.size();
        std::uint64_t probes = 0;
        while (len > 0) {
            const std::size_t half = len / 2;
            ++probes;
            if (cmp(keys_[lo + half], x)) {
                lo += half + 1;
                len -= half + 1;
            } else {
                len = half;
            }
        }
        visits_.add(probes);
        return lo;
    }

    CountingLess<Key, Compare> less_;
    Counter visits_;
    std::vector<Key> keys_;
};

}  // namespace todolist::baselines
