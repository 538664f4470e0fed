#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "todolist/stats.hpp"

namespace todolist::baselines {

/// Perfectly balanced static search tree stored in pre-order: a node's left
/// child, when present, sits in the next array slot.
template <typename Key, typename Compare = std::less<Key>>
class BalancedTree {
    static constexpr std::uint32_t kNil = UINT32_MAX;

    struct Node {
        Key key;
        std::uint32_t left;
        std::uint32_t right;
    };

public:
    using key_type = Key;
    using Outcome = SearchOutcome<Key>;

    /// Root-to-leaf movement counts; a step is adjacent when it lands on the
    /// slot right after the current one.
    struct LayoutStats {
        std::uint64_t steps = 0;
        std::uint64_t adjacent_steps = 0;
    };

    explicit BalancedTree(Compare cmp = Compare{}) : less_(std::move(cmp)) {}

    BalancedTree(const std::vector<Key>& sorted, Compare cmp = Compare{}) : less_(std::move(cmp)) { build(sorted); }

    void build(const std::vector<Key>& sorted) {
        const auto& raw = less_.base();
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (!raw(sorted[i - 1], sorted[i])) throw std::invalid_argument("balanced tree needs strictly increasing keys");
        }
        nodes_.clear();
        nodes_.reserve(sorted.size());
        depth_ = 0;
        place(sorted, 0, sorted.size(), 1);
    }

    std::size_t size() const { return nodes_.size(); }
    int depth() const { return depth_; }

    /// Keys in storage (pre-order) order.
    std::vector<Key> layout() const {
        std::vector<Key> out;
        out.reserve(nodes_.size());
        for (const auto& nd : nodes_) out.push_back(nd.key);
        return out;
    }

    OpStats stats() const {
        OpStats s;
        s.comparisons = less_.count();
        s.node_visits = visits_.get();
        return s;
    }
    LayoutStats layout_stats() const { return LayoutStats{steps_.get(), adjacent_.get()}; }
    void reset_stats() {
        less_.reset();
        visits_.reset();
        steps_.reset();
        adjacent_.reset();
    }

    /// Smallest stored key >= x, one comparison per level of the path.
    std::optional<Key> successor(const Key& x) const {
        auto cmp = less_.tally();
        const std::uint32_t s = descend(x, cmp, nullptr);
        if (s == kNil) return std::nullopt;
        return nodes_[s].key;
    }

    Outcome find_predecessor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint32_t pred = kNil;
        const std::uint32_t s = descend(x, cmp, &pred);
        Outcome out;
        out.comparisons = cmp.count();
        if (pred != kNil) out.predecessor_key = nodes_[pred].key;
        if (s != kNil) {
            out.successor_key = nodes_[s].key;
            out.found = !cmp(x, nodes_[s].key);
            out.equality_comparisons = 1;
        }
        return out;
    }

    bool contains(const Key& x) const { return find_predecessor(x).found; }

    [[noreturn]] bool insert(const Key&) { throw std::logic_error("balanced tree is static"); }
    [[noreturn]] bool erase(const Key&) { throw std::logic_error("balanced tree is static"); }

private:
    std::uint32_t place(const std::vector<Key>& sorted, std::size_t lo, std::size_t hi, int level) {
        if (lo >= hi) return kNil;
        if (level > depth_) depth_ = level;
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(Node{sorted[mid], kNil, kNil});
        const std::uint32_t l = place(sorted, lo, mid, level + 1);
        const std::uint32_t r = place(sorted, mid + 1, hi, level + 1);
        nodes_[idx].left = l;
        nodes_[idx].right = r;
        return idx;
    }

    template <typename Tally>
    std::uint32_t descend(const Key& x, Tally& cmp, std::uint32_t* pred) const {
        std::uint32_t best = kNil;
        std::uint32_t cur = nodes_.empty() ? kNil : 0;
        std::uint64_t visits = 0;
        std::uint64_t steps = 0;
        std::uint64_t adjacent = 0;
        while (cur != kNil) {
            ++visits;
            const Node& nd = nodes_[cur];
            std::uint32_t next;
            if (cmp(nd.key, x)) {
                if (pred) *pred = cur;
                next = nd.right;
            } else {
                best = cur;
                next = nd.left;
            }
            if (next != kNil) {
                ++steps;
                if (next == cur + 1) ++adjacent;
            }
            cur = next;
        }
        visits_.add(visits);
        steps_.add(steps);
        adjacent_.add(adjacent);
        return best;
    }

    CountingLess<Key, Compare> less_;
    Counter visits_;
    Counter steps_;
    Counter adjacent_;
    std::vector<Node> nodes_;
    int depth_ = 0;
};

}  // namespace todolist::baselines
