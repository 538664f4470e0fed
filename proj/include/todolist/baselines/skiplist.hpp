#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "todolist/stats.hpp"

namespace todolist::baselines {

/// Pugh's randomized skiplist with p = 1/2 and seeded tower heights.
///
/// With CacheKeys each forward link also stores its target's key, so a
/// comparison reads only the current node; the target is dereferenced only
/// when the search moves to it. Comparison counts are the same either way,
/// node_visits is what differs.
template <typename Key, typename Compare = std::less<Key>, bool CacheKeys = false>
class Skiplist {
    struct Node;

    struct Link {
        Node* node = nullptr;
        Key key{};  // meaningful only with CacheKeys and a non-null node
    };

    struct Node {
        Key key{};
        int height = 0;
        std::unique_ptr<Link[]> next;
    };

public:
    using key_type = Key;
    using Outcome = SearchOutcome<Key>;

    static constexpr int kMaxHeight = 64;

    explicit Skiplist(std::uint64_t seed, Compare cmp = Compare{}) : less_(std::move(cmp)), rng_(seed) {
        head_.height = kMaxHeight;
        head_.next = std::make_unique<Link[]>(kMaxHeight);
    }

    ~Skiplist() { clear(); }
    Skiplist(const Skiplist&) = delete;
    Skiplist& operator=(const Skiplist&) = delete;

    std::size_t size() const { return n_; }
    int levels() const { return levels_; }

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

    Outcome find_predecessor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Node* u = descend(x, cmp, visits, nullptr);
        Outcome out;
        out.comparisons = cmp.count();
        if (u != &head_) out.predecessor_key = u->key;
        if (const Node* s = u->next[0].node) {
            const Key& sk = link_key(u->next[0], visits);
            out.successor_key = sk;
            out.found = !cmp(x, sk);
            out.equality_comparisons = 1;
        }
        visits_.add(visits);
        return out;
    }

    std::optional<Key> successor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Node* u = descend(x, cmp, visits, nullptr);
        visits_.add(visits);
        if (u->next[0].node) return u->next[0].node->key;
        return std::nullopt;
    }

    bool contains(const Key& x) const { return find_predecessor(x).found; }

    bool insert(const Key& x) {
        Node* update[kMaxHeight];
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, update);
            const Link& l = update[0]->next[0];
            if (l.node && !cmp(x, link_key(l, visits))) {
                visits_.add(visits);
                return false;
            }
            visits_.add(visits);
        }
        ++n_;
        const int h = random_height();
        for (int lvl = levels_; lvl < h; ++lvl) update[lvl] = &head_;
        if (h > levels_) levels_ = h;

        auto* nd = new Node;
        nd->key = x;
        nd->height = h;
        nd->next = std::make_unique<Link[]>(static_cast<std::size_t>(h));
        for (int lvl = 0; lvl < h; ++lvl) {
            nd->next[lvl] = update[lvl]->next[lvl];
            update[lvl]->next[lvl] = Link{nd, x};
        }
        return true;
    }

    bool erase(const Key& x) {
        Node* update[kMaxHeight];
        Node* target = nullptr;
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, update);
            const Link& l = update[0]->next[0];
            if (l.node && !cmp(x, link_key(l, visits))) target = l.node;
            visits_.add(visits);
        }
        if (!target) return false;
        for (int lvl = 0; lvl < target->height; ++lvl) update[lvl]->next[lvl] = target->next[lvl];
        delete target;
        --n_;
        while (levels_ > 0 && !head_.next[levels_ - 1].node) --levels_;
        return true;
    }

    /// Tower heights in key order; a pure function of the seed and the
    /// insertion sequence.
    std::vector<int> tower_heights() const {
        std::vector<int> out;
        for (const Node* v = head_.next[0].node; v; v = v->next[0].node) out.push_back(v->height);
        return out;
    }

    std::vector<Key> keys() const {
        std::vector<Key> out;
        for (const Node* v = head_.next[0].node; v; v = v->next[0].node) out.push_back(v->key);
        return out;
    }

private:
    const Key& link_key(const Link& l, std::uint64_t& visits) const {
        if constexpr (CacheKeys) {
            return l.key;
        } else {
            ++visits;
            return l.node->key;
        }
    }

    template <typename Tally>
    const Node* descend(const Key& x, Tally& cmp, std::uint64_t& visits, Node** update) const {
        const Node* u = &head_;
        for (int lvl = levels_ - 1; lvl >= 0; --lvl) {
            for (;;) {
                const Link& l = u->next[lvl];
                if (!l.node || !cmp(link_key(l, visits), x)) break;
                u = l.node;
                if constexpr (CacheKeys) ++visits;
            }
            if (update) update[lvl] = const_cast<Node*>(u);
        }
        if (update && levels_ == 0) update[0] = const_cast<Node*>(u);
        return u;
    }

    /// Geometric(1/2) height, capped at ceil(log2 n) + 5.
    int random_height() {
        int cap = 5;
        for (std::size_t m = 1; m < n_; m <<= 1) ++cap;
        if (cap > kMaxHeight) cap = kMaxHeight;
        const int h = 1 + std::countr_zero(rng_() | (std::uint64_t{1} << 63));
        return h < cap ? h : cap;
    }

    void clear() {
        Node* v = head_.next[0].node;
        while (v) {
            Node* nx = v->next[0].node;
            delete v;
            v = nx;
        }
    }

    CountingLess<Key, Compare> less_;
    Counter visits_;
    std::mt19937_64 rng_;
    Node head_;
    int levels_ = 0;
    std::size_t n_ = 0;
};

template <typename Key, typename Compare = std::less<Key>>
using CachedSkiplist = Skiplist<Key, Compare, true>;

}  // namespace todolist::baselines
