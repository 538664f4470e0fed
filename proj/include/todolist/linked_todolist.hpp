#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "todolist/height_policy.hpp"
#include "todolist/stats.hpp"

namespace todolist {

/// What a partial rebuild did: the anchor level it rebuilt below and how many
/// elements it wrote.
struct RebuildReport {
    int level = -1;
    std::size_t touches = 0;
};

/// Reference todolist: h+1 sorted singly-linked lists, one node per
/// occurrence, each node pointing down to its copy one level below.
///
/// Level 0 is the short list at the top of the search, level h holds every
/// key. The structure is a set: inserting a stored key is a no-op.
template <typename Key, typename Compare = std::less<Key>>
class LinkedTodoList {
    struct Node;

    struct Link {
        Node* next = nullptr;
        Link* down = nullptr;
    };

    struct Node : Link {
        explicit Node(const Key& k) : key(k) {}
        Key key;
        Node* bottom = nullptr;  // occurrence in level h; identifies the element
    };

public:
    using key_type = Key;
    using Outcome = SearchOutcome<Key>;

    explicit LinkedTodoList(double epsilon, Compare cmp = Compare{})
        : policy_(epsilon), less_(std::move(cmp)), heads_(1), sizes_(1, 0) {}

    ~LinkedTodoList() { clear_all(); }

    LinkedTodoList(const LinkedTodoList&) = delete;
    LinkedTodoList& operator=(const LinkedTodoList&) = delete;
    LinkedTodoList(LinkedTodoList&&) noexcept = default;
    LinkedTodoList& operator=(LinkedTodoList&& o) noexcept {
        if (this != &o) {
            clear_all();
            policy_ = std::move(o.policy_);
            less_ = std::move(o.less_);
            heads_ = std::move(o.heads_);
            sizes_ = std::move(o.sizes_);
            n_ = o.n_;
            slots_ = o.slots_;
            stats_ = o.stats_;
            skip_delete_repair_ = o.skip_delete_repair_;
        }
        return *this;
    }

    double epsilon() const { return policy_.epsilon(); }
    int height() const { return static_cast<int>(heads_.size()) - 1; }
    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    std::size_t slot_count() const { return slots_; }
    std::size_t level_size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
    const HeightPolicy& policy() const { return policy_; }

    OpStats stats() const {
        OpStats s;
        s.comparisons = less_.count();
        s.node_visits = stats_.node_visits.get();
        s.rebuild_touches = stats_.rebuild_touches;
        s.level_rebuilds = stats_.level_rebuilds;
        s.global_rebuilds = stats_.global_rebuilds;
        return s;
    }

    void reset_stats() {
        less_.reset();
        stats_ = Counters{};
    }

    /// Top-down search for the largest stored key below x. At most one
    /// comparison per level; `found` costs one more against the successor.
    Outcome find_predecessor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Link* u = descend(x, cmp, visits, nullptr);
        Outcome out;
        out.comparisons = cmp.count();
        if (u != &heads_.back()) out.predecessor_key = static_cast<const Node*>(u)->key;
        if (const Node* s = u->next) {
            out.successor_key = s->key;
            out.found = !cmp(x, s->key);
            out.equality_comparisons = 1;
            if (out.found) out.found_level = height();
        }
        stats_.node_visits.add(visits);
        return out;
    }

    /// Smallest stored key >= x. Costs exactly the descent.
    std::optional<Key> successor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Link* u = descend(x, cmp, visits, nullptr);
        stats_.node_visits.add(visits);
        if (u->next) return u->next->key;
        return std::nullopt;
    }

    bool contains(const Key& x) const { return find_predecessor(x).found; }

    bool insert(const Key& x) {
        path_.resize(heads_.size());
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, path_.data());
            stats_.node_visits.add(visits);
            const Node* s = path_.back()->next;
            if (s && !cmp(x, s->key)) return false;
        }

        const int h = height();
        Node* bottom = nullptr;
        Link* below = nullptr;
        for (int i = h; i >= 0; --i) {
            Node* nd = new Node(x);
            if (!bottom) bottom = nd;
            nd->bottom = bottom;
            nd->down = below;
            nd->next = path_[i]->next;
            path_[i]->next = nd;
            ++sizes_[i];
            below = nd;
        }
        ++n_;
        slots_ += heads_.size();

        if (policy_.needs_grow(n_, h)) {
            set_height(policy_.grown_height(n_, h));
        } else if (sizes_[0] > 1) {
            partial_rebuild();
        }
        slim_if_needed();
        return true;
    }

    bool erase(const Key& x) {
        path_.resize(heads_.size());
        Node* target = nullptr;
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, path_.data());
            stats_.node_visits.add(visits);
            Node* s = path_.back()->next;
            if (!s || cmp(x, s->key)) return false;
            target = s;
        }

        const int h = height();
        Node* succ = target->next;
        for (int i = 0; i <= h; ++i) {
            Node* v = path_[i]->next;
            if (v && v->bottom == target) {
                path_[i]->next = v->next;
                delete v;
                --sizes_[i];
                --slots_;
            }
        }
        --n_;

        // Splicing the successor into every level repairs any pair whose
        // separator was x. A deleted maximum leaves nothing to repair.
        if (succ && !skip_delete_repair_) {
            Link* below = succ;
            for (int i = h - 1; i >= 0; --i) {
                Node* v = path_[i]->next;
                if (v && v->bottom == succ) {
                    below = v;
                    continue;
                }
                Node* nd = new Node(succ->key);
                nd->bottom = succ;
                nd->down = below;
                nd->next = v;
                path_[i]->next = nd;
                ++sizes_[i];
                ++slots_;
                below = nd;
            }
        }

        if (policy_.needs_shrink(n_, h)) {
            set_height(policy_.shrunk_height(n_, h));
        } else if (sizes_[0] > 1) {
            partial_rebuild();
        }
        slim_if_needed();
        return true;
    }

    /// Restores |L_0| <= 1 by halving down from the first level that is
    /// within its (2-eps)^i budget.
    RebuildReport partial_rebuild() {
        const int i = policy_.rebuild_index(sizes_);
        if (i < 0) throw std::logic_error("todolist: no level within its size budget");
        return {i, rebuild_below(i)};
    }

    /// Regenerates levels 0..i-1 from level i regardless of their sizes.
    /// The result can leave |L_0| > 1; callers outside tests want
    /// partial_rebuild().
    RebuildReport rebuild_from(int i) {
        if (i < 0 || i > height()) throw std::out_of_range("rebuild level");
        return {i, rebuild_below(i)};
    }

    /// Keys of level i in order.
    std::vector<Key> level_keys(int i) const {
        std::vector<Key> out;
        out.reserve(sizes_.at(static_cast<std::size_t>(i)));
        for (const Node* v = heads_[static_cast<std::size_t>(i)].next; v; v = v->next) out.push_back(v->key);
        return out;
    }

    std::vector<Key> keys() const { return level_keys(height()); }

    /// Debug walk over every structural property; throws std::logic_error
    /// describing the first violation. Does not touch the counters.
    void validate() const {
        const Compare& lt = less_.base();
        const int h = height();
        auto fail = [](const std::string& what) { throw std::logic_error("todolist invariant: " + what); };

        std::size_t total = 0;
        for (int i = 0; i <= h; ++i) {
            std::size_t cnt = 0;
            const Node* prev = nullptr;
            bool prev_above = true;
            const Link& head = heads_[static_cast<std::size_t>(i)];
            if (i < h && head.down != &heads_[static_cast<std::size_t>(i) + 1]) fail("sentinel down link");
            // Walk level i+1 in lockstep to check containment and down links.
            const Node* lower = i < h ? heads_[static_cast<std::size_t>(i) + 1].next : nullptr;
            const Node* upper = i > 0 ? heads_[static_cast<std::size_t>(i) - 1].next : nullptr;
            for (const Node* v = head.next; v; v = v->next) {
                ++cnt;
                if (prev && !lt(prev->key, v->key)) fail("level " + std::to_string(i) + " not strictly sorted");
                if (i == h) {
                    if (v->bottom != v || v->down) fail("bottom node identity");
                } else {
                    while (lower && lower->bottom != v->bottom) lower = lower->next;
                    if (!lower) fail("property 2 at level " + std::to_string(i));
                    if (v->down != lower) fail("down link at level " + std::to_string(i));
                }
                bool above = false;
                if (i > 0) {
                    while (upper && lt(upper->key, v->key)) upper = upper->next;
                    above = upper && upper->bottom == v->bottom;
                    if (prev && !prev_above && !above) fail("property 3 at level " + std::to_string(i));
                }
                prev = v;
                prev_above = above;
            }
            if (cnt != sizes_[static_cast<std::size_t>(i)]) fail("size counter at level " + std::to_string(i));
            total += cnt;
        }
        if (sizes_[0] > 1) fail("property 1");
        if (sizes_[static_cast<std::size_t>(h)] != n_) fail("property 4: bottom size");
        if (total != slots_) fail("slot counter");
        if (n_ >= 2) {
            const int lo = policy_.ceil_log(n_);
            if (h < lo || h > lo + 1) {
                fail("height " + std::to_string(h) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(lo + 1) + "]");
            }
        }
        if (n_ > 0 && policy_.needs_slim(slots_, n_)) fail("slot count above c*n");
    }

    /// Test-only fault injection: skip the successor promotion on erase so
    /// property 3 can break.
    void set_skip_delete_repair_for_testing(bool on) { skip_delete_repair_ = on; }

private:
    struct Counters {
        Counter node_visits;
        std::uint64_t rebuild_touches = 0;
        std::uint64_t level_rebuilds = 0;
        std::uint64_t global_rebuilds = 0;
    };

    template <typename Tally>
    const Link* descend(const Key& x, Tally& cmp, std::uint64_t& visits, Link** path) const {
        const Link* u = &heads_[0];
        const int h = height();
        for (int i = 0;; ++i) {
            if (u->next) {
                ++visits;
                if (cmp(u->next->key, x)) u = u->next;
            }
            if (path) path[i] = const_cast<Link*>(u);
            if (i == h) break;
            u = u->down;
            ++visits;
        }
        return u;
    }

    /// Regenerates levels 0..i-1 from level i by keeping every second element.
    std::size_t rebuild_below(int i) {
        for (int j = 0; j < i; ++j) free_level(j);
        std::size_t touches = 0;
        for (int j = i; j > 0; --j) {
            Link* tail = &heads_[static_cast<std::size_t>(j) - 1];
            std::size_t cnt = 0;
            bool take = false;
            for (Node* v = heads_[static_cast<std::size_t>(j)].next; v; v = v->next) {
                if (take) {
                    Node* nd = new Node(v->key);
                    nd->bottom = v->bottom;
                    nd->down = v;
                    tail->next = nd;
                    tail = nd;
                    ++cnt;
                }
                take = !take;
            }
            tail->next = nullptr;
            sizes_[static_cast<std::size_t>(j) - 1] = cnt;
            slots_ += cnt;
            touches += cnt;
        }
        stats_.rebuild_touches += touches;
        stats_.level_rebuilds += static_cast<std::uint64_t>(i);
        return touches;
    }

    /// Moves the bottom list to level new_h and rebuilds everything above it.
    void set_height(int new_h) {
        const int h = height();
        for (int j = 0; j < h; ++j) free_level(j);
        Node* first = heads_.back().next;
        heads_.assign(static_cast<std::size_t>(new_h) + 1, Link{});
        sizes_.assign(static_cast<std::size_t>(new_h) + 1, 0);
        for (int j = 0; j < new_h; ++j) heads_[static_cast<std::size_t>(j)].down = &heads_[static_cast<std::size_t>(j) + 1];
        heads_.back().next = first;
        sizes_.back() = n_;
        slots_ = n_;
        ++stats_.global_rebuilds;
        rebuild_below(new_h);
    }

    void slim_if_needed() {
        if (n_ > 0 && policy_.needs_slim(slots_, n_)) {
            ++stats_.global_rebuilds;
            rebuild_below(height());
        }
    }

    void free_level(int j) {
        Node* v = heads_[static_cast<std::size_t>(j)].next;
        while (v) {
            Node* nx = v->next;
            delete v;
            v = nx;
        }
        heads_[static_cast<std::size_t>(j)].next = nullptr;
        slots_ -= sizes_[static_cast<std::size_t>(j)];
        sizes_[static_cast<std::size_t>(j)] = 0;
    }

    void clear_all() {
        for (int j = 0; j < static_cast<int>(heads_.size()); ++j) free_level(j);
    }

    HeightPolicy policy_;
    CountingLess<Key, Compare> less_;
    std::vector<Link> heads_;
    std::vector<std::size_t> sizes_;
    std::size_t n_ = 0;
    std::size_t slots_ = 0;
    mutable Counters stats_;
    std::vector<Link*> path_;
    bool skip_delete_repair_ = false;
};

}  // namespace todolist
