#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "todolist/height_policy.hpp"
#include "todolist/link_table.hpp"
#include "todolist/linked_todolist.hpp"
#include "todolist/stats.hpp"

namespace todolist {

/// Bookkeeping for link-table reallocation, kept apart from OpStats because
/// only this engine has link tables.
struct LinkTableStats {
    std::uint64_t grow_reallocs = 0;
    std::uint64_t shrink_reallocs = 0;
    std::uint64_t slots_copied_on_grow = 0;
    std::uint64_t height_gained = 0;  // sum of height increases over all records
};

/// Todolist with one record per element. A record holds the element's key and
/// a link table covering every level it occupies; each link carries a copy of
/// the successor's key so the search can decide whether to advance without
/// touching the successor.
///
/// Slot d of a record's table belongs to level h - d, so the bottom level is
/// always slot 0 and promotions only append. Table capacity is a power of two
/// between height and 2 * height.
///
/// Observable behaviour (search outcomes, comparison counts, level contents)
/// matches LinkedTodoList exactly.
template <typename Key, typename Compare = std::less<Key>>
class PackedTodoList {
    struct Record;

    struct Slot {
        Record* next = nullptr;  // a null link also marks next_key as absent
        Key next_key{};
    };

    struct Record {
        Key key{};
        LinkTable<Slot> links;
    };

public:
    using key_type = Key;
    using Outcome = SearchOutcome<Key>;

    explicit PackedTodoList(double epsilon, Compare cmp = Compare{})
        : policy_(epsilon), less_(std::move(cmp)), head_(std::make_unique<Record>()), sizes_(1, 0) {
        resize_record(*head_, 1, 0);
    }

    ~PackedTodoList() { clear_all(); }

    PackedTodoList(const PackedTodoList&) = delete;
    PackedTodoList& operator=(const PackedTodoList&) = delete;
    PackedTodoList(PackedTodoList&&) noexcept = default;
    PackedTodoList& operator=(PackedTodoList&& o) noexcept {
        if (this != &o) {
            clear_all();
            policy_ = std::move(o.policy_);
            less_ = std::move(o.less_);
            head_ = std::move(o.head_);
            h_ = o.h_;
            sizes_ = std::move(o.sizes_);
            n_ = o.n_;
            slots_ = o.slots_;
            capacity_ = o.capacity_;
            stats_ = o.stats_;
            tables_ = o.tables_;
        }
        return *this;
    }

    double epsilon() const { return policy_.epsilon(); }
    int height() const { return h_; }
    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    std::size_t slot_count() const { return slots_; }
    std::size_t level_size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
    const HeightPolicy& policy() const { return policy_; }

    /// Link slots in use, sentinel included.
    std::size_t occupied_links() const { return slots_ + static_cast<std::size_t>(h_) + 1; }
    /// Link slots allocated, sentinel included.
    std::size_t allocated_links() const { return capacity_; }
    const LinkTableStats& table_stats() const { return tables_; }

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
        tables_ = LinkTableStats{};
    }

    /// node_visits counts records touched: the sentinel plus one per advance.
    Outcome find_predecessor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Record* u = descend(x, cmp, visits, nullptr);
        Outcome out;
        out.comparisons = cmp.count();
        if (u != head_.get()) out.predecessor_key = u->key;
        const Slot& s = u->links[0];
        if (s.next) {
            out.successor_key = s.next_key;
            out.found = !cmp(x, s.next_key);
            out.equality_comparisons = 1;
            if (out.found) out.found_level = h_;
        }
        stats_.node_visits.add(visits);
        return out;
    }

    std::optional<Key> successor(const Key& x) const {
        auto cmp = less_.tally();
        std::uint64_t visits = 1;
        const Record* u = descend(x, cmp, visits, nullptr);
        stats_.node_visits.add(visits);
        const Slot& s = u->links[0];
        if (s.next) return s.next_key;
        return std::nullopt;
    }

    bool contains(const Key& x) const { return find_predecessor(x).found; }

    bool insert(const Key& x) {
        path_.resize(static_cast<std::size_t>(h_) + 1);
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, path_.data());
            stats_.node_visits.add(visits);
            const Slot& s = path_.back()->links[0];
            if (s.next && !cmp(x, s.next_key)) return false;
        }

        auto* r = new Record;
        r->key = x;
        resize_record(*r, static_cast<std::uint32_t>(h_) + 1, 0);
        for (int lvl = 0; lvl <= h_; ++lvl) {
            Slot& ps = slot(*path_[lvl], lvl);
            slot(*r, lvl) = ps;
            ps.next = r;
            ps.next_key = x;
            ++sizes_[static_cast<std::size_t>(lvl)];
        }
        ++n_;
        slots_ += static_cast<std::size_t>(h_) + 1;

        const int h = h_;
        if (policy_.needs_grow(n_, h)) {
            set_height(policy_.grown_height(n_, h));
        } else if (sizes_[0] > 1) {
            partial_rebuild();
        }
        slim_if_needed();
        return true;
    }

    bool erase(const Key& x) {
        path_.resize(static_cast<std::size_t>(h_) + 1);
        Record* target = nullptr;
        {
            auto cmp = less_.tally();
            std::uint64_t visits = 1;
            descend(x, cmp, visits, path_.data());
            stats_.node_visits.add(visits);
            const Slot& s = path_.back()->links[0];
            if (!s.next || cmp(x, s.next_key)) return false;
            target = s.next;
        }

        const int top = h_ - static_cast<int>(target->links.height()) + 1;
        for (int lvl = top; lvl <= h_; ++lvl) {
            slot(*path_[lvl], lvl) = slot(*target, lvl);
            --sizes_[static_cast<std::size_t>(lvl)];
        }
        Record* succ = target->links[0].next;
        slots_ -= target->links.height();
        capacity_ -= target->links.capacity();
        delete target;
        --n_;

        if (succ) {
            const int old_top = h_ - static_cast<int>(succ->links.height()) + 1;
            if (old_top > 0) {
                grow_record(*succ, static_cast<std::uint32_t>(h_) + 1);
                for (int lvl = 0; lvl < old_top; ++lvl) {
                    Slot& ps = slot(*path_[lvl], lvl);
                    slot(*succ, lvl) = ps;
                    ps.next = succ;
                    ps.next_key = succ->key;
                    ++sizes_[static_cast<std::size_t>(lvl)];
                }
                slots_ += static_cast<std::size_t>(old_top);
            }
        }

        const int h = h_;
        if (policy_.needs_shrink(n_, h)) {
            set_height(policy_.shrunk_height(n_, h));
        } else if (sizes_[0] > 1) {
            partial_rebuild();
        }
        slim_if_needed();
        return true;
    }

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

    std::vector<Key> level_keys(int i) const {
        std::vector<Key> out;
        out.reserve(sizes_.at(static_cast<std::size_t>(i)));
        for (const Record* v = slot(*head_, i).next; v; v = slot(*v, i).next) out.push_back(v->key);
        return out;
    }

    std::vector<Key> keys() const { return level_keys(h_); }

    /// Debug view of the successor key cached at `level` in the record for
    /// `at` (the sentinel when empty). Empty result if `at` is not stored at
    /// that level or the link there is null. Uncounted.
    std::optional<Key> cached_next_key(const std::optional<Key>& at, int level) const {
        const Compare& lt = less_.base();
        const Record* r = head_.get();
        if (at) {
            r = nullptr;
            for (const Record* v = head_->links[0].next; v; v = v->links[0].next) {
                if (!lt(v->key, *at) && !lt(*at, v->key)) {
                    r = v;
                    break;
                }
            }
            if (!r || h_ - static_cast<int>(r->links.height()) + 1 > level) return std::nullopt;
        }
        const Slot& s = slot(*r, level);
        if (!s.next) return std::nullopt;
        return s.next_key;
    }

    /// Debug walk: properties 1-4, height bound, cached-key coherence and
    /// link-table sizing. Throws std::logic_error on the first violation.
    void validate() const {
        const Compare& lt = less_.base();
        auto fail = [](const std::string& what) { throw std::logic_error("packed todolist invariant: " + what); };
        auto same = [&](const Key& a, const Key& b) { return !lt(a, b) && !lt(b, a); };

        if (head_->links.height() != static_cast<std::uint32_t>(h_) + 1) fail("sentinel height");
        std::size_t occupied = head_->links.height();
        std::size_t allocated = head_->links.capacity();
        std::size_t total = 0;
        for (int lvl = 0; lvl <= h_; ++lvl) {
            std::size_t cnt = 0;
            const Record* prev = nullptr;
            bool prev_above = true;
            for (const Record* u = head_.get();;) {
                const Slot& s = slot(*u, lvl);
                if (!s.next) break;
                if (!same(s.next_key, s.next->key)) fail("stale cached key at level " + std::to_string(lvl));
                const Record* v = s.next;
                const int top = h_ - static_cast<int>(v->links.height()) + 1;
                if (top > lvl) fail("record linked above its top level at " + std::to_string(lvl));
                if (prev && !lt(prev->key, v->key)) fail("level " + std::to_string(lvl) + " not strictly sorted");
                const bool above = top <= lvl - 1;
                if (lvl > 0 && prev && !prev_above && !above) fail("property 3 at level " + std::to_string(lvl));
                prev = v;
                prev_above = above;
                ++cnt;
                u = v;
            }
            if (cnt != sizes_[static_cast<std::size_t>(lvl)]) fail("size counter at level " + std::to_string(lvl));
            total += cnt;
        }
        // Property 2 holds by construction once every record occupies a
        // contiguous run of levels ending at h and each level count matches
        // the number of records whose top is at or above it.
        std::vector<std::size_t> by_level(static_cast<std::size_t>(h_) + 1, 0);
        std::size_t records = 0;
        for (const Record* v = head_->links[0].next; v; v = v->links[0].next) {
            ++records;
            if (v->links.height() == 0 || v->links.height() > static_cast<std::uint32_t>(h_) + 1) fail("record height");
            if (!std::has_single_bit(v->links.capacity()) || v->links.capacity() < v->links.height() || v->links.capacity() > 2 * v->links.height()) {
                fail("link table capacity " + std::to_string(v->links.capacity()) + " for height " + std::to_string(v->links.height()));
            }
            ++by_level[static_cast<std::size_t>(h_ + 1 - static_cast<int>(v->links.height()))];
            occupied += v->links.height();
            allocated += v->links.capacity();
        }
        std::size_t running = 0;
        for (int lvl = 0; lvl <= h_; ++lvl) {
            running += by_level[static_cast<std::size_t>(lvl)];
            if (running != sizes_[static_cast<std::size_t>(lvl)]) fail("property 2 at level " + std::to_string(lvl));
        }
        if (records != n_) fail("property 4: bottom size");
        if (sizes_[0] > 1) fail("property 1");
        if (total != slots_) fail("slot counter");
        if (occupied != occupied_links() || allocated != capacity_) fail("link accounting");
        if (allocated > 2 * occupied) fail("link capacity above twice occupancy");
        if (n_ >= 2) {
            const int lo = policy_.ceil_log(n_);
            if (h_ < lo || h_ > lo + 1) fail("height " + std::to_string(h_) + " outside bound");
        }
        if (n_ > 0 && policy_.needs_slim(slots_, n_)) fail("slot count above c*n");
    }

private:
    struct Counters {
        Counter node_visits;
        std::uint64_t rebuild_touches = 0;
        std::uint64_t level_rebuilds = 0;
        std::uint64_t global_rebuilds = 0;
    };

    Slot& slot(Record& r, int lvl) const { return r.links[static_cast<std::size_t>(h_ - lvl)]; }
    const Slot& slot(const Record& r, int lvl) const { return r.links[static_cast<std::size_t>(h_ - lvl)]; }

    template <typename Tally>
    const Record* descend(const Key& x, Tally& cmp, std::uint64_t& visits, Record** path) const {
        const Record* u = head_.get();
        for (int lvl = 0; lvl <= h_; ++lvl) {
            const Slot& s = u->links[static_cast<std::size_t>(h_ - lvl)];
            if (s.next && cmp(s.next_key, x)) {
                u = s.next;
                ++visits;
            }
            if (path) path[lvl] = const_cast<Record*>(u);
        }
        return u;
    }

    void resize_record(Record& r, std::uint32_t height, std::uint32_t keep) {
        const auto fx = r.links.resize(height, keep);
        capacity_ = static_cast<std::size_t>(static_cast<std::int64_t>(capacity_) + fx.capacity_delta);
        if (fx.grew) {
            ++tables_.grow_reallocs;
            tables_.slots_copied_on_grow += fx.copied;
        }
        if (fx.shrank) ++tables_.shrink_reallocs;
    }

    void grow_record(Record& r, std::uint32_t height) {
        tables_.height_gained += height - r.links.height();
        resize_record(r, height, r.links.height());
    }

    /// Rebuilds levels 0..i-1 from level i, keeping every second element at
    /// each step down. Element k (1-based) of level i ends with top level
    /// i - min(v2(k), i); its link table is resized accordingly and the
    /// slots for levels i..h are left alone.
    std::size_t rebuild_below(int i) {
        if (i <= 0) return 0;
        const auto keep = static_cast<std::uint32_t>(h_ - i + 1);
        tails_.assign(static_cast<std::size_t>(i), head_.get());
        std::size_t touches = 0;
        std::uint64_t k = 0;
        for (Record* v = slot(*head_, i).next; v;) {
            Record* next = slot(*v, i).next;
            ++k;
            const int up = std::min(std::countr_zero(k), i);
            const auto new_height = keep + static_cast<std::uint32_t>(up);
            if (new_height > v->links.height()) tables_.height_gained += new_height - v->links.height();
            slots_ = slots_ - v->links.height() + new_height;
            resize_record(*v, new_height, keep);
            for (int lvl = i - up; lvl < i; ++lvl) {
                Slot& ts = slot(*tails_[static_cast<std::size_t>(lvl)], lvl);
                ts.next = v;
                ts.next_key = v->key;
                tails_[static_cast<std::size_t>(lvl)] = v;
            }
            touches += static_cast<std::size_t>(up);
            v = next;
        }
        for (int lvl = 0; lvl < i; ++lvl) {
            slot(*tails_[static_cast<std::size_t>(lvl)], lvl) = Slot{};
            sizes_[static_cast<std::size_t>(lvl)] = static_cast<std::size_t>(k >> (i - lvl));
        }
        stats_.rebuild_touches += touches;
        stats_.level_rebuilds += static_cast<std::uint64_t>(i);
        return touches;
    }

    void set_height(int new_h) {
        // Slot 0 is the bottom level whatever h is, so only the sentinel
        // needs resizing before the full rebuild recomputes every record.
        resize_record(*head_, static_cast<std::uint32_t>(new_h) + 1, 1);
        h_ = new_h;
        sizes_.assign(static_cast<std::size_t>(new_h) + 1, 0);
        sizes_.back() = n_;
        ++stats_.global_rebuilds;
        rebuild_below(new_h);
    }

    void slim_if_needed() {
        if (n_ > 0 && policy_.needs_slim(slots_, n_)) {
            ++stats_.global_rebuilds;
            rebuild_below(h_);
        }
    }

    void clear_all() {
        if (!head_) return;
        Record* v = head_->links[0].next;
        while (v) {
            Record* nx = v->links[0].next;
            delete v;
            v = nx;
        }
        head_->links[0] = Slot{};
    }

    HeightPolicy policy_;
    CountingLess<Key, Compare> less_;
    std::unique_ptr<Record> head_;
    int h_ = 0;
    std::vector<std::size_t> sizes_;
    std::size_t n_ = 0;
    std::size_t slots_ = 0;     // occupied slots over keyed records
    std::size_t capacity_ = 0;  // allocated slots, sentinel included
    mutable Counters stats_;
    LinkTableStats tables_;
    std::vector<Record*> path_;
    std::vector<Record*> tails_;
};

}  // namespace todolist
