#include "todolist/working_todolist.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace todolist {

namespace {

bool is_square(int i) {
    int r = 0;
    while ((r + 1) * (r + 1) <= i) ++r;
    return r * r == i;
}

}  // namespace

WorkingTodoList::WorkingTodoList(std::size_t n, double epsilon)
    : policy_(epsilon), rebuild_policy_(epsilon, 2.0 - epsilon / 2.0), n_(n) {
    if (n == 0) throw std::invalid_argument("universe size must be at least 1");
    if (n >= UINT32_MAX) throw std::invalid_argument("universe size too large");
    h_ = policy_.ceil_log(n);

    links_.resize(n + 1);
    links_[0].resize(static_cast<std::uint32_t>(h_ + 1), 0);
    sizes_.assign(static_cast<std::size_t>(h_ + 1), 0);

    // Bottom-up halving: the k-th key lands in the top min(ctz(k), h) + 1
    // levels, exactly as a fresh partial rebuild from L_h would place it.
    std::vector<Index> last(static_cast<std::size_t>(h_ + 1), 0);
    for (std::size_t k = 1; k <= n; ++k) {
        const int up = std::min(std::countr_zero(k), h_);
        links_[k].resize(static_cast<std::uint32_t>(up + 1), 0);
        for (int lvl = h_ - up; lvl <= h_; ++lvl) {
            next_at(last[static_cast<std::size_t>(lvl)], lvl) = static_cast<Index>(k);
            last[static_cast<std::size_t>(lvl)] = static_cast<Index>(k);
            ++sizes_[static_cast<std::size_t>(lvl)];
        }
    }

    // All keys start with w = n, so any queue order is valid; use key order.
    q_prev_.resize(n + 1);
    q_next_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        q_next_[k] = static_cast<Index>(k == n ? 0 : k + 1);
        q_prev_[k] = static_cast<Index>(k == 0 ? n : k - 1);
    }
    label_.assign(n + 1, 0);
    path_.assign(static_cast<std::size_t>(h_ + 1), 0);
    new_top_.assign(n + 1, 0);
}

AccessOutcome WorkingTodoList::access(Key x) {
    if (x < 1 || static_cast<std::size_t>(x) > n_) {
        throw std::out_of_range("key " + std::to_string(x) + " outside universe [1, " + std::to_string(n_) + "]");
    }
    const auto xi = static_cast<Index>(x);
    AccessOutcome out;
    std::uint64_t visits = 1;
    {
        auto cmp = less_.tally();
        Index u = 0;
        int found = -1;
        // The last successor compared against x and what is known about it:
        // not below x, or strictly above x. Meeting the same record again one
        // level down needs no new comparison.
        Index known = 0;
        bool known_above = false;
        for (int lvl = 0; lvl <= h_ && found < 0; ++lvl) {
            // L_0 is a short bucket scanned linearly; below it each level
            // advances at most once.
            for (;;) {
                const Index nx = next_at(u, lvl);
                if (nx == 0) break;
                if (nx == known) break;
                if (!cmp(static_cast<Key>(nx), x)) {
                    known = nx;
                    known_above = false;
                    break;
                }
                u = nx;
                ++visits;
                if (lvl > 0) break;
            }
            path_[static_cast<std::size_t>(lvl)] = u;
            const Index nx = next_at(u, lvl);
            if (is_square(lvl)) {
                // Both comparisons false means the successor equals x.
                if (nx != 0 && !(nx == known && known_above)) {
                    if (!cmp(x, static_cast<Key>(nx))) {
                        found = lvl;
                    } else {
                        known = nx;
                        known_above = true;
                    }
                }
            } else if (lvl == h_) {
                // Every universe key is in L_h, so the successor here is x.
                found = lvl;
            }
        }
        out.found_level = found;
        out.comparisons = cmp.count();
    }
    visits_ += visits;

    // Splice x into every level above its current top; the descent already
    // recorded the predecessor on each of them.
    const int top = top_of(xi);
    if (top > 0) {
        links_[xi].resize(static_cast<std::uint32_t>(h_ + 1), static_cast<std::uint32_t>(h_ + 1 - top));
        for (int lvl = 0; lvl < top; ++lvl) {
            const Index p = path_[static_cast<std::size_t>(lvl)];
            next_at(xi, lvl) = next_at(p, lvl);
            next_at(p, lvl) = xi;
            ++sizes_[static_cast<std::size_t>(lvl)];
        }
    }
    move_to_front(xi);

    if (static_cast<double>(sizes_[0]) > level0_budget()) out.rebuild = working_rebuild();
    return out;
}

void WorkingTodoList::move_to_front(Index x) {
    if (q_next_[0] == x) return;
    q_next_[q_prev_[x]] = q_next_[x];
    q_prev_[q_next_[x]] = q_prev_[x];
    q_next_[x] = q_next_[0];
    q_prev_[q_next_[0]] = x;
    q_next_[0] = x;
    q_prev_[x] = 0;
}

WorkingRebuildReport WorkingTodoList::working_rebuild() {
    WorkingRebuildReport rep;
    const int i = rebuild_policy_.rebuild_index(sizes_);
    if (i <= 0) throw std::logic_error("working todolist: no level can anchor a rebuild");
    rep.level = i;
    rep.anchor_size = sizes_[static_cast<std::size_t>(i)];

    // Label the most recent ceil((2 - eps)^(i - 1)) keys with their queue
    // positions, which bound their working-set numbers from below.
    const auto want = static_cast<std::size_t>(std::ceil(policy_.power(i - 1)));
    Index q = q_next_[0];
    for (std::size_t pos = 1; pos <= want && q != 0; ++pos, q = q_next_[q]) {
        label_[q] = static_cast<std::uint32_t>(pos);
        ++rep.labeled;
    }

    // Build L_{j-1} from L_j: keep every key labeled within (2 - eps)^(j-1)
    // and, of the rest, every second one so no two neighbors are both left
    // out. The sentinel counts as kept.
    std::vector<std::vector<Index>> lists(static_cast<std::size_t>(i) + 1);
    auto& anchor = lists[static_cast<std::size_t>(i)];
    anchor.reserve(rep.anchor_size);
    for (Index v = next_at(0, i); v != 0; v = next_at(v, i)) {
        anchor.push_back(v);
        new_top_[v] = i;
    }
    for (int j = i; j >= 1; --j) {
        const double limit = policy_.power(j - 1);
        const auto& src = lists[static_cast<std::size_t>(j)];
        auto& dst = lists[static_cast<std::size_t>(j) - 1];
        bool prev_taken = true;
        for (Index v : src) {
            const bool take = (label_[v] != 0 && static_cast<double>(label_[v]) <= limit) || !prev_taken;
            if (take) {
                dst.push_back(v);
                new_top_[v] = j - 1;
            }
            prev_taken = take;
        }
    }

    const auto keep = static_cast<std::uint32_t>(h_ + 1 - i);
    for (Index v : anchor) links_[v].resize(static_cast<std::uint32_t>(h_ + 1 - new_top_[v]), keep);
    rep.sizes.resize(static_cast<std::size_t>(i));
    for (int j = 0; j < i; ++j) {
        const auto& lst = lists[static_cast<std::size_t>(j)];
        Index prev = 0;
        for (Index v : lst) {
            next_at(prev, j) = v;
            prev = v;
        }
        next_at(prev, j) = 0;
        sizes_[static_cast<std::size_t>(j)] = lst.size();
        rep.sizes[static_cast<std::size_t>(j)] = lst.size();
        rep.touches += lst.size();
    }

    q = q_next_[0];
    for (std::size_t pos = 0; pos < rep.labeled; ++pos, q = q_next_[q]) label_[q] = 0;

    rebuild_touches_ += rep.touches;
    ++level_rebuilds_;
    return rep;
}

int WorkingTodoList::top_level(Key x) const {
    if (x < 1 || static_cast<std::size_t>(x) > n_) throw std::out_of_range("key outside universe");
    return top_of(static_cast<Index>(x));
}

std::vector<WorkingTodoList::Key> WorkingTodoList::level_keys(int i) const {
    if (i < 0 || i > h_) throw std::out_of_range("level index");
    std::vector<Key> out;
    out.reserve(sizes_[static_cast<std::size_t>(i)]);
    for (Index v = next_at(0, i); v != 0; v = next_at(v, i)) out.push_back(static_cast<Key>(v));
    return out;
}

std::vector<WorkingTodoList::Key> WorkingTodoList::queue_order() const {
    std::vector<Key> out;
    out.reserve(n_);
    for (Index v = q_next_[0]; v != 0; v = q_next_[v]) out.push_back(static_cast<Key>(v));
    return out;
}

std::size_t WorkingTodoList::labeled_count() const {
    std::size_t c = 0;
    for (auto l : label_) c += l != 0;
    return c;
}

OpStats WorkingTodoList::stats() const {
    OpStats s;
    s.comparisons = less_.count();
    s.node_visits = visits_;
    s.rebuild_touches = rebuild_touches_;
    s.level_rebuilds = level_rebuilds_;
    return s;
}

void WorkingTodoList::reset_stats() {
    less_.reset();
    visits_ = 0;
    rebuild_touches_ = 0;
    level_rebuilds_ = 0;
}

void WorkingTodoList::validate() const {
    auto fail = [](const std::string& what) { throw std::logic_error("working todolist invariant: " + what); };

    if (static_cast<double>(sizes_[0]) > level0_budget()) fail("level 0 over budget");
    for (int i = 0; i <= h_; ++i) {
        std::size_t cnt = 0;
        Index prev = 0;
        bool prev_above = true;
        for (Index v = next_at(0, i); v != 0; v = next_at(v, i)) {
            if (v > n_) fail("link out of range");
            if (prev != 0 && prev >= v) fail("level " + std::to_string(i) + " not strictly sorted");
            if (top_of(v) > i) fail("key " + std::to_string(v) + " linked above its top level");
            ++cnt;
            if (i > 0) {
                const bool above = top_of(v) < i;
                if (!prev_above && !above) fail("property 3 at level " + std::to_string(i));
                prev_above = above;
            }
            prev = v;
        }
        if (cnt != sizes_[static_cast<std::size_t>(i)]) fail("size counter at level " + std::to_string(i));
    }
    // Sorted levels whose counts match the top-level census are nested.
    std::vector<std::size_t> census(static_cast<std::size_t>(h_ + 1), 0);
    for (std::size_t k = 1; k <= n_; ++k) {
        const int t = top_of(static_cast<Index>(k));
        if (t < 0 || t > h_) fail("key " + std::to_string(k) + " missing from the bottom level");
        ++census[static_cast<std::size_t>(t)];
    }
    std::size_t acc = 0;
    for (int i = 0; i <= h_; ++i) {
        acc += census[static_cast<std::size_t>(i)];
        if (acc != sizes_[static_cast<std::size_t>(i)]) fail("property 2 at level " + std::to_string(i));
    }
    if (sizes_[static_cast<std::size_t>(h_)] != n_) fail("property 4: bottom level incomplete");

    std::vector<char> seen(n_ + 1, 0);
    std::size_t steps = 0;
    for (Index v = q_next_[0], p = 0; v != 0; p = v, v = q_next_[v]) {
        if (v > n_ || seen[v]) fail("queue revisits a key");
        if (q_prev_[v] != p) fail("queue back link");
        seen[v] = 1;
        if (++steps > n_) fail("queue cycle");
    }
    if (steps != n_) fail("queue misses keys");
    if (labeled_count() != 0) fail("labels left after rebuild");
}

void WorkingTodoList::validate_working_set(std::span<const std::size_t> w) const {
    if (w.size() != n_ + 1) throw std::invalid_argument("working-set vector must have n + 1 entries");
    for (std::size_t k = 1; k <= n_; ++k) {
        int need = 0;
        while (static_cast<double>(w[k]) > policy_.power(need)) ++need;
        if (top_of(static_cast<Index>(k)) > need) {
            throw std::logic_error("working todolist invariant: key " + std::to_string(k) + " with w=" +
                                   std::to_string(w[k]) + " should reach level " + std::to_string(need));
        }
    }
}

}  // namespace todolist
