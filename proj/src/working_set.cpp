#include "todolist/working_set.hpp"

#include <algorithm>

namespace todolist {

std::size_t working_set_number(std::span<const std::int64_t> history, std::int64_t x, std::size_t universe) {
    const auto last = std::find(history.rbegin(), history.rend(), x);
    if (last == history.rend()) return universe;
    std::vector<std::int64_t> suffix(history.end() - (last - history.rbegin()) - 1, history.end());
    std::sort(suffix.begin(), suffix.end());
    return static_cast<std::size_t>(std::unique(suffix.begin(), suffix.end()) - suffix.begin());
}

WorkingSetTracker::WorkingSetTracker(std::size_t universe, std::size_t expected_accesses)
    : universe_(universe), tree_(std::max<std::size_t>(expected_accesses, 16) + 1, 0),
      marks_(tree_.size() - 1, 0) {}

void WorkingSetTracker::add(std::size_t pos, std::int64_t d) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += d;
}

std::int64_t WorkingSetTracker::prefix(std::size_t pos) const {
    std::int64_t s = 0;
    for (std::size_t i = pos; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
}

void WorkingSetTracker::grow() {
    marks_.resize(marks_.size() * 2, 0);
    tree_.assign(marks_.size() + 1, 0);
    for (std::size_t i = 0; i < marks_.size(); ++i) {
        if (marks_[i]) add(i, 1);
    }
}

std::size_t WorkingSetTracker::peek(std::int64_t x) const {
    const auto it = last_.find(x);
    if (it == last_.end()) return universe_;
    return static_cast<std::size_t>(prefix(time_) - prefix(it->second));
}

std::size_t WorkingSetTracker::observe(std::int64_t x) {
    const std::size_t w = peek(x);
    if (time_ == marks_.size()) grow();
    auto [it, fresh] = last_.try_emplace(x, time_);
    if (!fresh) {
        marks_[it->second] = 0;
        add(it->second, -1);
        it->second = time_;
    }
    marks_[time_] = 1;
    add(time_, 1);
    ++time_;
    return w;
}

std::vector<std::size_t> WorkingSetTracker::snapshot() const {
    std::vector<std::size_t> w(universe_ + 1, universe_);
    w[0] = 0;
    // Walking marks from the latest access backwards visits keys in recency
    // order, so the k-th mark found has working-set number k.
    std::vector<std::int64_t> key_at(time_, 0);
    for (const auto& [key, t] : last_) key_at[t] = key;
    std::size_t rank = 0;
    for (std::size_t t = time_; t-- > 0;) {
        if (!marks_[t]) continue;
        ++rank;
        const auto k = key_at[t];
        if (k >= 1 && static_cast<std::size_t>(k) <= universe_) w[static_cast<std::size_t>(k)] = rank;
    }
    return w;
}

}  // namespace todolist
