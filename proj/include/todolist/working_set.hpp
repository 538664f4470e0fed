#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace todolist {

/// Working-set number of x after `history`: the number of distinct keys
/// accessed since (and including) the last access to x, or `universe` if x
/// was never accessed. Linear in the history length.
std::size_t working_set_number(std::span<const std::int64_t> history, std::int64_t x, std::size_t universe);

/// Streaming working-set numbers in O(log m) per access.
///
/// A Fenwick tree over access times marks, for every key, only its latest
/// access; the distinct keys since x's last access are the marks in that
/// time suffix.
class WorkingSetTracker {
public:
    explicit WorkingSetTracker(std::size_t universe, std::size_t expected_accesses = 0);

    /// Working-set number of x right now.
    std::size_t peek(std::int64_t x) const;

    /// Returns the pre-access working-set number of x, then records the access.
    std::size_t observe(std::int64_t x);

    std::size_t accesses() const { return time_; }

    /// Current working-set numbers for keys 1..universe, indexed by key.
    std::vector<std::size_t> snapshot() const;

private:
    void add(std::size_t pos, std::int64_t d);
    std::int64_t prefix(std::size_t pos) const;  // sum over [0, pos)
    void grow();

    std::size_t universe_;
    std::size_t time_ = 0;
    std::vector<std::int64_t> tree_;
    std::vector<char> marks_;
    std::unordered_map<std::int64_t, std::size_t> last_;
};

}  // namespace todolist
