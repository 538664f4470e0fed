#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>

namespace todolist {

/// Capacity for a table holding `height` entries: the smallest power of two
/// >= height.
constexpr std::size_t link_capacity(std::size_t height) {
    std::size_t c = 1;
    while (c < height) c <<= 1;
    return c;
}

/// Per-element table of level links. Capacity is a power of two kept between
/// height and 2 * height: growth past capacity doubles it, and shrinking
/// below half of it reallocates to fit.
template <typename T>
class LinkTable {
public:
    struct ResizeEffect {
        bool grew = false;        // reallocated to a larger table
        bool shrank = false;      // reallocated to a smaller table
        std::uint32_t copied = 0;  // entries carried into the new table
        std::int64_t capacity_delta = 0;
    };

    std::uint32_t height() const { return height_; }
    std::uint32_t capacity() const { return capacity_; }

    T& operator[](std::size_t d) { return slots_[d]; }
    const T& operator[](std::size_t d) const { return slots_[d]; }

    /// Sets the height, preserving entries [0, keep). Entries above the old
    /// height are value-initialized.
    ResizeEffect resize(std::uint32_t height, std::uint32_t keep) {
        ResizeEffect fx;
        keep = std::min({keep, height_, height});
        const bool grow = height > capacity_;
        const bool shrink = !grow && 2 * height < capacity_;
        if (grow || shrink) {
            const auto cap = static_cast<std::uint32_t>(link_capacity(height));
            auto table = std::make_unique<T[]>(cap);
            std::copy_n(slots_.get(), keep, table.get());
            fx.grew = grow && capacity_ != 0;
            fx.shrank = shrink;
            fx.copied = keep;
            fx.capacity_delta = static_cast<std::int64_t>(cap) - static_cast<std::int64_t>(capacity_);
            slots_ = std::move(table);
            capacity_ = cap;
        }
        for (std::uint32_t d = height_; d < height; ++d) slots_[d] = T{};
        height_ = height;
        return fx;
    }

private:
    std::unique_ptr<T[]> slots_;
    std::uint32_t height_ = 0;
    std::uint32_t capacity_ = 0;
};

}  // namespace todolist
