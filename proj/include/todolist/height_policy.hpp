#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace todolist {

/// Level-size thresholds (2 - eps)^i and the global-rebuild rules that keep
/// the height within one of ceil(log_{2-eps} n).
///
/// Powers are produced by iterated multiplication and cached; every
/// threshold test in the library goes through this table so the engines
/// agree bit-for-bit on when a rebuild fires.
class HeightPolicy {
public:
    /// Total slots may not exceed kSlimFactor * n at rest.
    static constexpr double kSlimFactor = 3.0;

    explicit HeightPolicy(double epsilon) : HeightPolicy(epsilon, 2.0 - epsilon) {}

    /// Thresholds over an arbitrary base; the working variant uses 2 - eps/2
    /// for picking its rebuild level.
    HeightPolicy(double epsilon, double base) : epsilon_(epsilon), base_(base), powers_{1.0} {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
        }
    }

    double epsilon() const { return epsilon_; }
    double base() const { return base_; }

    /// base^i for i >= 0.
    double power(int i) const {
        while (static_cast<int>(powers_.size()) <= i) powers_.push_back(powers_.back() * base_);
        return powers_[static_cast<std::size_t>(i)];
    }

    /// Smallest k with base^k >= n, i.e. ceil(log_base n) evaluated on the
    /// same table as the triggers. Zero for n <= 1.
    int ceil_log(std::size_t n) const {
        int k = 0;
        while (power(k) < static_cast<double>(n)) ++k;
        return k;
    }

    /// Rule 1: n must not exceed base^h, otherwise the level-h list cannot
    /// anchor a partial rebuild.
    bool needs_grow(std::size_t n, int h) const { return static_cast<double>(n) > power(h); }

    int grown_height(std::size_t n, int h) const {
        while (needs_grow(n, h)) ++h;
        return h;
    }

    /// Rule 3: n < ceil(base^(h-2)). Negative exponents give a threshold of 1.
    bool needs_shrink(std::size_t n, int h) const {
        if (h == 0) return false;
        const double t = h >= 2 ? std::ceil(power(h - 2)) : 1.0;
        return static_cast<double>(n) < t;
    }

    int shrunk_height(std::size_t n, int h) const {
        while (needs_shrink(n, h)) --h;
        return h;
    }

    /// Rule 2: total occupied slots over levels 0..h exceed c * n.
    bool needs_slim(std::size_t slots, std::size_t n) const {
        return static_cast<double>(slots) > kSlimFactor * static_cast<double>(n);
    }

    /// Smallest i with sizes[i] <= base^i, or -1 if none (never happens while
    /// the height rules hold, since sizes.back() == n <= base^h).
    int rebuild_index(std::span<const std::size_t> sizes) const {
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (static_cast<double>(sizes[i]) <= power(static_cast<int>(i))) return static_cast<int>(i);
        }
        return -1;
    }

private:
    double epsilon_;
    double base_;
    mutable std::vector<double> powers_;
};

}  // namespace todolist
