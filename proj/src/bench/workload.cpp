#include "todolist/bench/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace todolist::bench {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(gen_());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
        v = gen_();
    } while (v >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % range);
}

Workload make_workload(const WorkloadSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("workload needs n >= 1");
    Rng rng(spec.seed);
    const auto n = static_cast<std::int64_t>(spec.n);
    Workload w;
    w.inserts.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) w.inserts.push_back(5 * rng.uniform(0, n - 1));
    const std::size_t m = spec.search_multiplier * spec.n;
    w.searches.reserve(m);
    for (std::size_t i = 0; i < m; ++i) w.searches.push_back(rng.uniform(-2, 5 * n + 3));
    return w;
}

std::string_view to_string(OpKind k) {
    switch (k) {
        case OpKind::insert: return "insert";
        case OpKind::erase: return "erase";
        case OpKind::search: return "search";
    }
    return "?";
}

std::vector<Op> make_mixed_ops(std::size_t count, std::int64_t key_hi, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Op> ops;
    ops.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto r = rng.uniform(0, 3);
        const auto kind = r < 2 ? OpKind::insert : r == 2 ? OpKind::erase : OpKind::search;
        ops.push_back(Op{kind, rng.uniform(0, key_hi)});
    }
    return ops;
}

namespace {

template <typename T>
T parse_arg(std::string_view text, std::string_view whole) {
    T v{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument("bad pattern argument in '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

AccessPattern parse_pattern(std::string_view text) {
    AccessPattern p;
    std::string_view name = text;
    std::string_view arg;
    if (const auto open = text.find('('); open != std::string_view::npos) {
        if (text.back() != ')') throw std::invalid_argument("bad pattern '" + std::string(text) + "'");
        name = text.substr(0, open);
        arg = text.substr(open + 1, text.size() - open - 2);
    }
    if (name == "uniform" && arg.empty()) {
        p.kind = AccessPattern::Kind::uniform;
    } else if (name == "repeat-burst" && arg.empty()) {
        p.kind = AccessPattern::Kind::repeat_burst;
    } else if (name == "zipf") {
        p.kind = AccessPattern::Kind::zipf;
        if (!arg.empty()) p.zipf_s = parse_arg<double>(arg, text);
        if (!(p.zipf_s > 0.0)) throw std::invalid_argument("zipf exponent must be positive");
    } else if (name == "windowed") {
        p.kind = AccessPattern::Kind::windowed;
        if (!arg.empty()) p.window = parse_arg<std::size_t>(arg, text);
        if (p.window == 0) throw std::invalid_argument("window must be positive");
    } else {
        throw std::invalid_argument("unknown pattern '" + std::string(text) +
                                    "'; expected uniform, zipf(s), windowed(k) or repeat-burst");
    }
    return p;
}

std::string to_string(const AccessPattern& p) {
    switch (p.kind) {
        case AccessPattern::Kind::uniform: return "uniform";
        case AccessPattern::Kind::repeat_burst: return "repeat-burst";
        case AccessPattern::Kind::zipf: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "zipf(%g)", p.zipf_s);
            return buf;
        }
        case AccessPattern::Kind::windowed: return "windowed(" + std::to_string(p.window) + ")";
    }
    return "?";
}

std::vector<std::int64_t> make_access_sequence(std::size_t n, const AccessPattern& p, std::size_t length,
                                               std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("universe must be non-empty");
    Rng rng(seed);
    const auto nn = static_cast<std::int64_t>(n);
    std::vector<std::int64_t> out;
    out.reserve(length);

    switch (p.kind) {
        case AccessPattern::Kind::uniform:
            for (std::size_t t = 0; t < length; ++t) out.push_back(rng.uniform(1, nn));
            break;

        case AccessPattern::Kind::repeat_burst:
            while (out.size() < length) {
                const auto x = rng.uniform(1, nn);
                out.push_back(x);
                if (out.size() < length) out.push_back(x);
            }
            break;

        case AccessPattern::Kind::windowed: {
            const auto k = static_cast<std::int64_t>(std::min(p.window, n));
            std::int64_t start = rng.uniform(0, nn - 1);
            for (std::size_t t = 0; t < length; ++t) {
                if (t > 0 && t % static_cast<std::size_t>(k) == 0) start = (start + 1) % nn;
                out.push_back((start + rng.uniform(0, k - 1)) % nn + 1);
            }
            break;
        }

        case AccessPattern::Kind::zipf: {
            std::vector<std::int64_t> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::int64_t>(i) + 1;
            for (std::size_t i = n; i > 1; --i) {
                std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
            }
            std::vector<double> cdf(n);
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                acc += std::pow(static_cast<double>(r + 1), -p.zipf_s);
                cdf[r] = acc;
            }
            for (std::size_t t = 0; t < length; ++t) {
                const double u = rng.unit() * acc;
                auto r = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                if (r >= n) r = n - 1;
                out.push_back(perm[r]);
            }
            break;
        }
    }
    return out;
}

}  // namespace todolist::bench
