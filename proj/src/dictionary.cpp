#include "todolist/dictionary.hpp"

#include <stdexcept>

#include "todolist/baselines/balanced_tree.hpp"
#include "todolist/baselines/skiplist.hpp"
#include "todolist/baselines/sorted_array.hpp"
#include "todolist/linked_todolist.hpp"
#include "todolist/packed_todolist.hpp"

namespace todolist {

namespace {

using Key = Dictionary::Key;

static_assert(OrderedDictionary<PackedTodoList<Key>>);
static_assert(OrderedDictionary<LinkedTodoList<Key>>);
static_assert(OrderedDictionary<baselines::Skiplist<Key>>);
static_assert(OrderedDictionary<baselines::CachedSkiplist<Key>>);
static_assert(OrderedDictionary<baselines::SortedArray<Key>>);
static_assert(OrderedDictionary<baselines::BalancedTree<Key>>);

template <typename Impl, bool Static = false>
class Adapter final : public Dictionary {
public:
    template <typename... Args>
    Adapter(std::string_view id, Args&&... args) : id_(id), impl_(std::forward<Args>(args)...) {}

    std::string_view id() const override { return id_; }
    bool is_static() const override { return Static; }

    void build(std::vector<Key> sorted_distinct) override {
        if constexpr (Static) {
            impl_.build(std::move(sorted_distinct));
        } else {
            for (Key k : sorted_distinct) impl_.insert(k);
        }
    }

    bool insert(Key x) override { return impl_.insert(x); }
    bool erase(Key x) override { return impl_.erase(x); }
    bool contains(Key x) const override { return impl_.contains(x); }
    std::optional<Key> successor(Key x) const override { return impl_.successor(x); }
    SearchOutcome<Key> find_predecessor(Key x) const override { return impl_.find_predecessor(x); }

    std::size_t size() const override { return impl_.size(); }
    OpStats stats() const override { return impl_.stats(); }
    void reset_stats() override { impl_.reset_stats(); }

    void validate() const override {
        if constexpr (requires(const Impl& i) { i.validate(); }) impl_.validate();
    }

    Impl& impl() { return impl_; }

private:
    std::string id_;
    Impl impl_;
};

}  // namespace

const std::vector<std::string>& structure_ids() {
    static const std::vector<std::string> ids = {"todolist",       "todolist-linked", "skiplist",
                                                 "skiplist-cached", "sorted-array",   "balanced-tree"};
    return ids;
}

bool uses_epsilon(std::string_view id) { return id == "todolist" || id == "todolist-linked"; }

std::unique_ptr<Dictionary> make_dictionary(std::string_view id, double epsilon, std::uint64_t seed) {
    if (id == "todolist") return std::make_unique<Adapter<PackedTodoList<Key>>>(id, epsilon);
    if (id == "todolist-linked") return std::make_unique<Adapter<LinkedTodoList<Key>>>(id, epsilon);
    if (id == "skiplist") return std::make_unique<Adapter<baselines::Skiplist<Key>>>(id, seed);
    if (id == "skiplist-cached") return std::make_unique<Adapter<baselines::CachedSkiplist<Key>>>(id, seed);
    if (id == "sorted-array") return std::make_unique<Adapter<baselines::SortedArray<Key>, true>>(id);
    if (id == "balanced-tree") return std::make_unique<Adapter<baselines::BalancedTree<Key>, true>>(id);

    std::string valid;
    for (const auto& s : structure_ids()) valid += (valid.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown structure '" + std::string(id) + "'; valid ids: " + valid);
}

std::unique_ptr<Dictionary> make_faulty_todolist(double epsilon) {
    auto d = std::make_unique<Adapter<LinkedTodoList<Key>>>("todolist-linked", epsilon);
    d->impl().set_skip_delete_repair_for_testing(true);
    return d;
}

}  // namespace todolist
