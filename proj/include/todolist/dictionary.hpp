#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "todolist/stats.hpp"

namespace todolist {

/// What every ordered dictionary in the library provides. Static structures
/// satisfy it too; their insert and erase throw std::logic_error.
template <typename D>
concept OrderedDictionary = requires(D d, const D cd, const typename D::key_type& k) {
    { d.insert(k) } -> std::same_as<bool>;
    { d.erase(k) } -> std::same_as<bool>;
    { cd.contains(k) } -> std::same_as<bool>;
    { cd.successor(k) } -> std::same_as<std::optional<typename D::key_type>>;
    { cd.find_predecessor(k) } -> std::same_as<SearchOutcome<typename D::key_type>>;
    { cd.stats() } -> std::same_as<OpStats>;
    { cd.size() } -> std::convertible_to<std::size_t>;
    d.reset_stats();
};

/// Runtime-polymorphic dictionary over 64-bit keys, used where the structure
/// is picked by name.
class Dictionary {
public:
    using Key = std::int64_t;

    virtual ~Dictionary() = default;

    virtual std::string_view id() const = 0;
    /// Static structures are bulk-built and reject insert/erase.
    virtual bool is_static() const = 0;
    virtual void build(std::vector<Key> sorted_distinct) = 0;

    virtual bool insert(Key x) = 0;
    virtual bool erase(Key x) = 0;
    virtual bool contains(Key x) const = 0;
    virtual std::optional<Key> successor(Key x) const = 0;
    virtual SearchOutcome<Key> find_predecessor(Key x) const = 0;

    virtual std::size_t size() const = 0;
    virtual OpStats stats() const = 0;
    virtual void reset_stats() = 0;
    /// Structural self-check; a no-op where the structure has none.
    virtual void validate() const {}
};

/// Valid ids for make_dictionary, in a stable order.
const std::vector<std::string>& structure_ids();

/// True for the ids whose behaviour depends on epsilon.
bool uses_epsilon(std::string_view id);

/// Creates a structure by id. `epsilon` applies to todolists and `seed` to
/// skiplists. Throws std::invalid_argument for an unknown id, listing the
/// valid ones.
std::unique_ptr<Dictionary> make_dictionary(std::string_view id, double epsilon, std::uint64_t seed);

/// Reference todolist with its delete-time neighbor repair switched off, so
/// the neighbor property can break. For exercising the differential checker.
std::unique_ptr<Dictionary> make_faulty_todolist(double epsilon);

}  // namespace todolist
