#ifndef FAIRAUDIT_SPACE_HPP
#define FAIRAUDIT_SPACE_HPP

#include <fairaudit/feature_set.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

/// Feature values are booleans (stored as 0/1) or small integers.
using Value = int;

enum class ValueKind
{
    Boolean,
    Integer
};

struct Feature
{
    std::string name;
    ValueKind kind = ValueKind::Boolean;
    std::vector<Value> domain;
    bool is_protected = false;

    static auto boolean(std::string name, bool is_protected = false) -> Feature;
    static auto integer(std::string name, std::vector<Value> domain, bool is_protected = false) -> Feature;

    /// Position of v in the declared domain order.
    [[nodiscard]] auto domain_index(Value v) const -> std::optional<std::size_t>;
    [[nodiscard]] auto render(Value v) const -> std::string;

    friend auto operator==(const Feature &, const Feature &) -> bool = default;
};

/// A full assignment of one value per feature.
class Instance
{
public:
    Instance() = default;
    explicit Instance(std::vector<Value> values) : _values(std::move(values)) {}
    Instance(std::initializer_list<Value> values) : _values(values) {}

    [[nodiscard]] auto values() const -> const std::vector<Value> & { return _values; }
    [[nodiscard]] auto size() const -> std::size_t { return _values.size(); }
    [[nodiscard]] auto operator[](std::size_t i) const -> Value { return _values[i]; }

    /// "(v0,v1,...)" with booleans as 0/1.
    [[nodiscard]] auto to_string() const -> std::string;

    friend auto operator==(const Instance &, const Instance &) -> bool = default;

private:
    std::vector<Value> _values;
};

/**
 * Named finite-domain features with a protected/unprotected partition.
 *
 * Instances are ordered canonically: lexicographically by feature index,
 * comparing values by their position in the declared domain. The rank of an
 * instance is its position in that order over the full cartesian product.
 */
class FeatureSpace
{
public:
    FeatureSpace() = default;
    explicit FeatureSpace(std::vector<Feature> features);

    [[nodiscard]] auto size() const -> std::size_t { return _features.size(); }
    [[nodiscard]] auto feature(std::size_t i) const -> const Feature & { return _features.at(i); }
    [[nodiscard]] auto features() const -> const std::vector<Feature> & { return _features; }
    [[nodiscard]] auto index_of(const std::string & name) const -> std::optional<std::size_t>;

    [[nodiscard]] auto all() const -> FeatureSet { return FeatureSet::all(size()); }
    [[nodiscard]] auto protected_set() const -> FeatureSet { return _protected; }
    [[nodiscard]] auto unprotected_set() const -> FeatureSet { return all() - _protected; }

    /// |F|, or nullopt when the product overflows 64 bits.
    [[nodiscard]] auto full_size() const -> std::optional<std::uint64_t>;

    [[nodiscard]] auto contains(const Instance & x) const -> bool;
    /// Throws ContractError when x has the wrong arity or an out-of-domain value.
    auto validate(const Instance & x) const -> void;

    [[nodiscard]] auto rank(const Instance & x) const -> std::uint64_t;
    [[nodiscard]] auto unrank(std::uint64_t r) const -> Instance;
    /// Canonical comparison of two well-formed instances.
    [[nodiscard]] auto less(const Instance & a, const Instance & b) const -> bool;

    /// Copy of this space whose protected set is exactly `prot`.
    [[nodiscard]] auto with_protected(FeatureSet prot) const -> FeatureSpace;

    [[nodiscard]] auto names(FeatureSet s) const -> std::vector<std::string>;
    /// "{a,b}" using feature names, in index order.
    [[nodiscard]] auto render(FeatureSet s) const -> std::string;

    friend auto operator==(const FeatureSpace &, const FeatureSpace &) -> bool = default;

private:
    std::vector<Feature> _features;
    FeatureSet _protected;
};

/// A set of (feature, value) literals.
class PartialAssignment
{
public:
    PartialAssignment() = default;

    /// x restricted to the features in s.
    static auto restrict(const Instance & x, FeatureSet s) -> PartialAssignment;

    auto assign(std::size_t feature, Value v) -> void { _literals[feature] = v; }
    [[nodiscard]] auto literals() const -> const std::map<std::size_t, Value> & { return _literals; }
    [[nodiscard]] auto features() const -> FeatureSet;
    [[nodiscard]] auto matches(const Instance & y) const -> bool;

    friend auto operator==(const PartialAssignment &, const PartialAssignment &) -> bool = default;

private:
    std::map<std::size_t, Value> _literals;
};

} // namespace fairaudit

#endif
