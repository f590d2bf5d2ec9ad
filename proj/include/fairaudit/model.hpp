#ifndef FAIRAUDIT_MODEL_HPP
#define FAIRAUDIT_MODEL_HPP

#include <fairaudit/expr.hpp>
#include <fairaudit/feature_set.hpp>
#include <fairaudit/space.hpp>

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

/// Sets of constrained instances, indexed by position in F[C].
using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct Limits
{
    /// Largest |F| that enumerate_space will walk.
    std::uint64_t max_instances = std::uint64_t{1} << 24;
    /// Largest number of features for exhaustive subset scans.
    std::size_t max_subset_features = 20;
};

struct Constraint
{
    Expr expr;
    FeatureSet scope;

    explicit Constraint(Expr e) : expr(std::move(e)), scope(fairaudit::scope(expr)) {}

    friend auto operator==(const Constraint &, const Constraint &) -> bool = default;
};

class ConstraintSet
{
public:
    ConstraintSet() = default;
    explicit ConstraintSet(std::vector<Expr> exprs);

    [[nodiscard]] auto constraints() const -> const std::vector<Constraint> & { return _constraints; }
    [[nodiscard]] auto size() const -> std::size_t { return _constraints.size(); }
    [[nodiscard]] auto empty() const -> bool { return _constraints.empty(); }

    [[nodiscard]] auto satisfied_by(std::span<const Value> values) const -> bool;
    /// Index of the first constraint x violates.
    [[nodiscard]] auto first_violated(std::span<const Value> values) const -> std::optional<std::size_t>;

    friend auto operator==(const ConstraintSet &, const ConstraintSet &) -> bool = default;

private:
    std::vector<Constraint> _constraints;
};

/**
 * F[C]: every instance of the feature space satisfying all constraints,
 * materialized in canonical order.
 *
 * For each literal (feature i = j-th domain value) a bitset over F[C]
 * marks the instances carrying it, so the coverage of a partial assignment
 * is the intersection of its literal bitsets.
 */
class ConstrainedSpace
{
public:
    ConstrainedSpace(FeatureSpace space, ConstraintSet constraints, std::vector<Instance> instances);

    [[nodiscard]] auto space() const -> const FeatureSpace & { return _space; }
    [[nodiscard]] auto constraints() const -> const ConstraintSet & { return _constraints; }
    [[nodiscard]] auto instances() const -> const std::vector<Instance> & { return _instances; }
    [[nodiscard]] auto size() const -> std::size_t { return _instances.size(); }
    [[nodiscard]] auto empty() const -> bool { return _instances.empty(); }
    [[nodiscard]] auto instance(std::size_t k) const -> const Instance & { return _instances.at(k); }

    [[nodiscard]] auto index_of(const Instance & x) const -> std::optional<std::size_t>;
    [[nodiscard]] auto contains(const Instance & x) const -> bool { return index_of(x).has_value(); }

    /// Domain position of feature f in the k-th instance.
    [[nodiscard]] auto code(std::size_t k, std::size_t f) const -> std::uint8_t { return _codes[k * _space.size() + f]; }
    /// Features on which instances j and k differ.
    [[nodiscard]] auto difference(std::size_t j, std::size_t k) const -> FeatureSet;

    [[nodiscard]] auto literal_bits(std::size_t f, std::size_t domain_index) const -> const Bitset &;
    [[nodiscard]] auto everything() const -> Bitset { return Bitset(size()).set(); }

    /// Instances agreeing with x on s, as a bitset over F[C]. x need only be in F.
    [[nodiscard]] auto coverage_bits(const Instance & x, FeatureSet s) const -> Bitset;

private:
    FeatureSpace _space;
    ConstraintSet _constraints;
    std::vector<Instance> _instances;
    std::vector<std::uint64_t> _ranks;
    std::vector<std::uint8_t> _codes;
    std::vector<std::vector<Bitset>> _literals;
};

auto enumerate_space(const FeatureSpace & space, const ConstraintSet & constraints, const Limits & limits = {})
    -> ConstrainedSpace;

/// { y in F[C] : y_S = x_S }, in canonical order. Requires x in F[C].
auto coverage(const ConstrainedSpace & cs, const Instance & x, FeatureSet s) -> std::vector<Instance>;

enum class ScopeProfile
{
    None,
    OnlyProtected,
    OnlyUnprotected,
    Separate,
    Crossing
};

auto to_string(ScopeProfile p) -> std::string;

/// Syntactic classification of where constraints sit relative to the
/// protected/unprotected partition. Constraints with empty scope are ignored.
auto constraint_scope_profile(const FeatureSpace & space, const ConstraintSet & constraints) -> ScopeProfile;

} // namespace fairaudit

#endif
