#include <fairaudit/model.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>

namespace fairaudit {

ConstraintSet::ConstraintSet(std::vector<Expr> exprs)
{
    _constraints.reserve(exprs.size());
    for (auto & e : exprs)
        _constraints.emplace_back(std::move(e));
}

auto ConstraintSet::satisfied_by(std::span<const Value> values) const -> bool
{
    return ! first_violated(values).has_value();
}

auto ConstraintSet::first_violated(std::span<const Value> values) const -> std::optional<std::size_t>
{
    for (std::size_t i = 0; i < _constraints.size(); ++i)
        if (! evaluate(_constraints[i].expr, values))
            return i;
    return std::nullopt;
}

ConstrainedSpace::ConstrainedSpace(FeatureSpace space, ConstraintSet constraints, std::vector<Instance> instances) :
    _space(std::move(space)),
    _constraints(std::move(constraints)),
    _instances(std::move(instances))
{
    const auto n = _space.size();
    const auto m = _instances.size();
    _ranks.reserve(m);
    _codes.resize(m * n);
    _literals.resize(n);
    for (std::size_t f = 0; f < n; ++f)
        _literals[f].assign(_space.feature(f).domain.size(), Bitset(m));

    for (std::size_t k = 0; k < m; ++k) {
        const auto & x = _instances[k];
        _space.validate(x);
        _ranks.push_back(_space.rank(x));
        if (k > 0 && _ranks[k - 1] >= _ranks[k])
            throw ContractError("constrained instances must be distinct and in canonical order");
        for (std::size_t f = 0; f < n; ++f) {
            auto d = *_space.feature(f).domain_index(x[f]);
            _codes[k * n + f] = static_cast<std::uint8_t>(d);
            _literals[f][d].set(k);
        }
    }
}

auto ConstrainedSpace::index_of(const Instance & x) const -> std::optional<std::size_t>
{
    if (! _space.contains(x))
        return std::nullopt;
    auto r = _space.rank(x);
    auto it = std::lower_bound(_ranks.begin(), _ranks.end(), r);
    if (it == _ranks.end() || *it != r)
        return std::nullopt;
    return static_cast<std::size_t>(it - _ranks.begin());
}

auto ConstrainedSpace::difference(std::size_t j, std::size_t k) const -> FeatureSet
{
    const auto n = _space.size();
    const auto * a = &_codes[j * n];
    const auto * b = &_codes[k * n];
    std::uint64_t mask = 0;
    for (std::size_t f = 0; f < n; ++f)
        if (a[f] != b[f])
            mask |= std::uint64_t{1} << f;
    return FeatureSet{mask};
}

auto ConstrainedSpace::literal_bits(std::size_t f, std::size_t domain_index) const -> const Bitset &
{
    return _literals.at(f).at(domain_index);
}

auto ConstrainedSpace::coverage_bits(const Instance & x, FeatureSet s) const -> Bitset
{
    auto bits = everything();
    for (auto f : s.members()) {
        auto d = _space.feature(f).domain_index(x[f]);
        if (! d)
            throw ContractError("instance " + x.to_string() + " is not in the feature space");
        bits &= _literals[f][*d];
    }
    return bits;
}

auto enumerate_space(const FeatureSpace & space, const ConstraintSet & constraints, const Limits & limits)
    -> ConstrainedSpace
{
    auto total = space.full_size();
    if (! total || *total > limits.max_instances)
        throw CapacityError("feature space has " + (total ? std::to_string(*total) : std::string{"more than 2^64"}) +
            " instances, above the enumeration cap of " + std::to_string(limits.max_instances));

    std::vector<Instance> kept;
    const auto n = space.size();
    std::vector<std::size_t> digits(n, 0);
    std::vector<Value> values(n);
    for (std::size_t f = 0; f < n; ++f)
        values[f] = space.feature(f).domain[0];

    for (std::uint64_t r = 0; r < *total; ++r) {
        if (constraints.satisfied_by(values))
            kept.emplace_back(values);
        // odometer increment, last feature fastest
        for (std::size_t f = n; f-- > 0;) {
            const auto & dom = space.feature(f).domain;
            if (++digits[f] < dom.size()) {
                values[f] = dom[digits[f]];
                break;
            }
            digits[f] = 0;
            values[f] = dom[0];
        }
    }
    return ConstrainedSpace{space, constraints, std::move(kept)};
}

auto coverage(const ConstrainedSpace & cs, const Instance & x, FeatureSet s) -> std::vector<Instance>
{
    if (! cs.contains(x))
        throw ContractError("coverage requires an instance of F[C], got " + x.to_string());
    auto bits = cs.coverage_bits(x, s);
    std::vector<Instance> out;
    for (auto k = bits.find_first(); k != Bitset::npos; k = bits.find_next(k))
        out.push_back(cs.instance(k));
    return out;
}

auto to_string(ScopeProfile p) -> std::string
{
    switch (p) {
    case ScopeProfile::None: return "NONE";
    case ScopeProfile::OnlyProtected: return "ONLY_P";
    case ScopeProfile::OnlyUnprotected: return "ONLY_N";
    case ScopeProfile::Separate: return "P_AND_N_SEPARATE";
    case ScopeProfile::Crossing: return "CROSSING";
    }
    return "?";
}

auto constraint_scope_profile(const FeatureSpace & space, const ConstraintSet & constraints) -> ScopeProfile
{
    const auto prot = space.protected_set();
    const auto unprot = space.unprotected_set();
    bool in_p = false, in_n = false;
    for (const auto & c : constraints.constraints()) {
        bool p = c.scope.intersects(prot), n = c.scope.intersects(unprot);
        if (p && n)
            return ScopeProfile::Crossing;
        in_p = in_p || p;
        in_n = in_n || n;
    }
    if (in_p && in_n)
        return ScopeProfile::Separate;
    if (in_p)
        return ScopeProfile::OnlyProtected;
    if (in_n)
        return ScopeProfile::OnlyUnprotected;
    return ScopeProfile::None;
}

} // namespace fairaudit
