#include <fairaudit/space.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fairaudit {

namespace {

auto valid_identifier(const std::string & s) -> bool
{
    if (s.empty() || ! (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

// Grammar keywords cannot double as feature names.
auto reserved(const std::string & s) -> bool
{
    static const std::set<std::string> words{"true", "false", "not", "and", "or", "implies", "iff", "le", "lt"};
    return words.contains(s);
}

} // namespace

auto Feature::boolean(std::string name, bool is_protected) -> Feature
{
    return Feature{std::move(name), ValueKind::Boolean, {0, 1}, is_protected};
}

auto Feature::integer(std::string name, std::vector<Value> domain, bool is_protected) -> Feature
{
    return Feature{std::move(name), ValueKind::Integer, std::move(domain), is_protected};
}

auto Feature::domain_index(Value v) const -> std::optional<std::size_t>
{
    auto it = std::find(domain.begin(), domain.end(), v);
    if (it == domain.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
}

auto Feature::render(Value v) const -> std::string
{
    if (kind == ValueKind::Boolean)
        return v ? "true" : "false";
    return std::to_string(v);
}

auto Instance::to_string() const -> std::string
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < _values.size(); ++i)
        os << (i ? "," : "") << _values[i];
    os << ')';
    return os.str();
}

FeatureSpace::FeatureSpace(std::vector<Feature> features) :
    _features(std::move(features))
{
    if (_features.empty())
        throw SemanticError("a feature space needs at least one feature");
    if (_features.size() > max_features)
        throw SemanticError("at most " + std::to_string(max_features) + " features are supported");

    std::set<std::string> seen;
    for (std::size_t i = 0; i < _features.size(); ++i) {
        const auto & f = _features[i];
        if (! valid_identifier(f.name) || reserved(f.name))
            throw SemanticError("invalid feature name '" + f.name + "'");
        if (! seen.insert(f.name).second)
            throw SemanticError("duplicate feature name '" + f.name + "'");
        if (f.domain.empty())
            throw SemanticError("feature '" + f.name + "' has an empty domain");
        if (f.domain.size() > 256)
            throw SemanticError("feature '" + f.name + "' has more than 256 domain values");
        std::set<Value> distinct(f.domain.begin(), f.domain.end());
        if (distinct.size() != f.domain.size())
            throw SemanticError("feature '" + f.name + "' has repeated domain values");
        if (f.kind == ValueKind::Boolean && std::any_of(f.domain.begin(), f.domain.end(), [](Value v) { return v != 0 && v != 1; }))
            throw SemanticError("boolean feature '" + f.name + "' has a non-boolean domain value");
        if (f.is_protected)
            _protected = _protected.with(i);
    }
}

auto FeatureSpace::index_of(const std::string & name) const -> std::optional<std::size_t>
{
    for (std::size_t i = 0; i < _features.size(); ++i)
        if (_features[i].name == name)
            return i;
    return std::nullopt;
}

auto FeatureSpace::full_size() const -> std::optional<std::uint64_t>
{
    std::uint64_t total = 1;
    for (const auto & f : _features) {
        if (__builtin_mul_overflow(total, f.domain.size(), &total))
            return std::nullopt;
    }
    return total;
}

auto FeatureSpace::contains(const Instance & x) const -> bool
{
    if (x.size() != size())
        return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (! _features[i].domain_index(x[i]))
            return false;
    return true;
}

auto FeatureSpace::validate(const Instance & x) const -> void
{
    if (x.size() != size())
        throw ContractError("instance " + x.to_string() + " has " + std::to_string(x.size()) +
            " values, expected " + std::to_string(size()));
    for (std::size_t i = 0; i < size(); ++i)
        if (! _features[i].domain_index(x[i]))
            throw ContractError("value " + std::to_string(x[i]) + " is outside the domain of feature '" +
                _features[i].name + "'");
}

auto FeatureSpace::rank(const Instance & x) const -> std::uint64_t
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        auto idx = _features[i].domain_index(x[i]);
        if (! idx)
            throw ContractError("instance " + x.to_string() + " is not in the feature space");
        r = r * _features[i].domain.size() + *idx;
    }
    return r;
}

auto FeatureSpace::unrank(std::uint64_t r) const -> Instance
{
    std::vector<Value> values(size());
    for (std::size_t i = size(); i-- > 0;) {
        auto d = _features[i].domain.size();
        values[i] = _features[i].domain[r % d];
        r /= d;
    }
    return Instance{std::move(values)};
}

auto FeatureSpace::less(const Instance & a, const Instance & b) const -> bool
{
    return rank(a) < rank(b);
}

auto FeatureSpace::with_protected(FeatureSet prot) const -> FeatureSpace
{
    auto copy = *this;
    for (std::size_t i = 0; i < copy._features.size(); ++i)
        copy._features[i].is_protected = prot.contains(i);
    copy._protected = prot & all();
    return copy;
}

auto FeatureSpace::names(FeatureSet s) const -> std::vector<std::string>
{
    std::vector<std::string> out;
    for (auto i : s.members())
        out.push_back(_features.at(i).name);
    return out;
}

auto FeatureSpace::render(FeatureSet s) const -> std::string
{
    std::string out = "{";
    bool first = true;
    for (const auto & n : names(s)) {
        out += (first ? "" : ",") + n;
        first = false;
    }
    return out + "}";
}

auto PartialAssignment::restrict(const Instance & x, FeatureSet s) -> PartialAssignment
{
    PartialAssignment p;
    for (auto i : s.members())
        p.assign(i, x[i]);
    return p;
}

auto PartialAssignment::features() const -> FeatureSet
{
    FeatureSet s;
    for (const auto & [i, v] : _literals)
        s = s.with(i);
    return s;
}

auto PartialAssignment::matches(const Instance & y) const -> bool
{
    return std::all_of(_literals.begin(), _literals.end(), [&](const auto & lit) {
        return lit.first < y.size() && y[lit.first] == lit.second;
    });
}

} // namespace fairaudit
