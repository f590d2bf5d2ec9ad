#include <fairaudit/feature_set.hpp>

#include <algorithm>

namespace fairaudit {

auto FeatureSet::of(std::initializer_list<std::size_t> members) -> FeatureSet
{
    FeatureSet s;
    for (auto i : members)
        s = s.with(i);
    return s;
}

auto FeatureSet::all(std::size_t n) -> FeatureSet
{
    if (n >= 64)
        return FeatureSet{~std::uint64_t{0}};
    return FeatureSet{(std::uint64_t{1} << n) - 1};
}

auto FeatureSet::of(const std::vector<std::size_t> & members) -> FeatureSet
{
    FeatureSet s;
    for (auto i : members)
        s = s.with(i);
    return s;
}

auto FeatureSet::members() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto m = _mask; m != 0; m &= m - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

auto operator<=>(FeatureSet a, FeatureSet b) -> std::strong_ordering
{
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    auto am = a.members(), bm = b.members();
    return std::lexicographical_compare_three_way(am.begin(), am.end(), bm.begin(), bm.end());
}

} // namespace fairaudit
