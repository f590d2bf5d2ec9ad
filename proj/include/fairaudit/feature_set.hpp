#ifndef FAIRAUDIT_FEATURE_SET_HPP
#define FAIRAUDIT_FEATURE_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace fairaudit {

/// Upper bound on the number of features a FeatureSpace may declare.
inline constexpr std::size_t max_features = 64;

/**
 * A subset of feature indices, stored as a 64-bit mask.
 *
 * Ordering is the canonical explanation order: by size first, then by the
 * sorted list of member indices compared lexicographically.
 */
class FeatureSet
{
public:
    constexpr FeatureSet() = default;
    constexpr explicit FeatureSet(std::uint64_t mask) : _mask(mask) {}

    static auto all(std::size_t n) -> FeatureSet;
    static auto of(std::initializer_list<std::size_t> members) -> FeatureSet;
    static auto of(const std::vector<std::size_t> & members) -> FeatureSet;

    [[nodiscard]] constexpr auto mask() const -> std::uint64_t { return _mask; }
    [[nodiscard]] constexpr auto empty() const -> bool { return _mask == 0; }
    [[nodiscard]] constexpr auto size() const -> std::size_t { return static_cast<std::size_t>(std::popcount(_mask)); }
    [[nodiscard]] constexpr auto contains(std::size_t i) const -> bool { return (_mask >> i) & 1U; }

    [[nodiscard]] constexpr auto with(std::size_t i) const -> FeatureSet { return FeatureSet{_mask | (std::uint64_t{1} << i)}; }
    [[nodiscard]] constexpr auto without(std::size_t i) const -> FeatureSet { return FeatureSet{_mask & ~(std::uint64_t{1} << i)}; }

    [[nodiscard]] constexpr auto intersects(FeatureSet o) const -> bool { return (_mask & o._mask) != 0; }
    [[nodiscard]] constexpr auto subset_of(FeatureSet o) const -> bool { return (_mask & ~o._mask) == 0; }

    [[nodiscard]] auto members() const -> std::vector<std::size_t>;

    friend constexpr auto operator|(FeatureSet a, FeatureSet b) -> FeatureSet { return FeatureSet{a._mask | b._mask}; }
    friend constexpr auto operator&(FeatureSet a, FeatureSet b) -> FeatureSet { return FeatureSet{a._mask & b._mask}; }
    friend constexpr auto operator-(FeatureSet a, FeatureSet b) -> FeatureSet { return FeatureSet{a._mask & ~b._mask}; }
    friend constexpr auto operator==(FeatureSet a, FeatureSet b) -> bool { return a._mask == b._mask; }

    friend auto operator<=>(FeatureSet a, FeatureSet b) -> std::strong_ordering;

private:
    std::uint64_t _mask = 0;
};

} // namespace fairaudit

#endif
