#ifndef FAIRAUDIT_EXPLAIN_HPP
#define FAIRAUDIT_EXPLAIN_HPP

#include <fairaudit/classifier.hpp>
#include <fairaudit/feature_set.hpp>
#include <fairaudit/model.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

/**
 * A classifier's labels over F[C], with one bitset per class.
 *
 * Holds references: the constrained space and the classifier must outlive it.
 */
class Labeling
{
public:
    Labeling(const ConstrainedSpace & cs, const Classifier & k);

    [[nodiscard]] auto space() const -> const ConstrainedSpace & { return _cs; }
    [[nodiscard]] auto classifier() const -> const Classifier & { return _k; }
    [[nodiscard]] auto label(std::size_t k) const -> ClassLabel { return _labels[k]; }
    [[nodiscard]] auto labels() const -> const std::vector<ClassLabel> & { return _labels; }
    [[nodiscard]] auto members(ClassLabel c) const -> const Bitset & { return _by_class.at(c.value); }

private:
    const ConstrainedSpace & _cs;
    const Classifier & _k;
    std::vector<ClassLabel> _labels;
    std::vector<Bitset> _by_class;
};

/// kappa(x) = label, for x in F[C].
struct Decision
{
    Instance instance;
    std::size_t index = 0;
    ClassLabel label{};

    friend auto operator==(const Decision &, const Decision &) -> bool = default;
};

/// Throws ContractError when x is not in F[C].
auto make_decision(const Labeling & lab, const Instance & x) -> Decision;

enum class ExplanationKind
{
    WeakAxp,
    Axp,
    Pi
};

auto to_string(ExplanationKind k) -> std::string;

struct Explanation
{
    FeatureSet features;
    ExplanationKind kind = ExplanationKind::Axp;
    /// No protected feature in `features`.
    bool fair = true;
    std::size_t coverage_size = 0;

    friend auto operator==(const Explanation &, const Explanation &) -> bool = default;
};

auto is_weak_axp(const Labeling & lab, const Decision & d, FeatureSet s) -> bool;

/// coverage(x, B) is a subset of coverage(x, A).
auto subsumes(const ConstrainedSpace & cs, const Instance & x, FeatureSet a, FeatureSet b) -> bool;
/// coverage(x, B) is a proper subset of coverage(x, A).
auto strictly_subsumes(const ConstrainedSpace & cs, const Instance & x, FeatureSet a, FeatureSet b) -> bool;

/**
 * Membership table for the weak AXps of one decision, over all 2^n subsets.
 *
 * S is a weak AXp iff it hits the difference set of every constrained
 * instance with another label. The table marks every T containing such a
 * difference set (a superset-closure over the subset lattice); S is then
 * weak iff its complement is unmarked.
 */
class WeakAxpTable
{
public:
    WeakAxpTable(const Labeling & lab, const Decision & d, const Limits & limits = {});

    [[nodiscard]] auto contains(FeatureSet s) const -> bool;
    [[nodiscard]] auto feature_count() const -> std::size_t { return _n; }

private:
    std::size_t _n;
    std::vector<std::uint8_t> _blocked;
};

/// Subset-minimal weak AXps, ordered by size then member indices.
auto all_axps(const Labeling & lab, const Decision & d, const Limits & limits = {}) -> std::vector<Explanation>;

/// AXps not strictly subsumed by another AXp.
auto pi_explanations(const Labeling & lab, const Decision & d, const Limits & limits = {}) -> std::vector<Explanation>;

/// Keeps only the members of `axps` that no other member strictly subsumes.
auto select_pi(const ConstrainedSpace & cs, const Instance & x, const std::vector<Explanation> & axps)
    -> std::vector<Explanation>;

/// Deletion-based extraction: start from all features and drop each feature
/// of `order` in turn when the rest stays a weak AXp. Default order is
/// descending feature index.
auto one_axp(const Labeling & lab, const Decision & d, std::optional<std::vector<std::size_t>> order = std::nullopt)
    -> Explanation;

} // namespace fairaudit

#endif
