#include <fairaudit/explain.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>

namespace fairaudit {

Labeling::Labeling(const ConstrainedSpace & cs, const Classifier & k) :
    _cs(cs),
    _k(k)
{
    if (k.space().size() != cs.space().size())
        throw ContractError("classifier and constrained space disagree on the number of features");
    _labels.reserve(cs.size());
    _by_class.assign(k.class_count(), Bitset(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto c = k.evaluate_unchecked(cs.instance(i).values());
        if (c.value >= k.class_count())
            throw InternalError("classifier produced a label outside its class range");
        _labels.push_back(c);
        _by_class[c.value].set(i);
    }
}

auto make_decision(const Labeling & lab, const Instance & x) -> Decision
{
    auto idx = lab.space().index_of(x);
    if (! idx)
        throw ContractError("decision instance " + x.to_string() + " is not in the constrained space");
    return Decision{x, *idx, lab.label(*idx)};
}

auto to_string(ExplanationKind k) -> std::string
{
    switch (k) {
    case ExplanationKind::WeakAxp: return "WEAK_AXP";
    case ExplanationKind::Axp: return "AXP";
    case ExplanationKind::Pi: return "PI";
    }
    return "?";
}

auto is_weak_axp(const Labeling & lab, const Decision & d, FeatureSet s) -> bool
{
    return lab.space().coverage_bits(d.instance, s).is_subset_of(lab.members(d.label));
}

auto subsumes(const ConstrainedSpace & cs, const Instance & x, FeatureSet a, FeatureSet b) -> bool
{
    return cs.coverage_bits(x, b).is_subset_of(cs.coverage_bits(x, a));
}

auto strictly_subsumes(const ConstrainedSpace & cs, const Instance & x, FeatureSet a, FeatureSet b) -> bool
{
    return cs.coverage_bits(x, b).is_proper_subset_of(cs.coverage_bits(x, a));
}

WeakAxpTable::WeakAxpTable(const Labeling & lab, const Decision & d, const Limits & limits) :
    _n(lab.space().space().size())
{
    if (_n > limits.max_subset_features)
        throw CapacityError(std::to_string(_n) + " features exceed the subset-enumeration cap of " +
            std::to_string(limits.max_subset_features));
    const std::size_t full = std::size_t{1} << _n;
    _blocked.assign(full, 0);
    const auto & cs = lab.space();
    for (std::size_t k = 0; k < cs.size(); ++k)
        if (lab.label(k) != d.label)
            _blocked[cs.difference(d.index, k).mask()] = 1;
    for (std::size_t b = 0; b < _n; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t t = 0; t < full; ++t)
            if (t & bit)
                _blocked[t] |= _blocked[t ^ bit];
    }
}

auto WeakAxpTable::contains(FeatureSet s) const -> bool
{
    const auto complement = (FeatureSet::all(_n) - s).mask();
    return _blocked[complement] == 0;
}

auto all_axps(const Labeling & lab, const Decision & d, const Limits & limits) -> std::vector<Explanation>
{
    WeakAxpTable weak{lab, d, limits};
    const auto n = weak.feature_count();
    const auto & cs = lab.space();
    const auto prot = cs.space().protected_set();

    std::vector<Explanation> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        FeatureSet s{m};
        if (! weak.contains(s))
            continue;
        bool minimal = true;
        for (auto i : s.members())
            if (weak.contains(s.without(i))) {
                minimal = false;
                break;
            }
        if (minimal)
            out.push_back(Explanation{s, ExplanationKind::Axp, ! s.intersects(prot), cs.coverage_bits(d.instance, s).count()});
    }
    std::sort(out.begin(), out.end(), [](const Explanation & a, const Explanation & b) { return a.features < b.features; });
    return out;
}

auto select_pi(const ConstrainedSpace & cs, const Instance & x, const std::vector<Explanation> & axps)
    -> std::vector<Explanation>
{
    std::vector<Bitset> cover;
    cover.reserve(axps.size());
    for (const auto & a : axps)
        cover.push_back(cs.coverage_bits(x, a.features));

    std::vector<Explanation> out;
    for (std::size_t i = 0; i < axps.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < axps.size() && ! dominated; ++j)
            dominated = j != i && cover[i].is_proper_subset_of(cover[j]);
        if (! dominated) {
            auto e = axps[i];
            e.kind = ExplanationKind::Pi;
            out.push_back(e);
        }
    }
    return out;
}

auto pi_explanations(const Labeling & lab, const Decision & d, const Limits & limits) -> std::vector<Explanation>
{
    return select_pi(lab.space(), d.instance, all_axps(lab, d, limits));
}

auto one_axp(const Labeling & lab, const Decision & d, std::optional<std::vector<std::size_t>> order) -> Explanation
{
    const auto & cs = lab.space();
    const auto n = cs.space().size();
    std::vector<std::size_t> seq;
    if (order) {
        seq = *order;
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.size() != n || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            (n > 0 && sorted.back() >= n))
            throw ContractError("seed order must be a permutation of the feature indices");
    }
    else
        for (std::size_t i = n; i-- > 0;)
            seq.push_back(i);

    auto s = cs.space().all();
    for (auto i : seq)
        if (is_weak_axp(lab, d, s.without(i)))
            s = s.without(i);
    return Explanation{s, ExplanationKind::Axp, ! s.intersects(cs.space().protected_set()),
        cs.coverage_bits(d.instance, s).count()};
}

} // namespace fairaudit
