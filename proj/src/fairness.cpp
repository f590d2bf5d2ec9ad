#include <fairaudit/fairness.hpp>

#include <fairaudit/error.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace fairaudit {

auto to_string(DecisionStatus s) -> std::string
{
    switch (s) {
    case DecisionStatus::UniversallyFair: return "UNIVERSALLY_FAIR";
    case DecisionStatus::ExistentiallyFairOnly: return "EXISTENTIALLY_FAIR_ONLY";
    case DecisionStatus::Unfair: return "UNFAIR";
    }
    return "?";
}

auto to_string(FtuEngine e) -> std::string
{
    return e == FtuEngine::Exhaustive ? "exhaustive" : "search";
}

auto decision_verdict(const Labeling & lab, const Decision & d, const Limits & limits) -> DecisionVerdict
{
    DecisionVerdict v;
    v.decision = d;
    v.pi_explanations = pi_explanations(lab, d, limits);
    for (const auto & e : v.pi_explanations) {
        if (e.fair && ! v.fair_pi)
            v.fair_pi = e;
        if (! e.fair && ! v.unfair_pi)
            v.unfair_pi = e;
    }
    if (! v.fair_pi)
        v.status = DecisionStatus::Unfair;
    else if (v.unfair_pi)
        v.status = DecisionStatus::ExistentiallyFairOnly;
    else
        v.status = DecisionStatus::UniversallyFair;
    return v;
}

namespace {

auto ftu_exhaustive(const Labeling & lab) -> FtuResult
{
    const auto & cs = lab.space();
    const auto unprot = cs.space().unprotected_set();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto others = cs.coverage_bits(cs.instance(i), unprot) - lab.members(lab.label(i));
        if (auto j = others.find_first(); j != Bitset::npos)
            return FtuResult{false, InstancePair{cs.instance(i), cs.instance(j)}};
    }
    return FtuResult{};
}

auto projection(const Instance & x, FeatureSet s) -> std::vector<Value>
{
    std::vector<Value> key;
    for (auto i : s.members())
        key.push_back(x[i]);
    return key;
}

} // namespace

auto check_ftu_search(const FeatureSpace & space, const ConstraintSet & constraints, const Classifier & k,
    const EncodeOptions & options) -> FtuResult
{
    auto cnf = encode_ftu_counterexample(space, constraints, k, options);
    auto result = search(cnf);
    if (! result.satisfiable)
        return FtuResult{};
    return FtuResult{false, decode_model(cnf, result.model, space, constraints, k)};
}

auto check_ftu(const ConstrainedSpace & cs, const Classifier & k, FtuEngine engine) -> FtuResult
{
    if (engine == FtuEngine::Search)
        return check_ftu_search(cs.space(), cs.constraints(), k);
    Labeling lab{cs, k};
    return ftu_exhaustive(lab);
}

auto ftu_at(const Labeling & lab, const Decision & d) -> bool
{
    const auto & cs = lab.space();
    return cs.coverage_bits(d.instance, cs.space().unprotected_set()).is_subset_of(lab.members(d.label));
}

auto build_completion(const ConstrainedSpace & cs, const Classifier & k, ClassLabel default_label,
    const Limits & limits) -> Classifier
{
    if (default_label.value >= k.class_count())
        throw PreconditionError("default label " + std::to_string(default_label.value) + " is not a class of the classifier");
    Labeling lab{cs, k};
    if (auto ftu = ftu_exhaustive(lab); ! ftu.holds)
        throw PreconditionError("classifier violates constrained FTU: " + ftu.counterexample->first.to_string() +
            " and " + ftu.counterexample->second.to_string() + " agree on the unprotected features");

    const auto & space = cs.space();
    auto total = space.full_size();
    if (! total || *total > limits.max_instances)
        throw CapacityError("completion table would exceed the enumeration cap");

    const auto unprot = space.unprotected_set();
    std::map<std::vector<Value>, ClassLabel> by_key;
    for (std::size_t i = 0; i < cs.size(); ++i)
        by_key.emplace(projection(cs.instance(i), unprot), lab.label(i));

    std::vector<ClassLabel> table;
    table.reserve(*total);
    for (std::uint64_t r = 0; r < *total; ++r) {
        auto it = by_key.find(projection(space.unrank(r), unprot));
        table.push_back(it == by_key.end() ? default_label : it->second);
    }
    auto completion = Classifier::table_by_rank(space, std::move(table), k.class_count());
    completion.set_class_names(k.class_names());
    return completion;
}

auto check_loose_at(const ConstrainedSpace & cs, const Instance & x) -> bool
{
    if (! cs.contains(x))
        throw ContractError("looseness is defined at instances of F[C], got " + x.to_string());
    const auto & space = cs.space();
    auto cov_n = cs.coverage_bits(x, space.unprotected_set());
    for (auto p : space.protected_set().members())
        if (cov_n.is_proper_subset_of(cs.coverage_bits(x, FeatureSet{}.with(p))))
            return false;
    return true;
}

auto check_loose(const ConstrainedSpace & cs) -> LoosenessResult
{
    LoosenessResult r;
    const auto & space = cs.space();
    for (const auto & x : cs.instances()) {
        auto cov_n = cs.coverage_bits(x, space.unprotected_set());
        for (auto p : space.protected_set().members())
            if (cov_n.is_proper_subset_of(cs.coverage_bits(x, FeatureSet{}.with(p))))
                r.violations.push_back(LooseViolation{x, p});
    }
    r.loose = r.violations.empty();
    return r;
}

auto is_disentangled(const Labeling & lab, const Decision & d, const Limits & limits) -> bool
{
    const auto & cs = lab.space();
    const auto & space = cs.space();
    const auto unprot = space.unprotected_set();
    const auto prot = space.protected_set();

    auto cov_n = cs.coverage_bits(d.instance, unprot);
    if (! cov_n.is_subset_of(lab.members(d.label)))
        return false;

    // Q subsumes N iff Q avoids every feature that varies across coverage(N).
    FeatureSet varying;
    for (auto k = cov_n.find_first(); k != Bitset::npos; k = cov_n.find_next(k))
        varying = varying | cs.difference(d.index, k);
    const auto fixed = space.all() - varying;
    if (! fixed.intersects(prot))
        return true;

    WeakAxpTable weak{lab, d, limits};
    const auto n_count = cov_n.count();
    // enumerate submasks of `fixed`
    const auto base = fixed.mask();
    for (std::uint64_t q = base;; q = (q - 1) & base) {
        FeatureSet qs{q};
        if (qs.intersects(prot) && weak.contains(qs) && cs.coverage_bits(d.instance, qs).count() > n_count)
            return false;
        if (q == 0)
            break;
    }
    return true;
}

auto check_disentangled(const Labeling & lab, const Limits & limits) -> DisentangledResult
{
    DisentangledResult r;
    const auto & cs = lab.space();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Decision d{cs.instance(i), i, lab.label(i)};
        if (! is_disentangled(lab, d, limits))
            r.failing.push_back(std::move(d));
    }
    r.disentangled = r.failing.empty();
    return r;
}

auto check_decomposable(const ConstrainedSpace & cs) -> bool
{
    const auto & space = cs.space();
    std::set<std::vector<Value>> p_part, n_part;
    for (const auto & x : cs.instances()) {
        p_part.insert(projection(x, space.protected_set()));
        n_part.insert(projection(x, space.unprotected_set()));
    }
    // F[C] is always inside the product, so equal sizes mean equal sets
    return static_cast<std::uint64_t>(p_part.size()) * n_part.size() == cs.size();
}

CausalGraph::CausalGraph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges) :
    _vertices(std::move(vertices)),
    _edges(std::move(edges))
{
    std::set<std::string> seen;
    for (const auto & v : _vertices)
        if (! seen.insert(v).second)
            throw SemanticError("causal graph declares vertex '" + v + "' twice");
    for (const auto & [a, b] : _edges) {
        if (! seen.contains(a))
            throw SemanticError("causal graph edge uses unknown vertex '" + a + "'");
        if (! seen.contains(b))
            throw SemanticError("causal graph edge uses unknown vertex '" + b + "'");
    }
}

auto CausalGraph::reachable_from(const std::vector<std::string> & sources) const -> std::vector<std::string>
{
    std::map<std::string, std::vector<std::string>> out;
    for (const auto & [a, b] : _edges)
        out[a].push_back(b);
    std::set<std::string> seen;
    std::deque<std::string> queue;
    for (const auto & s : sources)
        if (seen.insert(s).second)
            queue.push_back(s);
    while (! queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (const auto & w : out[v])
            if (seen.insert(w).second)
                queue.push_back(w);
    }
    std::vector<std::string> result;
    for (const auto & v : _vertices)
        if (seen.contains(v))
            result.push_back(v);
    return result;
}

auto parse_causal_graph(std::string_view text) -> CausalGraph
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError(std::string{"malformed causal graph JSON: "} + e.what(), 0, 0);
    }
    if (! j.is_object() || ! j.contains("vertices") || ! j["vertices"].is_array())
        throw SemanticError("causal graph needs a 'vertices' list");
    std::vector<std::string> vertices;
    for (const auto & v : j["vertices"]) {
        if (! v.is_string())
            throw SemanticError("causal graph vertices must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges")) {
        if (! j["edges"].is_array())
            throw SemanticError("causal graph 'edges' must be a list");
        for (const auto & e : j["edges"]) {
            if (! e.is_array() || e.size() != 2 || ! e[0].is_string() || ! e[1].is_string())
                throw SemanticError("causal graph edges must be [cause, effect] pairs of vertex names");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    return CausalGraph{std::move(vertices), std::move(edges)};
}

auto extend_protected_ftci(const FeatureSpace & space, const CausalGraph & g) -> FeatureSpace
{
    const auto & vs = g.vertices();
    for (const auto & f : space.features())
        if (std::find(vs.begin(), vs.end(), f.name) == vs.end())
            throw SemanticError("feature '" + f.name + "' is not a vertex of the causal graph");

    auto reach = g.reachable_from(space.names(space.protected_set()));
    auto prot = space.protected_set();
    for (const auto & v : reach)
        if (auto i = space.index_of(v))
            prot = prot.with(*i);
    return space.with_protected(prot);
}

auto space_warnings(const FeatureSpace & space, std::optional<std::size_t> constrained_size) -> std::vector<std::string>
{
    std::vector<std::string> w;
    if (constrained_size && *constrained_size == 0)
        w.emplace_back("empty constrained space: every classifier-level check holds vacuously");
    for (auto p : space.protected_set().members())
        if (space.feature(p).domain.size() == 1)
            w.push_back("protected feature '" + space.feature(p).name + "' has a singleton domain");
    return w;
}

auto classifier_verdict(const ConstrainedSpace & cs, const Classifier & k, const VerdictOptions & options)
    -> ClassifierVerdict
{
    ClassifierVerdict v;
    v.scope_profile = constraint_scope_profile(cs.space(), cs.constraints());
    v.decomposable = check_decomposable(cs);
    v.warnings = space_warnings(cs.space(), cs.size());

    Labeling lab{cs, k};
    auto ftu = ftu_exhaustive(lab);
    if (options.engine == FtuEngine::Search) {
        auto searched = check_ftu_search(cs.space(), cs.constraints(), k);
        if (searched.holds != ftu.holds)
            throw InternalError("search and exhaustive FTU engines disagree");
        ftu = std::move(searched);
    }
    v.ftu = ftu.holds;
    v.ftu_counterexample = ftu.counterexample;

    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto dv = decision_verdict(lab, Decision{cs.instance(i), i, lab.label(i)}, options.limits);
        if (dv.status == DecisionStatus::Unfair && v.existential) {
            v.existential = false;
            v.existential_failure = dv;
        }
        if (dv.status != DecisionStatus::UniversallyFair && v.universal) {
            v.universal = false;
            v.universal_failure = dv;
        }
        if (options.keep_decisions)
            v.decisions.push_back(std::move(dv));
    }

    auto loose = check_loose(cs);
    v.loose = loose.loose;
    v.loose_violations = std::move(loose.violations);

    auto dis = check_disentangled(lab, options.limits);
    v.disentangled = dis.disentangled;
    v.disentangled_failures = std::move(dis.failing);

    if (v.universal && ! v.existential)
        throw InternalError("universal fairness without existential fairness");
    if (v.existential && ! v.ftu)
        throw InternalError("existential fairness without constrained FTU");
    if (v.loose && v.ftu && ! v.existential)
        throw InternalError("loose constraints and FTU without existential fairness");
    if (v.disentangled && ! v.existential)
        throw InternalError("disentangled classifier that is not existentially fair");
    return v;
}

} // namespace fairaudit
