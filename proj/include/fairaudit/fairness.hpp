#ifndef FAIRAUDIT_FAIRNESS_HPP
#define FAIRAUDIT_FAIRNESS_HPP

#include <fairaudit/classifier.hpp>
#include <fairaudit/explain.hpp>
#include <fairaudit/model.hpp>
#include <fairaudit/satcheck.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairaudit {

enum class DecisionStatus
{
    UniversallyFair,
    ExistentiallyFairOnly,
    Unfair
};

auto to_string(DecisionStatus s) -> std::string;

struct DecisionVerdict
{
    Decision decision;
    DecisionStatus status = DecisionStatus::UniversallyFair;
    /// First fair / unfair PI-explanation in explanation order.
    std::optional<Explanation> fair_pi;
    std::optional<Explanation> unfair_pi;
    std::vector<Explanation> pi_explanations;
};

auto decision_verdict(const Labeling & lab, const Decision & d, const Limits & limits = {}) -> DecisionVerdict;

enum class FtuEngine
{
    Exhaustive,
    Search
};

auto to_string(FtuEngine e) -> std::string;

using InstancePair = std::pair<Instance, Instance>;

struct FtuResult
{
    bool holds = true;
    /// x, y in F[C] with x_N = y_N and different labels.
    std::optional<InstancePair> counterexample;
};

/// Constrained FTU. The exhaustive engine reports the least pair in
/// canonical order; the search engine reports whatever pair it finds.
auto check_ftu(const ConstrainedSpace & cs, const Classifier & k, FtuEngine engine = FtuEngine::Exhaustive)
    -> FtuResult;
/// Search engine only; never enumerates F[C].
auto check_ftu_search(const FeatureSpace & space, const ConstraintSet & constraints, const Classifier & k,
    const EncodeOptions & options = {}) -> FtuResult;

/// Every y in F[C] with y_N = x_N gets kappa(x).
auto ftu_at(const Labeling & lab, const Decision & d) -> bool;

/// Total table over F agreeing with k on F[C]; instances whose unprotected
/// part never occurs in F[C] get default_label. Throws PreconditionError when
/// k violates constrained FTU.
auto build_completion(const ConstrainedSpace & cs, const Classifier & k, ClassLabel default_label,
    const Limits & limits = {}) -> Classifier;

struct LooseViolation
{
    Instance instance;
    std::size_t feature = 0;

    friend auto operator==(const LooseViolation &, const LooseViolation &) -> bool = default;
};

struct LoosenessResult
{
    bool loose = true;
    /// Every (x, p) where x_{p} strictly subsumes x_N, in canonical order.
    std::vector<LooseViolation> violations;
};

auto check_loose(const ConstrainedSpace & cs) -> LoosenessResult;
auto check_loose_at(const ConstrainedSpace & cs, const Instance & x) -> bool;

struct DisentangledResult
{
    bool disentangled = true;
    /// Decisions that are not disentangled, in canonical order.
    std::vector<Decision> failing;
};

auto is_disentangled(const Labeling & lab, const Decision & d, const Limits & limits = {}) -> bool;
auto check_disentangled(const Labeling & lab, const Limits & limits = {}) -> DisentangledResult;

/// F[C] equals the product of its projections onto P and onto N.
auto check_decomposable(const ConstrainedSpace & cs) -> bool;

class CausalGraph
{
public:
    CausalGraph() = default;
    /// Throws SemanticError on duplicate vertices or edges with undeclared endpoints.
    CausalGraph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges);

    [[nodiscard]] auto vertices() const -> const std::vector<std::string> & { return _vertices; }
    [[nodiscard]] auto edges() const -> const std::vector<std::pair<std::string, std::string>> & { return _edges; }

    /// Vertices reachable from `sources` by directed paths, sources included.
    [[nodiscard]] auto reachable_from(const std::vector<std::string> & sources) const -> std::vector<std::string>;

private:
    std::vector<std::string> _vertices;
    std::vector<std::pair<std::string, std::string>> _edges;
};

/// {"vertices": [...], "edges": [[cause, effect], ...]}
auto parse_causal_graph(std::string_view text) -> CausalGraph;

/// Copy of `space` whose protected set also holds every feature reachable
/// from a protected feature in g. Non-feature vertices only relay
/// reachability. Throws SemanticError unless every feature is a vertex of g.
auto extend_protected_ftci(const FeatureSpace & space, const CausalGraph & g) -> FeatureSpace;

struct VerdictOptions
{
    FtuEngine engine = FtuEngine::Exhaustive;
    bool keep_decisions = false;
    Limits limits;
};

struct ClassifierVerdict
{
    ScopeProfile scope_profile = ScopeProfile::None;
    bool decomposable = true;

    bool ftu = true;
    std::optional<InstancePair> ftu_counterexample;

    bool existential = true;
    /// Least decision without a fair PI-explanation.
    std::optional<DecisionVerdict> existential_failure;

    bool universal = true;
    /// Least decision with an unfair PI-explanation.
    std::optional<DecisionVerdict> universal_failure;

    bool loose = true;
    std::vector<LooseViolation> loose_violations;

    bool disentangled = true;
    std::vector<Decision> disentangled_failures;

    std::vector<std::string> warnings;
    /// Every decision's verdict, when VerdictOptions::keep_decisions is set.
    std::vector<DecisionVerdict> decisions;
};

/// All classifier-level notions at once. Throws InternalError if the
/// implications universal => existential => ftu, loose & ftu => existential
/// or disentangled => existential ever fail.
auto classifier_verdict(const ConstrainedSpace & cs, const Classifier & k, const VerdictOptions & options = {})
    -> ClassifierVerdict;

/// Warnings about degenerate inputs: empty F[C], singleton protected domains.
auto space_warnings(const FeatureSpace & space, std::optional<std::size_t> constrained_size) -> std::vector<std::string>;

} // namespace fairaudit

#endif
