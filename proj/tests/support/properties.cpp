#include "support/properties.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

#include <fairaudit/error.hpp>
#include <fairaudit/fairness.hpp>
#include <fairaudit/satcheck.hpp>

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace props {

using namespace fairaudit;

auto Tally::fail(const std::string & why) -> void
{
    if (violations++ == 0)
        first_failure = why;
}

auto SuiteResult::ok() const -> bool
{
    return std::all_of(tallies.begin(), tallies.end(), [](const Tally & t) { return t.violations == 0 && t.checked > 0; });
}

auto SuiteResult::tally(const std::string & name) const -> const Tally &
{
    for (const auto & t : tallies)
        if (t.name == name)
            return t;
    throw std::out_of_range{"no tally named " + name};
}

auto SuiteResult::summary() const -> std::string
{
    std::ostringstream os;
    os << cases << " cases, " << seconds << " s";
    for (const auto & t : tallies) {
        os << "; " << t.name << " " << t.checked << " checked";
        if (t.violations)
            os << ", " << t.violations << " violated (" << t.first_failure << ")";
    }
    return os.str();
}

namespace {

class Clock
{
public:
    [[nodiscard]] auto seconds() const -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
    }

private:
    std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
};

constexpr gen::Placement placements[] = {gen::Placement::Anywhere, gen::Placement::Nowhere,
    gen::Placement::OnlyProtected, gen::Placement::OnlyUnprotected, gen::Placement::Separate};

auto corpus_options(std::size_t i) -> gen::ModelOptions
{
    gen::ModelOptions o;
    o.placement = placements[i % std::size(placements)];
    return o;
}

auto where(const gen::RandomModel & m, std::size_t i, const Instance * x = nullptr) -> std::string
{
    std::string s = "model #" + std::to_string(i) + " (" + m.describe() + ")";
    if (x)
        s += " at " + x->to_string();
    return s;
}

auto has_fair(const DecisionVerdict & v) -> bool
{
    return v.status != DecisionStatus::Unfair;
}

auto masks(const std::vector<Explanation> & es) -> std::vector<oracle::Mask>
{
    std::vector<oracle::Mask> out;
    for (const auto & e : es)
        out.push_back(static_cast<oracle::Mask>(e.features.mask()));
    return out;
}

} // namespace

auto proposition_suite(std::uint64_t seed, std::size_t models) -> SuiteResult
{
    Clock clock;
    SuiteResult r;
    r.tallies = {{"chain"}, {"separated_keeps_fair"}, {"only_n_same_fair"}, {"only_p_unfair_lifts"},
        {"separated_notions_agree"}, {"completion_iff_ftu"}, {"loose_ftu_existential"}, {"local_loose_ftu_fair"},
        {"disentangled_existential"}};
    auto & chain = r.tallies[0];
    auto & p1 = r.tallies[1];
    auto & p2 = r.tallies[2];
    auto & p3 = r.tallies[3];
    auto & t1 = r.tallies[4];
    auto & p5 = r.tallies[5];
    auto & p6 = r.tallies[6];
    auto & p7 = r.tallies[7];
    auto & p8 = r.tallies[8];

    gen::Rng rng{seed};
    for (std::size_t i = 0; i < models; ++i) {
        auto m = gen::random_model(rng, corpus_options(i));
        ++r.cases;
        auto cs = enumerate_space(m.space, m.constraints);
        auto full = enumerate_space(m.space, ConstraintSet{});
        auto profile = constraint_scope_profile(m.space, m.constraints);
        bool separated = profile != ScopeProfile::Crossing;

        ClassifierVerdict v;
        VerdictOptions vo;
        vo.keep_decisions = true;
        try {
            v = classifier_verdict(cs, m.classifier, vo);
        }
        catch (const InternalError & e) {
            chain.fail(where(m, i) + ": " + e.what());
            continue;
        }

        ++chain.checked;
        if ((v.universal && ! v.existential) || (v.existential && ! v.ftu))
            chain.fail(where(m, i));

        if (separated) {
            ++t1.checked;
            if (v.ftu != v.existential || v.existential != v.universal)
                t1.fail(where(m, i));
        }

        {
            ++p5.checked;
            auto dflt = ClassLabel{static_cast<unsigned>(i % m.classifier.class_count())};
            bool completes = false;
            try {
                auto c = build_completion(cs, m.classifier, dflt);
                completes = equivalent_on(c, m.classifier, cs).equivalent && check_ftu(full, c).holds;
            }
            catch (const PreconditionError &) {
            }
            if (completes != v.ftu)
                p5.fail(where(m, i));
        }

        if (v.loose && v.ftu) {
            ++p6.checked;
            if (! v.existential)
                p6.fail(where(m, i));
        }
        if (v.disentangled) {
            ++p8.checked;
            if (! v.existential)
                p8.fail(where(m, i));
        }

        Labeling lab_c{cs, m.classifier};
        Labeling lab_f{full, m.classifier};
        for (const auto & dv : v.decisions) {
            const auto & x = dv.decision.instance;
            auto fv = decision_verdict(lab_f, make_decision(lab_f, x));
            if (separated && has_fair(fv)) {
                ++p1.checked;
                if (! has_fair(dv))
                    p1.fail(where(m, i, &x));
            }
            if (profile == ScopeProfile::OnlyUnprotected) {
                ++p2.checked;
                if (has_fair(fv) != has_fair(dv))
                    p2.fail(where(m, i, &x));
            }
            if (profile == ScopeProfile::OnlyProtected && dv.unfair_pi) {
                ++p3.checked;
                if (! fv.unfair_pi)
                    p3.fail(where(m, i, &x));
            }
            if (check_loose_at(cs, x) && ftu_at(lab_c, dv.decision)) {
                ++p7.checked;
                if (! has_fair(dv))
                    p7.fail(where(m, i, &x));
            }
        }
    }
    r.seconds = clock.seconds();
    return r;
}

auto oracle_suite(std::uint64_t seed, std::size_t models) -> SuiteResult
{
    Clock clock;
    SuiteResult r;
    r.tallies = {{"engines"}, {"one_axp"}, {"pi_is_axp"}, {"brute_force"}};
    auto & engines = r.tallies[0];
    auto & one = r.tallies[1];
    auto & pi_axp = r.tallies[2];
    auto & brute = r.tallies[3];

    gen::Rng rng{seed ^ 0x9e3779b97f4a7c15ULL};
    for (std::size_t i = 0; i < models; ++i) {
        auto m = gen::random_model(rng, corpus_options(i));
        ++r.cases;
        auto cs = enumerate_space(m.space, m.constraints);
        const auto n = m.space.size();

        ++engines.checked;
        auto ex = check_ftu(cs, m.classifier, FtuEngine::Exhaustive);
        auto se = check_ftu(cs, m.classifier, FtuEngine::Search);
        auto direct = check_ftu_search(m.space, m.constraints, m.classifier);
        if (ex.holds != se.holds || ex.holds != direct.holds)
            engines.fail(where(m, i));

        Labeling lab{cs, m.classifier};
        std::vector<std::size_t> order(n);
        for (std::size_t f = 0; f < n; ++f)
            order[f] = f;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            auto d = make_decision(lab, cs.instance(k));
            auto axps = all_axps(lab, d);
            std::shuffle(order.begin(), order.end(), rng);
            for (const auto & e : {one_axp(lab, d), one_axp(lab, d, order)}) {
                ++one.checked;
                bool member = std::any_of(axps.begin(), axps.end(), [&](const Explanation & a) { return a.features == e.features; });
                if (! member)
                    one.fail(where(m, i, &d.instance));
            }
            if (m.constraints.empty()) {
                ++pi_axp.checked;
                if (masks(pi_explanations(lab, d)) != masks(axps))
                    pi_axp.fail(where(m, i, &d.instance));
            }
        }

        if (n <= 5) {
            ++brute.checked;
            oracle::Brute b{oracle::from_library(m.space, m.constraint_exprs, m.classifier)};
            auto v = classifier_verdict(cs, m.classifier);
            bool same = b.points().size() == cs.size() && b.ftu() == v.ftu && b.existential() == v.existential &&
                b.universal() == v.universal && b.loose() == v.loose && b.disentangled() == v.disentangled &&
                b.decomposable() == v.decomposable;
            for (std::size_t k = 0; same && k < cs.size(); ++k) {
                auto d = make_decision(lab, cs.instance(k));
                const auto & p = b.points()[k];
                same = Instance{p} == d.instance && masks(all_axps(lab, d)) == b.axps(p) &&
                    masks(pi_explanations(lab, d)) == b.pis(p) && ftu_at(lab, d) == b.ftu_at(p) &&
                    check_loose_at(cs, d.instance) == b.loose_at(p) && is_disentangled(lab, d) == b.disentangled_at(p);
            }
            if (! same)
                brute.fail(where(m, i));
        }
    }
    r.seconds = clock.seconds();
    return r;
}

auto switch_suite(std::uint64_t seed, std::size_t formulas) -> SuiteResult
{
    Clock clock;
    SuiteResult r;
    r.tallies = {{"tautologies"}, {"non_tautologies"}};
    gen::Rng rng{seed + 9};
    for (std::size_t i = 0; i < formulas; ++i) {
        int vars = 1 + static_cast<int>(rng() % 6);
        auto terms = gen::random_dnf(rng, vars);
        if (i % 2 == 1) {
            // a complementary pair of unit terms makes any DNF a tautology
            int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(vars));
            terms.push_back({v});
            terms.push_back({-v});
        }
        ++r.cases;

        std::vector<Feature> features{Feature::boolean("x0", true)};
        for (int v = 1; v <= vars; ++v)
            features.push_back(Feature::boolean("x" + std::to_string(v)));
        FeatureSpace space{features};
        std::vector<Expr> disjuncts;
        for (const auto & t : terms) {
            std::vector<Expr> lits;
            for (int lit : t) {
                auto e = Expr::eq(static_cast<std::size_t>(std::abs(lit)), 1);
                lits.push_back(lit > 0 ? e : Expr::negate(e));
            }
            disjuncts.push_back(lits.size() == 1 ? lits[0] : Expr::conj(lits));
        }
        auto phi = disjuncts.size() == 1 ? disjuncts[0] : Expr::disj(disjuncts);
        // x0 ? 1 : phi
        auto k = Classifier::expression(space, Expr::disj({Expr::eq(0, 1), phi}));

        bool taut = oracle::dnf_tautology(terms, vars);
        auto & t = r.tallies[taut ? 0 : 1];
        ++t.checked;
        auto searched = check_ftu_search(space, ConstraintSet{}, k).holds;
        auto exhaustive = check_ftu(enumerate_space(space, ConstraintSet{}), k).holds;
        if (searched != taut || exhaustive != taut)
            t.fail("formula #" + std::to_string(i) + ": " + to_string(phi, space));
    }
    r.seconds = clock.seconds();
    return r;
}

auto dimacs_suite(const std::vector<std::string> & fixture_names) -> SuiteResult
{
    Clock clock;
    SuiteResult r;
    r.tallies = {{"sat"}, {"unsat"}};
    for (const auto & name : fixture_names) {
        auto doc = fixtures::model(name);
        for (bool constrained : {true, false}) {
            ++r.cases;
            ConstraintSet cons = constrained ? doc.constraints : ConstraintSet{};
            auto cs = enumerate_space(doc.space, cons);
            auto direct = check_ftu(cs, *doc.classifier);
            auto text = export_dimacs(encode_ftu_counterexample(doc.space, cons, *doc.classifier));
            auto reparsed = parse_dimacs(text);
            auto sat = search(reparsed).satisfiable;
            auto & t = r.tallies[direct.holds ? 1 : 0];
            ++t.checked;
            if (sat == direct.holds || export_dimacs(reparsed) != text)
                t.fail(name + (constrained ? "" : " without constraints"));
        }
    }
    r.seconds = clock.seconds();
    return r;
}

} // namespace props
