#include "support/examples.hpp"

#include "support/fixtures.hpp"

#include <fairaudit/fairness.hpp>

#include <chrono>
#include <functional>

namespace examples {

using namespace fairaudit;

namespace {

struct Model
{
    ModelDocument doc;
    ConstrainedSpace cs;
    ConstrainedSpace full;
    Labeling lab;
    Labeling lab_full;

    explicit Model(const std::string & name) :
        doc(fixtures::model(name)),
        cs(enumerate_space(doc.space, doc.constraints)),
        full(enumerate_space(doc.space, ConstraintSet{})),
        lab(cs, *doc.classifier),
        lab_full(full, *doc.classifier)
    {}

    Model(const Model &) = delete;

    [[nodiscard]] auto sets(const std::vector<Explanation> & es) const -> std::string
    {
        std::string s = "{";
        for (std::size_t i = 0; i < es.size(); ++i)
            s += (i ? "," : "") + doc.space.render(es[i].features);
        return s + "}";
    }

    /// "kappa(x)=c PI {..}" in F[C] or in F.
    [[nodiscard]] auto pis(const Instance & x, bool constrained = true) const -> std::string
    {
        const auto & l = constrained ? lab : lab_full;
        auto d = make_decision(l, x);
        return "k" + x.to_string() + "=" + std::to_string(d.label.value) + " PI " + sets(pi_explanations(l, d));
    }

    [[nodiscard]] auto axps(const Instance & x) const -> std::string
    {
        return sets(all_axps(lab, make_decision(lab, x)));
    }

    /// The PI set shared by every decision, or "differs".
    [[nodiscard]] auto common_pis() const -> std::string
    {
        std::string common;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            auto s = sets(pi_explanations(lab, make_decision(lab, cs.instance(k))));
            if (k == 0)
                common = s;
            else if (s != common)
                return "differs";
        }
        return common;
    }
};

auto flag(bool b) -> std::string
{
    return b ? "true" : "false";
}

class Runner
{
public:
    auto fixture(const std::string & name, const std::function<void(const Model &)> & body) -> void
    {
        auto start = std::chrono::steady_clock::now();
        FixtureRun run{name, 0.0, {}};
        _current = &run;
        try {
            Model m{name};
            body(m);
        }
        catch (const std::exception & e) {
            run.checks.push_back(Check{name, "runs without error", false, e.what()});
        }
        run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        _current = nullptr;
        _runs.push_back(std::move(run));
    }

    auto expect(const std::string & claim, const std::string & observed, const std::string & wanted) -> void
    {
        _current->checks.push_back(Check{_current->fixture, claim, observed == wanted, observed});
    }

    auto take() -> std::vector<FixtureRun> { return std::move(_runs); }

private:
    std::vector<FixtureRun> _runs;
    FixtureRun * _current = nullptr;
};

} // namespace

auto run_all() -> std::vector<FixtureRun>
{
    Runner r;

    r.fixture("ex0", [&](const Model & m) {
        r.expect("every decision has PI set {{g}}", m.common_pis(), "{{g}}");
        r.expect("universally fair", flag(classifier_verdict(m.cs, *m.doc.classifier).universal), "true");
    });

    r.fixture("ex0a", [&](const Model & m) {
        r.expect("k(1,1)=0 with PI set {{f}}", m.pis(Instance{1, 1}), "k(1,1)=0 PI {{f}}");
        auto v = decision_verdict(m.lab, make_decision(m.lab, Instance{1, 1}));
        r.expect("decision (1,1) is UNFAIR", to_string(v.status), "UNFAIR");
    });

    r.fixture("ex1", [&](const Model & m) {
        r.expect("PI set {{e}} in F[C]", m.pis(Instance{0, 0}), "k(0,0)=1 PI {{e}}");
        r.expect("PI set {{e,m}} in F", m.pis(Instance{0, 0}, false), "k(0,0)=1 PI {{e,m}}");
    });

    r.fixture("ex2", [&](const Model & m) {
        r.expect("PI set {{s}} in F[C]", m.pis(Instance{1, 1, 1}), "k(1,1,1)=1 PI {{s}}");
        r.expect("PI set {{s1,s2}} in F", m.pis(Instance{1, 1, 1}, false), "k(1,1,1)=1 PI {{s1,s2}}");
    });

    r.fixture("ex3", [&](const Model & m) {
        r.expect("PI set {{g}} in F[C]", m.pis(Instance{1, 1, 1}), "k(1,1,1)=1 PI {{g}}");
        r.expect("PI set {{f,g}} in F", m.pis(Instance{1, 1, 1}, false), "k(1,1,1)=1 PI {{f,g}}");
    });

    r.fixture("ex4", [&](const Model & m) {
        r.expect("PI set {{s}} in F[C]", m.pis(Instance{1, 1, 1}), "k(1,1,1)=1 PI {{s}}");
        r.expect("PI set {{f,s},{s,e}} in F", m.pis(Instance{1, 1, 1}, false), "k(1,1,1)=1 PI {{f,s},{s,e}}");
    });

    r.fixture("ex5", [&](const Model & m) {
        r.expect("PI set {{m},{n}} in F[C]", m.pis(Instance{1, 1}), "k(1,1)=1 PI {{m},{n}}");
        r.expect("PI set {{n}} in F", m.pis(Instance{1, 1}, false), "k(1,1)=1 PI {{n}}");
    });

    r.fixture("ex0bis", [&](const Model & m) {
        auto v = classifier_verdict(m.cs, *m.doc.classifier);
        r.expect("constrained FTU holds", flag(v.ftu), "true");
        r.expect("not existentially fair", flag(v.existential), "false");
        r.expect("every decision has PI set {{a}}", m.common_pis(), "{{a}}");
    });

    r.fixture("exFTUnotfair", [&](const Model & m) {
        r.expect("constrained FTU holds", flag(check_ftu(m.cs, *m.doc.classifier).holds), "true");
        r.expect("k(0,1,1,0)=1 with PI set {{f,b}}", m.pis(Instance{0, 1, 1, 0}), "k(0,1,1,0)=1 PI {{f,b}}");
        r.expect("k(1,1,1,1)=0 with PI set {{f,p}}", m.pis(Instance{1, 1, 1, 1}), "k(1,1,1,1)=0 PI {{f,p}}");
        // members are listed in feature order f,p,b,a
        r.expect("AXps at (1,1,1,1) are {{a,b,p},{f,p}}", m.axps(Instance{1, 1, 1, 1}), "{{f,p},{p,b,a}}");
        r.expect("loose at (0,0,0,0)", flag(check_loose_at(m.cs, Instance{0, 0, 0, 0})), "true");
        r.expect("not loose at (1,1,1,1)", flag(check_loose_at(m.cs, Instance{1, 1, 1, 1})), "false");
    });

    r.fixture("ex0ter", [&](const Model & m) {
        auto v = classifier_verdict(m.cs, *m.doc.classifier);
        r.expect("every decision has PI set {{a},{b}}", m.common_pis(), "{{a},{b}}");
        r.expect("existentially fair", flag(v.existential), "true");
        r.expect("not universally fair", flag(v.universal), "false");
        r.expect("constraints are loose", flag(v.loose), "true");
    });

    r.fixture("adopt", [&](const Model & m) {
        VerdictOptions o;
        o.keep_decisions = true;
        auto v = classifier_verdict(m.cs, *m.doc.classifier, o);
        r.expect("existentially fair", flag(v.existential), "true");
        r.expect("not universally fair", flag(v.universal), "false");
        // the PI {s} appears exactly at the decisions with s = 0; (1,1,1)
        // has unfair PIs too, but they also mention s1 or s2
        std::string where;
        for (const auto & d : v.decisions)
            for (const auto & e : d.pi_explanations)
                if (m.doc.space.render(e.features) == "{s}")
                    where += d.decision.instance.to_string() + "{s}";
        std::string wanted;
        for (const auto & x : m.cs.instances())
            if (x[2] == 0)
                wanted += x.to_string() + "{s}";
        r.expect("unfair witness {s} at the s=0 decisions", where, wanted);
    });

    r.fixture("adopt2", [&](const Model & m) {
        r.expect("universally fair", flag(classifier_verdict(m.cs, *m.doc.classifier).universal), "true");
    });

    return r.take();
}

} // namespace examples
