#include <fairaudit/cli.hpp>

#include <fairaudit/document.hpp>
#include <fairaudit/error.hpp>
#include <fairaudit/satcheck.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fairaudit::cli {

namespace {

using ojson = nlohmann::ordered_json;

auto read_file(const std::string & path) -> std::string
{
    std::ifstream in{path, std::ios::binary};
    if (! in)
        throw SemanticError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto load(const std::string & text, const Limits & limits, bool ignore_constraints) -> ModelDocument
{
    auto doc = parse_model(text, limits);
    if (! doc.classifier)
        throw SemanticError("model document has no classifier");
    if (ignore_constraints)
        doc.constraints = ConstraintSet{};
    return doc;
}

auto render(const FeatureSpace & space, const Explanation & e) -> std::string
{
    return space.render(e.features) + (e.fair ? " (fair)" : " (unfair)");
}

auto explanation_json(const FeatureSpace & space, const Explanation & e) -> ojson
{
    ojson j;
    j["features"] = space.names(e.features);
    j["fair"] = e.fair;
    j["coverage"] = e.coverage_size;
    return j;
}

auto parse_instance(const std::string & text, const FeatureSpace & space) -> Instance
{
    std::vector<Value> values;
    std::stringstream ss{text};
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (values.size() >= space.size())
            throw SemanticError("instance has more values than the model has features");
        const auto & f = space.feature(values.size());
        Value v = 0;
        if (tok == "true" || tok == "false")
            v = tok == "true" ? 1 : 0;
        else {
            try {
                std::size_t used = 0;
                v = std::stoi(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument{tok};
            }
            catch (const std::exception &) {
                throw SemanticError("instance value '" + tok + "' is not a number");
            }
        }
        if (! f.domain_index(v))
            throw SemanticError("value " + tok + " is outside the domain of '" + f.name + "'");
        values.push_back(v);
    }
    if (values.size() != space.size())
        throw SemanticError("instance has " + std::to_string(values.size()) + " values, the model has " +
            std::to_string(space.size()) + " features");
    return Instance{std::move(values)};
}

auto parse_format(const std::string & f) -> bool
{
    if (f == "json")
        return true;
    if (f == "text")
        return false;
    throw SemanticError("unknown format '" + f + "'");
}

auto parse_engine(const std::string & e) -> FtuEngine
{
    if (e == "exhaustive")
        return FtuEngine::Exhaustive;
    if (e == "search")
        return FtuEngine::Search;
    throw SemanticError("unknown engine '" + e + "'");
}

auto cmd_explain(const std::string & text, const std::string & instance_text, const AuditOptions & opts, bool json,
    std::ostream & out) -> int
{
    auto doc = load(text, opts.limits, opts.ignore_constraints);
    auto x = parse_instance(instance_text, doc.space);
    if (auto violated = doc.constraints.first_violated(x.values()))
        throw SemanticError("instance " + x.to_string() + " violates constraint #" + std::to_string(*violated + 1) +
            ": " + to_string(doc.constraints.constraints()[*violated].expr, doc.space));

    auto cs = enumerate_space(doc.space, doc.constraints, opts.limits);
    Labeling lab{cs, *doc.classifier};
    auto d = make_decision(lab, x);
    auto axps = all_axps(lab, d, opts.limits);
    auto verdict = decision_verdict(lab, d, opts.limits);
    bool local_ftu = ftu_at(lab, d);

    bool holds = false;
    switch (opts.notion) {
    case Notion::Ftu: holds = local_ftu; break;
    case Notion::Existential: holds = verdict.status != DecisionStatus::Unfair; break;
    case Notion::Universal: holds = verdict.status == DecisionStatus::UniversallyFair; break;
    }

    std::ostringstream os;
    if (json) {
        ojson j;
        j["model_digest"] = model_digest(text);
        j["instance"] = x.values();
        j["label"] = d.label.value;
        j["constraints_ignored"] = opts.ignore_constraints;
        j["constrained_size"] = cs.size();
        auto ja = ojson::array();
        for (const auto & e : axps)
            ja.push_back(explanation_json(doc.space, e));
        j["axps"] = std::move(ja);
        auto jp = ojson::array();
        for (const auto & e : verdict.pi_explanations)
            jp.push_back(explanation_json(doc.space, e));
        j["pi_explanations"] = std::move(jp);
        j["status"] = to_string(verdict.status);
        j["ftu_at"] = local_ftu;
        os << j.dump(2) << "\n";
    }
    else {
        os << "instance " << x.to_string() << " -> " << d.label.value
           << (opts.ignore_constraints ? " (constraints ignored)" : "") << "\n";
        os << "AXps:";
        for (const auto & e : axps)
            os << " " << render(doc.space, e);
        os << "\nPI-explanations:";
        for (const auto & e : verdict.pi_explanations)
            os << " " << render(doc.space, e);
        os << "\nstatus " << to_string(verdict.status) << "\n";
        os << "ftu at instance: " << (local_ftu ? "yes" : "no") << "\n";
    }
    out << os.str();
    return holds ? 0 : 1;
}

auto cmd_check(const std::string & text, const std::string & what, const AuditOptions & opts, bool json,
    std::ostream & out) -> int
{
    auto doc = load(text, opts.limits, opts.ignore_constraints);
    std::ostringstream os;
    ojson j;
    j["check"] = what;
    int code = 0;

    if (what == "scope") {
        auto profile = to_string(constraint_scope_profile(doc.space, doc.constraints));
        j["scope_profile"] = profile;
        os << profile << "\n";
    }
    else {
        auto cs = enumerate_space(doc.space, doc.constraints, opts.limits);
        if (what == "loose") {
            auto r = check_loose(cs);
            j["holds"] = r.loose;
            auto ws = ojson::array();
            os << "loose: " << (r.loose ? "yes" : "no") << "\n";
            for (const auto & v : r.violations) {
                ojson w;
                w["instance"] = v.instance.values();
                w["feature"] = doc.space.feature(v.feature).name;
                ws.push_back(std::move(w));
                os << "witness " << v.instance.to_string() << ", " << doc.space.feature(v.feature).name << "\n";
            }
            j["witnesses"] = std::move(ws);
            code = r.loose ? 0 : 1;
        }
        else if (what == "disentangled") {
            Labeling lab{cs, *doc.classifier};
            auto r = check_disentangled(lab, opts.limits);
            j["holds"] = r.disentangled;
            auto ws = ojson::array();
            os << "disentangled: " << (r.disentangled ? "yes" : "no") << "\n";
            for (const auto & d : r.failing) {
                ws.push_back(d.instance.values());
                os << "witness " << d.instance.to_string() << "\n";
            }
            j["witnesses"] = std::move(ws);
            code = r.disentangled ? 0 : 1;
        }
        else if (what == "decomposable") {
            auto holds = check_decomposable(cs);
            j["holds"] = holds;
            os << "decomposable: " << (holds ? "yes" : "no") << "\n";
            code = holds ? 0 : 1;
        }
        else
            throw SemanticError("unknown check '" + what + "'");
    }
    out << (json ? j.dump(2) + "\n" : os.str());
    return code;
}

auto cmd_export_cnf(const std::string & text, const std::string & path, const AuditOptions & opts, std::ostream & out)
    -> int
{
    auto doc = load(text, opts.limits, opts.ignore_constraints);
    auto cnf = encode_ftu_counterexample(doc.space, doc.constraints, *doc.classifier);
    auto dimacs = export_dimacs(cnf);
    {
        std::ofstream f{path, std::ios::binary | std::ios::trunc};
        if (! f || ! (f << dimacs))
            throw SemanticError("cannot write '" + path + "'");
    }
    std::ostringstream os;
    os << "wrote " << cnf.variable_count << " variables, " << cnf.clauses.size() << " clauses to " << path << "\n";
    for (const auto & [var, name] : cnf.comment_map)
        os << var << " " << name << "\n";
    out << os.str();
    return 0;
}

} // namespace

auto audit(const std::string & model_text, const AuditOptions & options, const CausalGraph * graph) -> AuditReport
{
    auto start = std::chrono::steady_clock::now();
    auto doc = load(model_text, options.limits, options.ignore_constraints);
    const auto & k = *doc.classifier;

    AuditReport r;
    r.model_digest = model_digest(model_text);
    if (graph) {
        auto extended = extend_protected_ftci(doc.space, *graph);
        r.newly_protected = extended.names(extended.protected_set() - doc.space.protected_set());
        doc.space = std::move(extended);
    }
    const auto & space = doc.space;
    r.features = space.names(space.all());
    r.protected_features = space.names(space.protected_set());
    r.full_size = space.full_size();
    r.constraints_ignored = options.ignore_constraints;
    r.scope_profile = to_string(constraint_scope_profile(space, doc.constraints));
    r.notion = to_string(options.notion);
    r.engine = to_string(options.engine);

    if (options.notion == Notion::Ftu && options.engine == FtuEngine::Search && ! options.per_decision) {
        // no enumeration at all on this path
        auto ftu = check_ftu_search(space, doc.constraints, k);
        r.ftu = ftu.holds;
        if (ftu.counterexample)
            r.ftu_witness = std::pair{ftu.counterexample->first.values(), ftu.counterexample->second.values()};
        r.warnings = space_warnings(space, std::nullopt);
        r.holds = ftu.holds;
    }
    else {
        auto cs = enumerate_space(space, doc.constraints, options.limits);
        r.constrained_size = cs.size();
        if (options.notion == Notion::Ftu) {
            auto ftu = check_ftu(cs, k, options.engine);
            r.ftu = ftu.holds;
            if (ftu.counterexample)
                r.ftu_witness = std::pair{ftu.counterexample->first.values(), ftu.counterexample->second.values()};
            r.warnings = space_warnings(space, cs.size());
            r.holds = ftu.holds;
            if (options.per_decision) {
                Labeling lab{cs, k};
                r.decisions.emplace();
                for (std::size_t i = 0; i < cs.size(); ++i)
                    r.decisions->push_back(
                        to_record(space, decision_verdict(lab, Decision{cs.instance(i), i, lab.label(i)}, options.limits)));
            }
        }
        else {
            VerdictOptions vo;
            vo.engine = options.engine;
            vo.keep_decisions = options.per_decision;
            vo.limits = options.limits;
            auto v = classifier_verdict(cs, k, vo);
            r.ftu = v.ftu;
            r.existential = v.existential;
            r.universal = v.universal;
            r.loose = v.loose;
            r.disentangled = v.disentangled;
            r.decomposable = v.decomposable;
            if (v.ftu_counterexample)
                r.ftu_witness = std::pair{v.ftu_counterexample->first.values(), v.ftu_counterexample->second.values()};
            if (v.existential_failure)
                r.existential_witness = to_record(space, *v.existential_failure);
            if (v.universal_failure)
                r.universal_witness = to_record(space, *v.universal_failure);
            for (const auto & l : v.loose_violations)
                r.loose_witnesses.push_back(LooseRecord{l.instance.values(), space.feature(l.feature).name});
            for (const auto & d : v.disentangled_failures)
                r.disentangled_witnesses.push_back(d.instance.values());
            r.warnings = v.warnings;
            if (options.per_decision) {
                r.decisions.emplace();
                for (const auto & d : v.decisions)
                    r.decisions->push_back(to_record(space, d));
            }
            r.holds = options.notion == Notion::Existential ? v.existential : v.universal;
        }
    }
    if (options.timing)
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

auto exit_code(const AuditReport & r) -> int
{
    return r.holds ? 0 : 1;
}

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Fairness audits of classifiers over constrained feature spaces", "fairaudit"};
    app.require_subcommand(1);

    std::string model_path, graph_path, out_path, instance, what;
    std::string notion = "existential", engine = "exhaustive", format;
    bool per_decision = false, ignore_constraints = false, timing = false;
    Limits limits;

    auto add_common = [&](CLI::App * sub) {
        sub->add_option("model", model_path, "model document (JSON)")->required();
        sub->add_flag("--ignore-constraints", ignore_constraints, "audit over F instead of F[C]");
        sub->add_option("--max-instances", limits.max_instances, "largest |F| to enumerate");
        sub->add_option("--max-features", limits.max_subset_features, "largest feature count for subset scans");
        sub->add_option("--format", format, "json or text");
        sub->add_option("--notion", notion, "ftu, existential or universal")
            ->check(CLI::IsMember({"ftu", "existential", "universal"}));
    };
    auto add_audit_flags = [&](CLI::App * sub) {
        sub->add_flag("--per-decision", per_decision, "include every decision's verdict");
        sub->add_option("--engine", engine, "FTU engine: exhaustive or search")
            ->check(CLI::IsMember({"exhaustive", "search"}));
        sub->add_flag("--timing", timing, "record wall-clock time in the report");
    };

    auto * audit_cmd = app.add_subcommand("audit", "classifier-level fairness report");
    add_common(audit_cmd);
    add_audit_flags(audit_cmd);

    auto * explain_cmd = app.add_subcommand("explain", "AXps, PI-explanations and verdict of one decision");
    add_common(explain_cmd);
    explain_cmd->add_option("--instance", instance, "comma-separated feature values")->required();

    auto * check_cmd = app.add_subcommand("check", "a single structural check");
    add_common(check_cmd);
    check_cmd->add_option("--what", what, "loose, disentangled, decomposable or scope")
        ->required()
        ->check(CLI::IsMember({"loose", "disentangled", "decomposable", "scope"}));

    auto * cnf_cmd = app.add_subcommand("export-cnf", "write the FTU counterexample CNF in DIMACS");
    add_common(cnf_cmd);
    cnf_cmd->add_option("out", out_path, "output DIMACS file")->required();

    auto * ftci_cmd = app.add_subcommand("ftci", "audit after protecting every causal descendant of P");
    add_common(ftci_cmd);
    add_audit_flags(ftci_cmd);
    ftci_cmd->add_option("graph", graph_path, "causal graph (JSON)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        AuditOptions opts;
        opts.notion = parse_notion(notion);
        opts.engine = parse_engine(engine);
        opts.per_decision = per_decision;
        opts.ignore_constraints = ignore_constraints;
        opts.timing = timing;
        opts.limits = limits;
        auto text = read_file(model_path);

        if (*audit_cmd || *ftci_cmd) {
            std::optional<CausalGraph> graph;
            if (*ftci_cmd)
                graph = parse_causal_graph(read_file(graph_path));
            auto report = audit(text, opts, graph ? &*graph : nullptr);
            out << (parse_format(format.empty() ? "json" : format) ? to_json_text(report) : to_text(report));
            return exit_code(report);
        }
        if (*explain_cmd)
            return cmd_explain(text, instance, opts, parse_format(format.empty() ? "text" : format), out);
        if (*check_cmd)
            return cmd_check(text, what, opts, parse_format(format.empty() ? "text" : format), out);
        if (*cnf_cmd)
            return cmd_export_cnf(text, out_path, opts, out);
    }
    catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception & e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace fairaudit::cli
