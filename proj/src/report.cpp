#include <fairaudit/report.hpp>

#include <fairaudit/error.hpp>

#include <nlohmann/json.hpp>

#include <sstream>

namespace fairaudit {

using ojson = nlohmann::ordered_json;

auto to_string(Notion n) -> std::string
{
    switch (n) {
    case Notion::Ftu: return "ftu";
    case Notion::Existential: return "existential";
    case Notion::Universal: return "universal";
    }
    return "?";
}

auto parse_notion(const std::string & s) -> Notion
{
    if (s == "ftu")
        return Notion::Ftu;
    if (s == "existential")
        return Notion::Existential;
    if (s == "universal")
        return Notion::Universal;
    throw SemanticError("unknown notion '" + s + "'");
}

auto to_record(const FeatureSpace & space, const Explanation & e) -> ExplanationRecord
{
    return ExplanationRecord{space.names(e.features), e.fair, e.coverage_size};
}

auto to_record(const FeatureSpace & space, const DecisionVerdict & v) -> DecisionRecord
{
    DecisionRecord d;
    d.instance = v.decision.instance.values();
    d.label = v.decision.label.value;
    d.status = to_string(v.status);
    for (const auto & e : v.pi_explanations)
        d.pi_explanations.push_back(to_record(space, e));
    return d;
}

namespace {

template <typename T>
auto nullable(const std::optional<T> & v) -> ojson
{
    return v ? ojson(*v) : ojson(nullptr);
}

auto write(const ExplanationRecord & e) -> ojson
{
    ojson j;
    j["features"] = e.features;
    j["fair"] = e.fair;
    j["coverage"] = e.coverage;
    return j;
}

auto write(const DecisionRecord & d) -> ojson
{
    ojson j;
    j["instance"] = d.instance;
    j["label"] = d.label;
    j["status"] = d.status;
    auto pis = ojson::array();
    for (const auto & e : d.pi_explanations)
        pis.push_back(write(e));
    j["pi_explanations"] = std::move(pis);
    return j;
}

auto write_decision(const std::optional<DecisionRecord> & d) -> ojson
{
    return d ? write(*d) : ojson(nullptr);
}

template <typename T>
auto read_optional(const nlohmann::json & j, const char * key) -> std::optional<T>
{
    const auto & v = j.at(key);
    if (v.is_null())
        return std::nullopt;
    return v.get<T>();
}

auto read_explanation(const nlohmann::json & j) -> ExplanationRecord
{
    return ExplanationRecord{j.at("features").get<std::vector<std::string>>(), j.at("fair").get<bool>(),
        j.at("coverage").get<std::uint64_t>()};
}

auto read_decision(const nlohmann::json & j) -> DecisionRecord
{
    DecisionRecord d;
    d.instance = j.at("instance").get<std::vector<Value>>();
    d.label = j.at("label").get<unsigned>();
    d.status = j.at("status").get<std::string>();
    for (const auto & e : j.at("pi_explanations"))
        d.pi_explanations.push_back(read_explanation(e));
    return d;
}

auto read_decision_optional(const nlohmann::json & j) -> std::optional<DecisionRecord>
{
    if (j.is_null())
        return std::nullopt;
    return read_decision(j);
}

auto render_values(const std::vector<Value> & v) -> std::string
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

auto render_names(const std::vector<std::string> & names) -> std::string
{
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        s += (i ? "," : "") + names[i];
    return s + "}";
}

auto render_flag(const std::optional<bool> & b) -> std::string
{
    if (! b)
        return "not checked";
    return *b ? "yes" : "no";
}

} // namespace

auto to_json_text(const AuditReport & r) -> std::string
{
    ojson j;
    j["model_digest"] = r.model_digest;

    ojson space;
    space["features"] = r.features;
    space["protected"] = r.protected_features;
    space["newly_protected"] = r.newly_protected;
    space["full_size"] = nullable(r.full_size);
    space["constrained_size"] = nullable(r.constrained_size);
    space["constraints_ignored"] = r.constraints_ignored;
    j["space"] = std::move(space);

    j["scope_profile"] = r.scope_profile;
    j["notion"] = r.notion;
    j["engine"] = r.engine;

    ojson verdicts;
    verdicts["holds"] = r.holds;
    verdicts["ftu"] = nullable(r.ftu);
    verdicts["existential"] = nullable(r.existential);
    verdicts["universal"] = nullable(r.universal);
    verdicts["loose"] = nullable(r.loose);
    verdicts["disentangled"] = nullable(r.disentangled);
    verdicts["decomposable"] = nullable(r.decomposable);
    j["verdicts"] = std::move(verdicts);

    ojson witnesses;
    if (r.ftu_witness) {
        ojson pair;
        pair["x"] = r.ftu_witness->first;
        pair["y"] = r.ftu_witness->second;
        witnesses["ftu"] = std::move(pair);
    }
    else
        witnesses["ftu"] = nullptr;
    witnesses["existential"] = write_decision(r.existential_witness);
    witnesses["universal"] = write_decision(r.universal_witness);
    auto loose = ojson::array();
    for (const auto & l : r.loose_witnesses) {
        ojson lj;
        lj["instance"] = l.instance;
        lj["feature"] = l.feature;
        loose.push_back(std::move(lj));
    }
    witnesses["loose"] = std::move(loose);
    witnesses["disentangled"] = r.disentangled_witnesses;
    j["witnesses"] = std::move(witnesses);

    j["warnings"] = r.warnings;
    if (r.decisions) {
        auto ds = ojson::array();
        for (const auto & d : *r.decisions)
            ds.push_back(write(d));
        j["decisions"] = std::move(ds);
    }
    else
        j["decisions"] = nullptr;
    j["timing_ms"] = nullable(r.timing_ms);
    return j.dump(2) + "\n";
}

auto report_from_json(std::string_view text) -> AuditReport
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError(std::string{"malformed report JSON: "} + e.what(), 0, 0);
    }
    try {
        AuditReport r;
        r.model_digest = j.at("model_digest").get<std::string>();
        const auto & space = j.at("space");
        r.features = space.at("features").get<std::vector<std::string>>();
        r.protected_features = space.at("protected").get<std::vector<std::string>>();
        r.newly_protected = space.at("newly_protected").get<std::vector<std::string>>();
        r.full_size = read_optional<std::uint64_t>(space, "full_size");
        r.constrained_size = read_optional<std::uint64_t>(space, "constrained_size");
        r.constraints_ignored = space.at("constraints_ignored").get<bool>();

        r.scope_profile = j.at("scope_profile").get<std::string>();
        r.notion = j.at("notion").get<std::string>();
        r.engine = j.at("engine").get<std::string>();

        const auto & v = j.at("verdicts");
        r.holds = v.at("holds").get<bool>();
        r.ftu = read_optional<bool>(v, "ftu");
        r.existential = read_optional<bool>(v, "existential");
        r.universal = read_optional<bool>(v, "universal");
        r.loose = read_optional<bool>(v, "loose");
        r.disentangled = read_optional<bool>(v, "disentangled");
        r.decomposable = read_optional<bool>(v, "decomposable");

        const auto & w = j.at("witnesses");
        if (! w.at("ftu").is_null())
            r.ftu_witness = std::pair{w["ftu"].at("x").get<std::vector<Value>>(), w["ftu"].at("y").get<std::vector<Value>>()};
        r.existential_witness = read_decision_optional(w.at("existential"));
        r.universal_witness = read_decision_optional(w.at("universal"));
        for (const auto & l : w.at("loose"))
            r.loose_witnesses.push_back(LooseRecord{l.at("instance").get<std::vector<Value>>(), l.at("feature").get<std::string>()});
        r.disentangled_witnesses = w.at("disentangled").get<std::vector<std::vector<Value>>>();

        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        if (! j.at("decisions").is_null()) {
            r.decisions.emplace();
            for (const auto & d : j["decisions"])
                r.decisions->push_back(read_decision(d));
        }
        r.timing_ms = read_optional<double>(j, "timing_ms");
        return r;
    }
    catch (const nlohmann::json::exception & e) {
        throw SemanticError(std::string{"report is missing or mistypes a field: "} + e.what());
    }
}

auto to_text(const AuditReport & r) -> std::string
{
    std::ostringstream os;
    os << "model " << r.model_digest << "\n";
    os << "features " << render_names(r.features) << ", protected " << render_names(r.protected_features) << "\n";
    if (! r.newly_protected.empty())
        os << "newly protected " << render_names(r.newly_protected) << "\n";
    os << "|F| = " << (r.full_size ? std::to_string(*r.full_size) : "?") << ", |F[C]| = "
       << (r.constrained_size ? std::to_string(*r.constrained_size) : "?")
       << (r.constraints_ignored ? " (constraints ignored)" : "") << "\n";
    os << "scope profile " << r.scope_profile << "\n";
    os << "notion " << r.notion << ": " << (r.holds ? "holds" : "violated") << "\n";
    os << "  ftu          " << render_flag(r.ftu) << "\n";
    os << "  existential  " << render_flag(r.existential) << "\n";
    os << "  universal    " << render_flag(r.universal) << "\n";
    os << "  loose        " << render_flag(r.loose) << "\n";
    os << "  disentangled " << render_flag(r.disentangled) << "\n";
    os << "  decomposable " << render_flag(r.decomposable) << "\n";
    if (r.ftu_witness)
        os << "ftu counterexample " << render_values(r.ftu_witness->first) << " vs "
           << render_values(r.ftu_witness->second) << "\n";
    auto describe = [&](const char * what, const std::optional<DecisionRecord> & d) {
        if (! d)
            return;
        os << what << " " << render_values(d->instance) << " -> " << d->label << " " << d->status << ", PI:";
        for (const auto & e : d->pi_explanations)
            os << " " << render_names(e.features) << (e.fair ? "" : " (unfair)");
        os << "\n";
    };
    describe("not existentially fair at", r.existential_witness);
    describe("not universally fair at", r.universal_witness);
    if (! r.loose_witnesses.empty()) {
        const auto & l = r.loose_witnesses.front();
        os << "not loose at " << render_values(l.instance) << ", " << l.feature;
        if (r.loose_witnesses.size() > 1)
            os << " (+" << r.loose_witnesses.size() - 1 << " more)";
        os << "\n";
    }
    if (! r.disentangled_witnesses.empty())
        os << "not disentangled at " << render_values(r.disentangled_witnesses.front()) << "\n";
    if (r.decisions)
        for (const auto & d : *r.decisions)
            describe("decision", d);
    for (const auto & w : r.warnings)
        os << "warning: " << w << "\n";
    if (r.timing_ms)
        os << "time " << *r.timing_ms << " ms\n";
    return os.str();
}

} // namespace fairaudit
