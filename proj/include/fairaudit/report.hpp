#ifndef FAIRAUDIT_REPORT_HPP
#define FAIRAUDIT_REPORT_HPP

#include <fairaudit/fairness.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

enum class Notion
{
    Ftu,
    Existential,
    Universal
};

auto to_string(Notion n) -> std::string;
auto parse_notion(const std::string & s) -> Notion;

struct ExplanationRecord
{
    std::vector<std::string> features;
    bool fair = true;
    std::uint64_t coverage = 0;

    friend auto operator==(const ExplanationRecord &, const ExplanationRecord &) -> bool = default;
};

struct DecisionRecord
{
    std::vector<Value> instance;
    unsigned label = 0;
    std::string status;
    std::vector<ExplanationRecord> pi_explanations;

    friend auto operator==(const DecisionRecord &, const DecisionRecord &) -> bool = default;
};

struct LooseRecord
{
    std::vector<Value> instance;
    std::string feature;

    friend auto operator==(const LooseRecord &, const LooseRecord &) -> bool = default;
};

/**
 * Machine-readable audit result. Instances are written as arrays of domain
 * values with booleans as 0/1. Checks that were not run (only FTU is run
 * for the ftu notion) are null.
 */
struct AuditReport
{
    std::string model_digest;

    std::vector<std::string> features;
    std::vector<std::string> protected_features;
    std::vector<std::string> newly_protected;
    std::optional<std::uint64_t> full_size;
    std::optional<std::uint64_t> constrained_size;
    bool constraints_ignored = false;

    std::string scope_profile;
    std::string notion;
    std::string engine;

    bool holds = true;
    std::optional<bool> ftu;
    std::optional<bool> existential;
    std::optional<bool> universal;
    std::optional<bool> loose;
    std::optional<bool> disentangled;
    std::optional<bool> decomposable;

    std::optional<std::pair<std::vector<Value>, std::vector<Value>>> ftu_witness;
    std::optional<DecisionRecord> existential_witness;
    std::optional<DecisionRecord> universal_witness;
    std::vector<LooseRecord> loose_witnesses;
    std::vector<std::vector<Value>> disentangled_witnesses;

    std::vector<std::string> warnings;
    std::optional<std::vector<DecisionRecord>> decisions;
    std::optional<double> timing_ms;

    friend auto operator==(const AuditReport &, const AuditReport &) -> bool = default;
};

auto to_record(const FeatureSpace & space, const Explanation & e) -> ExplanationRecord;
auto to_record(const FeatureSpace & space, const DecisionVerdict & v) -> DecisionRecord;

/// Two-space-indented JSON with a fixed field order and a trailing newline.
auto to_json_text(const AuditReport & r) -> std::string;
/// Inverse of to_json_text. Throws ParseError or SemanticError.
auto report_from_json(std::string_view text) -> AuditReport;

/// Short human-readable summary.
auto to_text(const AuditReport & r) -> std::string;

} // namespace fairaudit

#endif
