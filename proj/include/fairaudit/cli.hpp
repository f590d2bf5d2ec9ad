#ifndef FAIRAUDIT_CLI_HPP
#define FAIRAUDIT_CLI_HPP

#include <fairaudit/fairness.hpp>
#include <fairaudit/report.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit::cli {

struct AuditOptions
{
    Notion notion = Notion::Existential;
    FtuEngine engine = FtuEngine::Exhaustive;
    bool per_decision = false;
    bool ignore_constraints = false;
    bool timing = false;
    Limits limits;
};

/// Audit of a model document's text. With a graph, the protected set is
/// first extended by causal reachability.
auto audit(const std::string & model_text, const AuditOptions & options, const CausalGraph * graph = nullptr)
    -> AuditReport;

/// Whether the report's requested notion holds, as a process exit code.
auto exit_code(const AuditReport & r) -> int;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0, 1 or 2.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace fairaudit::cli

#endif
