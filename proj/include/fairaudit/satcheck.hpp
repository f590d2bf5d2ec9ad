#ifndef FAIRAUDIT_SATCHECK_HPP
#define FAIRAUDIT_SATCHECK_HPP

#include <fairaudit/classifier.hpp>
#include <fairaudit/model.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairaudit {

/// Propositional formula in CNF over variables 1..variable_count.
/// Literals are signed variable indices.
struct CnfFormula
{
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
    /// Semantic name per variable, e.g. "x.m", "y.n=2", "aux.7".
    std::map<int, std::string> comment_map;

    auto new_variable(std::string name) -> int;
    auto add_clause(std::vector<int> clause) -> void;

    friend auto operator==(const CnfFormula &, const CnfFormula &) -> bool = default;
};

struct EncodeOptions
{
    /// Table classifiers are expanded into one clause per row and copy only
    /// up to this many rows.
    std::uint64_t max_table_rows = 4096;
};

/**
 * CNF that is satisfiable iff there are x, y in F[C] with x_N = y_N and
 * kappa(x) != kappa(y).
 *
 * Every feature gets a variable per copy ("x.<name>", "y.<name>") when its
 * domain is exactly {false, true}; any other domain is one-hot encoded
 * ("x.<name>=<value>") with exactly-one clauses. Constraint and classifier
 * expressions go through a Tseitin transformation; trees and tables get one
 * indicator variable per class and copy ("x.label=<c>").
 */
auto encode_ftu_counterexample(const FeatureSpace & space, const ConstraintSet & constraints, const Classifier & k,
    const EncodeOptions & options = {}) -> CnfFormula;
auto encode_ftu_counterexample(const ConstrainedSpace & cs, const Classifier & k, const EncodeOptions & options = {})
    -> CnfFormula;

struct SearchStats
{
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    double time_ms = 0.0;
};

struct SearchResult
{
    bool satisfiable = false;
    /// model[v] for v in 1..variable_count; model[0] is unused.
    std::vector<bool> model;
    SearchStats stats;
};

/// Chronological backtracking with unit propagation (two watched literals),
/// branching on the lowest unassigned variable, false first. SAT models are
/// checked against every clause before returning.
auto search(const CnfFormula & f) -> SearchResult;

/// Reads the witness pair back through comment_map and checks that both
/// instances satisfy the constraints, agree on N and get different labels.
auto decode_model(const CnfFormula & f, const std::vector<bool> & model, const FeatureSpace & space,
    const ConstraintSet & constraints, const Classifier & k) -> std::pair<Instance, Instance>;
auto decode_model(const CnfFormula & f, const std::vector<bool> & model, const ConstrainedSpace & cs,
    const Classifier & k) -> std::pair<Instance, Instance>;

/// DIMACS CNF: "c <var> <name>" lines, the "p cnf" header, then one clause
/// per line terminated by 0, in construction order.
auto export_dimacs(const CnfFormula & f) -> std::string;
auto parse_dimacs(std::string_view text) -> CnfFormula;

} // namespace fairaudit

#endif
