#include <fairaudit/satcheck.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>
#include <chrono>
#include <sstream>

namespace fairaudit {

namespace {

class Dpll
{
public:
    explicit Dpll(const CnfFormula & f) :
        _n(f.variable_count),
        _clauses(f.clauses),
        _value(static_cast<std::size_t>(_n) + 1, 0),
        _watches(2 * (static_cast<std::size_t>(_n) + 1))
    {
    }

    auto run(SearchStats & stats) -> std::optional<std::vector<bool>>
    {
        // level-0 units and watch setup
        for (std::size_t ci = 0; ci < _clauses.size(); ++ci) {
            auto & c = _clauses[ci];
            if (c.empty())
                return std::nullopt;
            if (c.size() == 1) {
                if (! enqueue(c[0]))
                    return std::nullopt;
                continue;
            }
            watch(c[0], ci);
            watch(c[1], ci);
        }
        if (! propagate(stats))
            return std::nullopt;

        while (true) {
            auto v = next_unassigned();
            if (v == 0)
                break;
            ++stats.nodes;
            _decisions.push_back({_trail.size(), -v, false});
            enqueue(-v);
            while (! propagate(stats)) {
                if (! backtrack(stats))
                    return std::nullopt;
            }
        }

        std::vector<bool> model(static_cast<std::size_t>(_n) + 1, false);
        for (int v = 1; v <= _n; ++v)
            model[v] = _value[v] > 0;
        return model;
    }

private:
    struct DecisionPoint
    {
        std::size_t trail_size;
        int literal;
        bool flipped;
    };

    static auto slot(int lit) -> std::size_t
    {
        return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
    }

    auto value_of(int lit) const -> int
    {
        auto v = _value[std::abs(lit)];
        return lit > 0 ? v : -v;
    }

    auto watch(int lit, std::size_t ci) -> void { _watches[slot(lit)].push_back(ci); }

    auto enqueue(int lit) -> bool
    {
        auto cur = value_of(lit);
        if (cur != 0)
            return cur > 0;
        _value[std::abs(lit)] = lit > 0 ? 1 : -1;
        _trail.push_back(lit);
        return true;
    }

    auto propagate(SearchStats & stats) -> bool
    {
        while (_head < _trail.size()) {
            const int falsified = -_trail[_head++];
            auto & list = _watches[slot(falsified)];
            std::size_t keep = 0;
            bool conflict = false;
            for (std::size_t w = 0; w < list.size(); ++w) {
                const auto ci = list[w];
                if (conflict) {
                    list[keep++] = ci;
                    continue;
                }
                auto & c = _clauses[ci];
                if (c[0] == falsified)
                    std::swap(c[0], c[1]);
                if (value_of(c[0]) > 0) {
                    list[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (value_of(c[k]) >= 0) {
                        std::swap(c[1], c[k]);
                        watch(c[1], ci);
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                list[keep++] = ci;
                if (value_of(c[0]) < 0)
                    conflict = true;
                else {
                    ++stats.propagations;
                    enqueue(c[0]);
                }
            }
            list.resize(keep);
            if (conflict) {
                _head = _trail.size();
                return false;
            }
        }
        return true;
    }

    auto undo_to(std::size_t size) -> void
    {
        while (_trail.size() > size) {
            _cursor = std::min(_cursor, std::abs(_trail.back()));
            _value[std::abs(_trail.back())] = 0;
            _trail.pop_back();
        }
        _head = size;
    }

    // Chronological: flip the most recent unflipped decision.
    auto backtrack(SearchStats & stats) -> bool
    {
        while (! _decisions.empty()) {
            auto d = _decisions.back();
            _decisions.pop_back();
            undo_to(d.trail_size);
            if (! d.flipped) {
                ++stats.nodes;
                _decisions.push_back({d.trail_size, -d.literal, true});
                enqueue(-d.literal);
                return true;
            }
        }
        return false;
    }

    auto next_unassigned() -> int
    {
        // everything below _cursor is assigned; undo_to lowers it
        for (; _cursor <= _n; ++_cursor)
            if (_value[_cursor] == 0)
                return _cursor;
        return 0;
    }

    int _n;
    std::vector<std::vector<int>> _clauses;
    std::vector<int> _value;
    std::vector<std::vector<std::size_t>> _watches;
    std::vector<int> _trail;
    std::size_t _head = 0;
    std::vector<DecisionPoint> _decisions;
    int _cursor = 1;
};

} // namespace

auto search(const CnfFormula & f) -> SearchResult
{
    auto start = std::chrono::steady_clock::now();
    SearchResult result;
    Dpll solver{f};
    auto model = solver.run(result.stats);
    result.stats.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (! model)
        return result;

    for (const auto & clause : f.clauses)
        if (std::none_of(clause.begin(), clause.end(), [&](int lit) { return (*model)[std::abs(lit)] == (lit > 0); }))
            throw InternalError("search returned an assignment that falsifies a clause");
    result.satisfiable = true;
    result.model = std::move(*model);
    return result;
}

auto export_dimacs(const CnfFormula & f) -> std::string
{
    std::ostringstream os;
    for (const auto & [var, name] : f.comment_map)
        os << "c " << var << ' ' << name << '\n';
    os << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const auto & clause : f.clauses) {
        for (auto lit : clause)
            os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

auto parse_dimacs(std::string_view text) -> CnfFormula
{
    CnfFormula f;
    std::istringstream in{std::string{text}};
    std::string line;
    std::size_t lineno = 0;
    long long declared_clauses = -1;
    std::vector<int> pending;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls{line};
        std::string first;
        if (! (ls >> first))
            continue;
        if (first == "c") {
            int var = 0;
            std::string name;
            if (ls >> var >> name)
                f.comment_map[var] = name;
            continue;
        }
        if (first == "p") {
            std::string fmt;
            long long vars = -1;
            if (! (ls >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0 || declared_clauses < 0)
                throw ParseError("malformed DIMACS header", lineno, 1);
            if (f.variable_count != 0 || ! f.clauses.empty())
                throw ParseError("duplicate DIMACS header", lineno, 1);
            f.variable_count = static_cast<int>(vars);
            continue;
        }
        if (declared_clauses < 0)
            throw ParseError("clause before the DIMACS header", lineno, 1);
        std::istringstream toks{line};
        long long lit = 0;
        while (toks >> lit) {
            if (lit == 0) {
                if (pending.empty())
                    throw ParseError("empty clause in DIMACS input", lineno, 1);
                f.clauses.push_back(std::move(pending));
                pending.clear();
            }
            else {
                if (std::llabs(lit) > f.variable_count)
                    throw ParseError("literal " + std::to_string(lit) + " exceeds the declared variable count", lineno, 1);
                pending.push_back(static_cast<int>(lit));
            }
        }
        if (! toks.eof())
            throw ParseError("non-numeric token in clause", lineno, 1);
    }
    if (! pending.empty())
        throw ParseError("last clause is not terminated by 0", lineno, 1);
    if (declared_clauses < 0)
        throw ParseError("missing DIMACS header", lineno, 1);
    if (static_cast<long long>(f.clauses.size()) != declared_clauses)
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
            std::to_string(f.clauses.size()), lineno, 1);
    for (const auto & [var, name] : f.comment_map)
        if (var < 1 || var > f.variable_count)
            throw ParseError("comment names undeclared variable " + std::to_string(var), 0, 0);
    return f;
}

} // namespace fairaudit
