#ifndef FAIRAUDIT_TESTS_FIXTURES_HPP
#define FAIRAUDIT_TESTS_FIXTURES_HPP

#include <fairaudit/document.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace fixtures {

inline auto path(const std::string & name) -> std::string
{
    return std::string{FAIRAUDIT_FIXTURES} + "/" + name;
}

inline auto text(const std::string & name) -> std::string
{
    std::ifstream in{path(name)};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline auto model(const std::string & name) -> fairaudit::ModelDocument
{
    return fairaudit::parse_model(text(name + ".json"));
}

/// The fixtures that reproduce worked examples.
inline const char * const worked_examples[] = {"ex0", "ex0a", "ex1", "ex2", "ex3", "ex4", "ex5", "ex0bis",
    "exFTUnotfair", "ex0ter", "adopt", "adopt2"};

} // namespace fixtures

#endif
