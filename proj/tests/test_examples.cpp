#include <fairaudit/cli.hpp>
#include <fairaudit/report.hpp>

#include "support/examples.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace fairaudit;

TEST(WorkedExamples, AllClaimsHold)
{
    auto runs = examples::run_all();
    EXPECT_EQ(runs.size(), 12U);
    for (const auto & run : runs) {
        EXPECT_LT(run.seconds, 1.0) << run.fixture;
        EXPECT_FALSE(run.checks.empty()) << run.fixture;
        for (const auto & c : run.checks)
            EXPECT_TRUE(c.passed) << c.fixture << ": " << c.claim << ", got " << c.observed;
    }
}

TEST(WorkedExamples, ReportSnapshots)
{
    std::vector<std::string> names(std::begin(fixtures::worked_examples), std::end(fixtures::worked_examples));
    names.insert(names.end(), {"maternity", "empty-space", "ex2-race"});
    for (const auto & name : names) {
        auto expected_path = "expected/" + name + ".json";
        ASSERT_TRUE(std::filesystem::exists(fixtures::path(expected_path))) << expected_path;
        cli::AuditOptions o;
        o.notion = Notion::Universal;
        o.per_decision = true;
        auto report = to_json_text(cli::audit(fixtures::text(name + ".json"), o));
        EXPECT_EQ(report, fixtures::text(expected_path)) << name;
    }
}
