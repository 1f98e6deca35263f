#include "doctest.h"

#include "commands.hpp"

#include <fstream>

using namespace homog;
using namespace homog::cli;

namespace {

RunConfig config(const std::string& sub, const std::string& input)
{
    RunConfig c;
    c.subcommand = sub;
    c.input = input;
    return c;
}

} // namespace

TEST_CASE("grid parser")
{
    CHECK(parse_grid("0:1:3", "") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_grid("", "2:2:1") == std::vector<double>{2.0});
    CHECK(parse_grid("0.1,-0.2,3", "") == std::vector<double>{0.1, -0.2, 3.0});
    CHECK_THROWS_AS(parse_grid("", ""), DomainError);
    CHECK_THROWS_AS(parse_grid("0:1", ""), DomainError);
    CHECK_THROWS_AS(parse_grid("0:1:2.5", ""), DomainError);
    CHECK_THROWS_AS(parse_grid("0,x", ""), DomainError);
}

TEST_CASE("every demo runs and exits cleanly")
{
    for (const auto& name : demo_names()) {
        CAPTURE(name);
        const Output out = run(config("demo", name));
        CHECK(out.exit_code == 0);
        CHECK(out.doc.at("command") == "demo " + name);
        CHECK_FALSE(render(out, "json").empty());
    }
    CHECK_THROWS_AS(run(config("demo", "nope")), DomainError);
}

TEST_CASE("koenigs document and csv")
{
    const Output out = run(config("koenigs", "mobius_half"));
    CHECK(out.exit_code == 0);
    CHECK(out.doc.begin().key() == "command");
    const std::string csv = render(out, "csv");
    CHECK(csv.rfind("n,coefficient\n0,0\n1,1\n", 0) == 0);
    CHECK_THROWS_AS(render(out, "xml"), DomainError);
}

TEST_CASE("exit codes")
{
    SUBCASE("obstructed shear")
    {
        CHECK(run(config("shear-curve", "obstructed")).exit_code == 3);
    }
    SUBCASE("not an involution")
    {
        std::ofstream("not_involution.json") << R"({"order": 4, "fx": [[1, 0, 2]], "fy": [[0, 1, 1]]})";
        const Output out = run(config("involution", "not_involution.json"));
        CHECK(out.exit_code == 2);
        CHECK(out.doc.at("involution") == false);
    }
    SUBCASE("unknown inputs")
    {
        CHECK_THROWS_AS(run(config("koenigs", "no_such_germ")), Error);
        CHECK_THROWS_AS(run(config("bogus", "")), Error);
    }
}

TEST_CASE("csv form is rejected when absent")
{
    Output empty;
    CHECK_THROWS_AS(render(empty, "csv"), DomainError);
}
