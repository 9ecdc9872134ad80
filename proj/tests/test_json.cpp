#include <doctest.h>

#include "grainmix/demo.hpp"
#include "grainmix/json_io.hpp"
#include "oracles.hpp"

using namespace grainmix;
namespace gj = grainmix::json;

namespace {

template <class T, class Read>
void round_trip(const T& value, Read read)
{
    const std::string text = gj::to_json(value).dump();
    const T back = read(gj::parse_text(text));
    CHECK(back == value);
    CHECK(gj::to_json(back).dump() == text);
}

}  // namespace

TEST_SUITE("json")
{
    TEST_CASE("rationals and infinities as strings")
    {
        CHECK(gj::to_json(Rational(3, 4)) == "3/4");
        CHECK(gj::to_json(Rational(2)) == "2/1");
        CHECK(gj::to_json(Extended::infinity()) == "inf");
    }

    TEST_CASE("instances round-trip")
    {
        round_trip(demo_instance(), gj::instance_from_json);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            TdmInstance tdm = gen_random_tdm(1 + seed % 3, 1 + seed % 3, seed, true);
            round_trip(tdm, gj::tdm_from_json);
            round_trip(reduce_standard(tdm, seed % 2 ? ProteinMode::random : ProteinMode::deterministic, seed), gj::artifacts_from_json);
            round_trip(reduce_planar(tdm), gj::artifacts_from_json);
        }
    }

    TEST_CASE("solutions and reports round-trip")
    {
        GmInstance gm = demo_instance();
        SolveResult r = solve_exact(gm, demo_solve_config());
        round_trip(r.solution, gj::solution_from_json);
        round_trip(r.report, gj::report_from_json);

        GmInstance inf = gm;
        inf.mixing.set(0, 1, Extended::infinity());
        ProfitReport neg = evaluate(inf, Solution{{Trip{0, {{0, 10}, {1, 10}}, 0}}});
        round_trip(neg, gj::report_from_json);
    }

    TEST_CASE("documents carry a format version")
    {
        auto j = gj::to_json(demo_instance());
        CHECK(j.at("format") == 1);
        j["format"] = 2;
        CHECK_THROWS_AS(gj::instance_from_json(j), gj::ParseError);
    }

    TEST_CASE("errors point at the offending value")
    {
        auto j = gj::to_json(demo_instance());
        j["bins"][0]["capacity"] = "1/0";
        CHECK_THROWS_WITH_AS(gj::instance_from_json(j), doctest::Contains("/bins/0/capacity"), gj::ParseError);

        j = gj::to_json(demo_instance());
        j["bins"][1]["id"] = 5;
        CHECK_THROWS_AS(gj::instance_from_json(j), gj::ParseError);

        j = gj::to_json(demo_instance());
        j["bins"][0]["protein"] = "250/1";
        CHECK_THROWS_AS(gj::instance_from_json(j), gj::ParseError);

        CHECK_THROWS_WITH_AS(gj::parse_text("{\"alpha\": 1,"), doctest::Contains("byte"), gj::ParseError);

        auto t = gj::to_json(TdmInstance{2, {{0, 0, 0}}});
        t["triples"][0][2] = 3;
        CHECK_THROWS_WITH_AS(gj::tdm_from_json(t), doctest::Contains("/triples"), gj::ParseError);
    }
}
