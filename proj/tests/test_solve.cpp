#include <doctest.h>

#include "grainmix/demo.hpp"
#include "grainmix/reduction.hpp"
#include "grainmix/solve.hpp"
#include "oracles.hpp"

using namespace grainmix;

namespace {

GmInstance random_small(std::mt19937_64& rng, std::size_t bins, std::size_t trucks, std::size_t elevators)
{
    GmInstance gm;
    for (std::size_t b = 0; b < bins; ++b) {
        std::vector<Rational> dc;
        for (std::size_t e = 0; e < elevators; ++e) dc.push_back(oracle::unit_rational(rng, 2) / 2);
        gm.bins.push_back({Rational(static_cast<std::int64_t>(1 + rng() % 4), 4), oracle::unit_rational(rng, 8), dc});
    }
    for (std::size_t t = 0; t < trucks; ++t) gm.trucks.push_back({Rational(static_cast<std::int64_t>(2 + rng() % 3), 4)});
    for (std::size_t e = 0; e < elevators; ++e) {
        PriceSchedule s;
        const Rational lo = oracle::unit_rational(rng, 4);
        s.entries.push_back({Interval{lo, lo + Rational(1, 4), true, rng() % 2 == 0}, 1 + oracle::unit_rational(rng, 3) * 2});
        s.entries.push_back({Interval::point(oracle::unit_rational(rng, 8)), 2});
        gm.elevators.push_back({Rational(static_cast<std::int64_t>(1 + rng() % 3), 2), s});
    }
    gm.mixing = MixingMatrix(bins);
    for (BinId a = 0; a < bins; ++a)
        for (BinId b = a + 1; b < bins; ++b)
            if (rng() % 3) gm.mixing.set(a, b, oracle::unit_rational(rng, 4) / 4);
    return gm;
}

}  // namespace

TEST_SUITE("solve")
{
    TEST_CASE("nothing pays, nothing moves")
    {
        GmInstance gm;
        gm.bins = {{1, Rational(1, 4), {0}}, {1, Rational(1, 2), {0}}};
        gm.trucks = {{1}};
        gm.elevators = {{1, {}}};
        gm.mixing = MixingMatrix(2);
        gm.mixing.set(0, 1, Rational(0));
        SolveResult r = solve_exact(gm);
        CHECK(r.solution.trips.empty());
        CHECK(r.report.profit == Extended(0));
        CHECK(unmixed_baseline(gm).trips.empty());
    }

    TEST_CASE("empty instance")
    {
        GmInstance gm;
        CHECK(solve_exact(gm).solution.trips.empty());
        CHECK(unmixed_baseline(gm).trips.empty());
    }

    TEST_CASE("demo: blending beats shipping bins separately by 150")
    {
        const GmInstance gm = demo_instance();
        Solution base = unmixed_baseline(gm);
        CHECK(evaluate(gm, base).revenue == 850);
        SolveResult r = solve_exact(gm, demo_solve_config());
        CHECK(r.report.revenue == 1000);
        CHECK(r.report.profit == Extended(1000));
        CHECK(validate(gm, r.solution).empty());

        DemoReport d = run_demo(gm, demo_solve_config());
        CHECK(d.unmixed.profit == Extended(850));
        CHECK(d.mixed.profit == Extended(1000));
        CHECK(d.gain == Extended(150));
    }

    TEST_CASE("demo with proteins that make blending pointless")
    {
        GmInstance gm = demo_instance();
        gm.bins[0].protein = Rational(112, 10);
        gm.bins[1].protein = Rational(115, 10);
        gm.bins[2].protein = Rational(118, 10);
        DemoReport d = run_demo(gm, demo_solve_config());
        CHECK(d.gain == Extended(0));
        CHECK(d.mixed.profit == Extended(800));
    }

    TEST_CASE("planted reduced instance solves to alpha")
    {
        TdmInstance tdm{2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}}};
        ReductionArtifacts art = reduce_standard(tdm);
        SolveResult r = solve_exact(art.gm);
        CHECK(r.report.profit == Extended(2));
        CHECK(validate(art.gm, r.solution).empty());
    }

    TEST_CASE("agrees with plain enumeration on tiny instances")
    {
        std::mt19937_64 rng(77);
        for (int i = 0; i < 40; ++i) {
            GmInstance gm = random_small(rng, 2 + i % 2, 1 + i % 3, 1 + i % 2);
            SolveConfig c;
            c.lattice_denominator = 4;
            SolveResult r = solve_exact(gm, c);
            CHECK(validate(gm, r.solution).empty());
            CHECK(r.report.profit == oracle::best_profit(gm, Rational(1, 4)));
        }
    }

    TEST_CASE("finer lattices never lose profit")
    {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 25; ++i) {
            GmInstance gm = random_small(rng, 3, 2, 2);
            SolveConfig coarse, fine;
            coarse.lattice_denominator = 6;
            fine.lattice_denominator = 12;
            CHECK(solve_exact(gm, coarse).report.profit <= solve_exact(gm, fine).report.profit);
        }
    }

    TEST_CASE("deterministic result")
    {
        std::mt19937_64 rng(8);
        GmInstance gm = random_small(rng, 3, 3, 2);
        CHECK(solve_exact(gm).solution == solve_exact(gm).solution);
    }

    TEST_CASE("trip cap")
    {
        const GmInstance gm = demo_instance();
        SolveConfig c = demo_solve_config();
        c.max_trips = 1;
        SolveResult r = solve_exact(gm, c);
        CHECK(r.solution.trips.size() <= 1);
        CHECK(r.report.profit == Extended(600));
    }

    TEST_CASE("search bounds")
    {
        GmInstance gm;
        for (int b = 0; b < 9; ++b) gm.bins.push_back({1, Rational(b, 10), {}});
        gm.mixing = MixingMatrix(9);
        CHECK_THROWS_WITH(solve_exact(gm), "search bound exceeded");
        SolveConfig c;
        c.lattice_denominator = 0;
        CHECK_THROWS_AS(solve_exact(demo_instance(), c), Error);
    }

    TEST_CASE("local search")
    {
        const GmInstance gm = demo_instance();
        SolveConfig c = demo_solve_config();
        const Extended base = evaluate(gm, unmixed_baseline(gm)).profit;

        SolveResult idle = solve_local_search(gm, c, 1, 0);
        CHECK(idle.solution == unmixed_baseline(gm));

        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SolveResult r = solve_local_search(gm, c, seed, 1000);
            CHECK(validate(gm, r.solution).empty());
            CHECK(r.report.profit >= base);
            CHECK(r.report.profit == Extended(1000));
            CHECK(r.solution == solve_local_search(gm, c, seed, 1000).solution);
        }
    }

    TEST_CASE("local search on reduced and random instances")
    {
        TdmInstance tdm{2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}}};
        ReductionArtifacts art = reduce_standard(tdm);
        SolveResult ls = solve_local_search(art.gm, SolveConfig{}, 3, 3000);
        CHECK(validate(art.gm, ls.solution).empty());
        CHECK(ls.report.profit <= solve_exact(art.gm).report.profit);

        std::mt19937_64 rng(13);
        for (int i = 0; i < 20; ++i) {
            GmInstance gm = random_small(rng, 3, 3, 2);
            SolveConfig c;
            c.lattice_denominator = 4;
            SolveResult r = solve_local_search(gm, c, i, 300);
            CHECK(validate(gm, r.solution).empty());
            CHECK(r.report.profit >= evaluate(gm, unmixed_baseline(gm)).profit);
            CHECK(r.report.profit <= solve_exact(gm, c).report.profit);
        }
    }
}
