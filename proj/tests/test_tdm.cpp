#include <doctest.h>

#include "grainmix/tdm.hpp"
#include "oracles.hpp"

using namespace grainmix;

TEST_SUITE("tdm")
{
    TEST_CASE("matching membership")
    {
        TdmInstance tdm{2, {{0, 0, 0}, {0, 1, 1}, {1, 1, 1}}};
        for (const Triple& t : tdm.triples) CHECK(is_matching(tdm, std::vector<Triple>{t}));
        CHECK_FALSE(is_matching(tdm, std::vector<Triple>{{0, 0, 0}, {0, 1, 1}}));
        CHECK(is_matching(tdm, std::vector<Triple>{{0, 0, 0}, {1, 1, 1}}));
        CHECK_FALSE(is_matching(tdm, std::vector<Triple>{{1, 0, 0}}));
        CHECK_FALSE(is_matching(tdm, std::vector<Triple>{{5, 0, 0}}));
        CHECK(is_matching(tdm, std::vector<Triple>{}));
    }

    TEST_CASE("maximum matching on small fixed instances")
    {
        CHECK(max_matching(TdmInstance{1, {{0, 0, 0}}}).size() == 1);

        // Every pair of these four triples shares a coordinate.
        TdmInstance clash{2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
        CHECK(oracle::matching_size(clash) == 1);
        Matching m = max_matching(clash);
        CHECK(m.size() == 1);
        CHECK(m == Matching{{0, 0, 0}});

        TdmInstance disjoint{3, {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
        CHECK(max_matching(disjoint).size() == 3);

        CHECK(max_matching(TdmInstance{2, {}}).empty());
    }

    TEST_CASE("ties go to the lexicographically smallest matching")
    {
        TdmInstance tdm{2, {{0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
        CHECK(max_matching(tdm) == Matching{{0, 0, 0}, {1, 1, 1}});
    }

    TEST_CASE("agrees with subset enumeration")
    {
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            const std::size_t alpha = 1 + seed % 4;
            const std::size_t count = std::min<std::size_t>(alpha * alpha * alpha, 1 + seed % 12);
            TdmInstance tdm = gen_random_tdm(alpha, count, seed, false);
            Matching m = max_matching(tdm);
            CHECK(is_matching(tdm, m));
            CHECK(m.size() == oracle::matching_size(tdm));
        }
    }

    TEST_CASE("generator")
    {
        TdmInstance a = gen_random_tdm(3, 7, 99, true);
        CHECK(a == gen_random_tdm(3, 7, 99, true));
        CHECK(a.triples.size() == 7);
        CHECK_NOTHROW(check_tdm(a));
        CHECK(max_matching(a).size() == 3);
        CHECK(max_matching(gen_random_tdm(2, 2, 5, true)).size() == 2);

        TdmInstance b = gen_random_tdm(3, 9, 4, false);
        CHECK(max_matching(b).size() == oracle::matching_size(b));

        CHECK_THROWS_AS(gen_random_tdm(3, 2, 1, true), Error);
        CHECK_THROWS_AS(gen_random_tdm(2, 9, 1, false), Error);
        CHECK_THROWS_AS(gen_random_tdm(0, 0, 1, false), Error);
    }

    TEST_CASE("search bounds")
    {
        TdmInstance big = gen_random_tdm(7, 10, 1, true);
        CHECK_THROWS_WITH(max_matching(big), "search bound exceeded");
        CHECK(max_matching(big, MatchingBounds{7, 20}).size() == 7);
    }

    TEST_CASE("malformed instances")
    {
        CHECK_THROWS_AS(check_tdm(TdmInstance{2, {{0, 0, 2}}}), Error);
        CHECK_THROWS_AS(check_tdm(TdmInstance{2, {{0, 0, 1}, {0, 0, 1}}}), Error);
    }
}
