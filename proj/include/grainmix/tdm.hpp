#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grainmix/rational.hpp"

namespace grainmix {

struct Triple {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// 3-dimensional matching instance over X = Y = Z = {0, ..., alpha-1}.
struct TdmInstance {
    std::size_t alpha = 0;
    std::vector<Triple> triples;

    friend bool operator==(const TdmInstance&, const TdmInstance&) = default;
};

/// Throws Error on a zero alpha, an out-of-range coordinate or a repeated triple.
void check_tdm(const TdmInstance& instance);

using Matching = std::vector<Triple>;

/// True iff every triple belongs to the instance and no two of them share
/// an x, y or z coordinate.
bool is_matching(const TdmInstance& instance, std::span<const Triple> subset);

struct MatchingBounds {
    std::size_t max_alpha = 6;
    std::size_t max_triples = 20;
};

/*
 * Maximum-cardinality matching by exact search.
 *
 * The size is found by branching on X elements, fewest remaining options
 * first, over used-element bitmasks. The returned witness is the
 * lexicographically smallest maximum matching in sorted triple order,
 * rebuilt one triple at a time with the same search as a feasibility test.
 * Throws Error("search bound exceeded") outside `bounds`.
 */
Matching max_matching(const TdmInstance& instance, MatchingBounds bounds = {});

/*
 * Seeded instance generator. With plant_perfect the instance contains alpha
 * pairwise disjoint triples built from two random permutations, so a perfect
 * matching always exists. Triples come back sorted. Fails when triple_count
 * is below alpha (planted) or above alpha^3.
 */
TdmInstance gen_random_tdm(std::size_t alpha, std::size_t triple_count, std::uint64_t seed, bool plant_perfect);

}  // namespace grainmix
