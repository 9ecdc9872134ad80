#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "grainmix/model.hpp"

namespace grainmix {

struct SearchLimits {
    std::size_t max_bins = 8;
    std::size_t max_trucks = 8;
    std::size_t max_elevators = 6;
};

struct SolveConfig {
    /// Quantities are multiples of unit / lattice_denominator.
    std::int64_t lattice_denominator = 12;
    Rational unit = 1;
    std::optional<std::size_t> max_trips;
    std::optional<std::chrono::milliseconds> time_budget;
    SearchLimits limits;

    [[nodiscard]] Rational step() const;
};

struct SolveResult {
    Solution solution;
    ProfitReport report;
    /// Positive-profit trips the exact search could choose from.
    std::size_t candidates = 0;
    std::uint64_t nodes = 0;
};

/*
 * Exact optimum over lattice quantities.
 *
 * Every single-bin or finite-mixing two-bin trip with lattice quantities
 * that fits some truck and the target elevator is enumerated and kept if
 * its own profit is positive (a trip that does not pay can always be
 * dropped). Candidates are ranked by profit, then elevator, then loads, and
 * each truck in id order takes one of them or idles. Trucks of equal
 * capacity take non-decreasing ranks, which removes permutations of the same
 * plan. Subtrees are cut with two upper bounds: the best trip each remaining
 * truck could carry, and the best profit per unit times the remaining
 * elevator and bin capacity.
 *
 * Among maximum-profit plans the one returned has the lexicographically
 * smallest per-truck rank vector, idle ranking last. Throws Error on size
 * limits ("search bound exceeded") or an exhausted time budget.
 */
SolveResult solve_exact(const GmInstance& instance, const SolveConfig& config = {});

/// Single-bin trips only: each bin in id order is shipped in truck-sized
/// chunks, trucks in id order, to the elevator with the best positive
/// marginal profit. Stops a bin when no shipment pays or trucks run out.
Solution unmixed_baseline(const GmInstance& instance);

/// Hill climbing from unmixed_baseline with lattice-step moves: retarget
/// a trip, re-pair or drop a bin, nudge a quantity, move a step of grain
/// between trucks, or start a trip on an idle truck. Non-worsening moves are
/// accepted; the best plan seen is returned.
SolveResult solve_local_search(const GmInstance& instance, const SolveConfig& config, std::uint64_t seed,
                               std::size_t iterations);

}  // namespace grainmix
