#pragma once

#include "grainmix/model.hpp"
#include "grainmix/solve.hpp"

namespace grainmix {

/// Three-tier elevator price list in percent protein: [10,11) pays 3,
/// [11,12) pays 4, [12,13) pays 6 per bushel.
PriceSchedule demo_price_schedule();

/*
 * Three bins of 50, 100 and 50 bushels at 10.8%, 11.6% and 12.8% protein,
 * three 100-bushel trucks and one elevator using demo_price_schedule().
 * Mixing and delivery are free, so profit equals revenue. The protein
 * values are chosen so that shipping each bin on its own earns 850 while
 * two 50+50 blends earn 1000.
 */
GmInstance demo_instance();

/// 50-bushel quantity steps (unit 100, denominator 2).
SolveConfig demo_solve_config();

struct DemoReport {
    Solution unmixed_solution;
    ProfitReport unmixed;
    Solution mixed_solution;
    ProfitReport mixed;
    Extended gain;
};

/// Unmixed baseline against the exact lattice optimum.
DemoReport run_demo(const GmInstance& instance, const SolveConfig& config);

}  // namespace grainmix
