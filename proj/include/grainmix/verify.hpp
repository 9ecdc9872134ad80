#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grainmix/reduction.hpp"
#include "grainmix/solve.hpp"

namespace grainmix {

/*
 * Most grain two half-unit bins with proteins p_low < p_high can put on one
 * truck while the truck averages exactly `target`. Below the pair average
 * the low bin goes in whole and the high bin tops it up; above it the roles
 * swap. At the pair average both bins go in whole (one unit).
 * Throws Error("unreachable average") unless p_low < target < p_high.
 */
Rational max_offpair_load(const Rational& p_low, const Rational& p_high, const Rational& target);

struct OffpairBound {
    Rational load;
    /// 1 / (1 + 2*delta/g), g = p_high - p_low.
    Rational pair_gap_bound;
    /// 1 / (1 + 2*delta/beta): the same bound with the smallest protein gap
    /// substituted for g.
    Rational beta_bound;
    bool pair_gap_bound_holds = false;
    bool beta_bound_violated = false;
    /// (1 + omega) * load - omega.
    Rational profit;
    /// 1 - omega.
    Rational claimed_profit_bound;
    bool claim_violated = false;
};

/// Best profit a wrong bin pair can earn at a point entry paying 1 + omega,
/// alongside the bounds that are supposed to rule it out.
OffpairBound offpair_profit_bound(const StdParams& params, const Rational& p_low, const Rational& p_high,
                                  const Rational& target);

struct Extraction {
    Matching matching;
    /// Profitable elevators whose grain does not come from exactly one
    /// truck carrying one of their triples' bin pairs.
    std::vector<ElevatorId> flagged;
    bool ok = false;
};

/// Reads a matching off a solution on a reduced instance: one triple per
/// profitable elevator, when that elevator is fed by a single truck carrying
/// exactly the bins of one of its triples.
Extraction extract_matching(const ReductionArtifacts& artifacts, const Solution& solution);

struct SubmaximalPair {
    ElevatorId first = 0;
    ElevatorId second = 0;
    Extended combined_profit;
};

struct RepairOutcome {
    Solution solution;
    /// Profitable under-one-unit elevators whose trucks share a bin, as
    /// found in the input.
    std::vector<SubmaximalPair> pairs;
    std::vector<ElevatorId> made_maximal;
    std::vector<ElevatorId> zeroed;
};

/*
 * Standard reductions only. Every profitable elevator that receives less
 * than one unit from its own triple's bins is topped up to half a unit from
 * each bin, and any other truck drawing on those bins is dropped. A step is
 * kept only when total profit does not fall, so the result validates and is
 * never worse than the input.
 */
RepairOutcome repair_submaximal_detailed(const ReductionArtifacts& artifacts, const Solution& solution);
Solution repair_submaximal(const ReductionArtifacts& artifacts, const Solution& solution);

struct OffpairAudit {
    std::size_t checked = 0;
    std::size_t beta_bound_violations = 0;
    std::size_t claim_violations = 0;
    std::size_t profitable = 0;
};

/// Runs offpair_profit_bound for every point entry against every other
/// finite-mixing bin pair that can reach it.
OffpairAudit audit_offpair(const ReductionArtifacts& artifacts);

struct CorrespondenceReport {
    ReductionKind kind = ReductionKind::standard;
    std::size_t alpha = 0;
    std::size_t triple_count = 0;
    std::size_t alpha_star = 0;
    Matching max_matching;
    Rational forward_profit;
    Rational profit_star;
    Rational revenue_star;
    ExtendedCost cost_star;
    /// Profit the claim predicts: alpha_star (standard) or
    /// (revenue - 2*cost) * alpha_star (planar).
    Rational expected_profit;
    bool forward_ok = false;
    bool backward_ok = false;
    /// Planar only; always true for standard reports.
    bool revenue_ok = true;
    bool cost_ok = true;
    bool degenerate = false;
    Matching extracted;
    std::vector<ElevatorId> flagged;
    bool extraction_ok = false;
    Solution optimum;
    std::optional<Solution> witness;
    OffpairAudit audit;

    /// Asserted checks only; extraction and audit counts are reported.
    [[nodiscard]] bool passed() const { return forward_ok && backward_ok && revenue_ok && cost_ok; }
};

struct CheckBounds {
    std::size_t max_alpha = 3;
    std::size_t max_triples = 8;
};

CorrespondenceReport check_standard(const TdmInstance& tdm, ProteinMode mode, std::uint64_t seed,
                                    OmegaPolicy policy, const SolveConfig& config = {}, CheckBounds bounds = {});

CorrespondenceReport check_planar(const TdmInstance& tdm, const PlanarParams& params = {},
                                  const SolveConfig& config = {}, CheckBounds bounds = {});

struct BatchConfig {
    ReductionKind kind = ReductionKind::standard;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::size_t alpha_min = 1;
    std::size_t alpha_max = 3;
    std::size_t max_triples = 8;
    bool plant = true;
    ProteinMode protein_mode = ProteinMode::deterministic;
    OmegaPolicy policy = OmegaPolicy::clamped;
    PlanarParams planar;
    SolveConfig solve;
    unsigned jobs = 1;
};

struct Trial {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    TdmInstance tdm;
    CorrespondenceReport report;
};

struct BatchReport {
    std::vector<Trial> trials;
    std::size_t failures = 0;
    std::size_t forward_failures = 0;
    std::size_t discrepancies = 0;
    std::size_t extraction_failures = 0;
    OffpairAudit audit;
};

/// Seed of trial `index` in a batch seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

/// The 3-DM instance a batch generates for one trial.
TdmInstance trial_instance(const BatchConfig& config, std::size_t index);

/// Runs config.trials independent checks, config.jobs at a time. Results
/// are ordered by trial index.
BatchReport run_batch(const BatchConfig& config);

}  // namespace grainmix
