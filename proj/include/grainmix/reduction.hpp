#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grainmix/model.hpp"
#include "grainmix/tdm.hpp"

namespace grainmix {

enum class ProteinMode { deterministic, random };
/// `literal` (CLI name "paper") keeps omega = 2*delta/beta as computed;
/// `clamped` raises it to at least 2 so every omega >= 2 argument holds.
enum class OmegaPolicy { literal, clamped };
enum class ReductionKind { standard, planar };

std::string to_string(ProteinMode m);
std::string to_string(OmegaPolicy p);
std::string to_string(ReductionKind k);
ProteinMode protein_mode_from_string(const std::string& s);
OmegaPolicy omega_policy_from_string(const std::string& s);
ReductionKind reduction_kind_from_string(const std::string& s);

/*
 * n distinct protein values in (0,1) whose pairwise averages are all
 * distinct.
 *
 * deterministic: p_i = 2^i / 2^(n+1). Pair sums are distinct because binary
 * representations are unique.
 * random: seeded draws k / 2^(n+4), rejecting anything on a disallowed list
 * that holds every assigned value and every value that would average with an
 * assigned value to an existing pair average. Gives up after a bounded
 * number of draws.
 */
std::vector<Rational> assign_proteins(std::size_t n, ProteinMode mode, std::uint64_t seed = 0);

struct StdParams {
    Rational beta;
    Rational delta;
    Rational omega_raw;
    Rational omega;
    OmegaPolicy policy = OmegaPolicy::clamped;
    std::vector<Rational> protein_map;

    friend bool operator==(const StdParams&, const StdParams&) = default;
};

/// beta = smallest gap between two proteins, delta = smallest gap between
/// two pair averages, omega_raw = 2*delta/beta. With a single pair there is
/// nothing to separate: delta = beta and omega = 2.
StdParams compute_params(const std::vector<Rational>& proteins, OmegaPolicy policy = OmegaPolicy::clamped);

struct PlanarParams {
    Rational p = 12;
    Rational eps = Rational(1, 2);
    Rational revenue = 10;
    Rational cost = 1;

    friend bool operator==(const PlanarParams&, const PlanarParams&) = default;
};

/// eps > 0, revenue > 2*cost, and the bin proteins p -/+ eps stay on the
/// percent scale.
void check_planar_params(const PlanarParams& params);

/// Where a triple's bin pair is paid: a protein point (standard) or a window
/// (planar) on the triple's elevator.
struct PairEntry {
    ElevatorId elevator = 0;
    Interval support;

    friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

struct ReductionArtifacts {
    GmInstance gm;
    TdmInstance source;
    ReductionKind kind = ReductionKind::standard;
    std::optional<StdParams> std_params;
    std::optional<PlanarParams> planar_params;
    /// Indexed like source.triples.
    std::vector<TruckId> triple_to_truck;
    std::vector<PairEntry> pair_entry;
    std::vector<BinId> bin_of_x;
    std::vector<BinId> bin_of_y;

    /// Index of the triple in source, if (bin_a, bin_b) is an X/Y pair of
    /// a triple whose z is `elevator`.
    [[nodiscard]] std::optional<std::size_t> triple_for(BinId a, BinId b, ElevatorId elevator) const;

    friend bool operator==(const ReductionArtifacts&, const ReductionArtifacts&) = default;
};

/// Throws when maps are not total over source triples or the instance is
/// malformed.
void check_artifacts(const ReductionArtifacts& artifacts);

/*
 * Point-price construction. 2*alpha half-unit bins (X bins first), alpha
 * one-unit elevators, one one-unit truck per triple. Every elevator starts
 * paying nothing; each triple (x, y, z) adds a point entry at the average of
 * its two bins paying 1 + omega per unit to elevator z. Mixing is free on
 * triple pairs and infinite elsewhere; every bin-to-elevator delivery costs
 * omega.
 */
ReductionArtifacts reduce_standard(const TdmInstance& tdm, ProteinMode mode = ProteinMode::deterministic,
                                   std::uint64_t seed = 0, OmegaPolicy policy = OmegaPolicy::clamped);

/*
 * Window-price construction on the percent scale. X bins at p - eps, Y bins
 * at p + eps, all half a unit. Each elevator named by a triple pays `revenue`
 * per unit on [p, p + 2*eps); the rest pay nothing. Mixing costs `cost` on
 * triple pairs and is infinite elsewhere; delivery costs `cost` everywhere.
 */
ReductionArtifacts reduce_planar(const TdmInstance& tdm, const PlanarParams& params = {});

/// Trips that realise `matching` on the reduced instance: half a unit from
/// each of the triple's bins on the triple's truck to the triple's elevator.
Solution forward_solution(const ReductionArtifacts& artifacts, const Matching& matching);

}  // namespace grainmix
