#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grainmix/rational.hpp"

namespace grainmix {

using BinId = std::size_t;
using TruckId = std::size_t;
using ElevatorId = std::size_t;

/// Protein values are either fractions in [0,1] or percentages in [0,100].
enum class ProteinScale { fraction, percent };

std::string to_string(ProteinScale s);
ProteinScale protein_scale_from_string(const std::string& s);

/// A support interval with independently open or closed ends.
/// A single exact point is the closed interval [p, p].
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = false;

    static Interval point(const Rational& p) { return {p, p, true, true}; }
    static Interval half_open(const Rational& lo, const Rational& hi) { return {lo, hi, true, false}; }

    [[nodiscard]] bool contains(const Rational& x) const;
    [[nodiscard]] bool is_point() const { return lo == hi && lo_closed && hi_closed; }
    [[nodiscard]] bool empty() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct PriceEntry {
    Interval support;
    Rational price_per_unit;

    friend bool operator==(const PriceEntry&, const PriceEntry&) = default;
};

/*
 * Piecewise price-per-unit schedule. Entries are additive: the price at a
 * protein value is the sum over every entry whose support contains it, so
 * overlapping entries stack and an empty schedule pays nothing.
 */
struct PriceSchedule {
    std::vector<PriceEntry> entries;

    [[nodiscard]] Rational lookup(const Rational& protein) const;

    friend bool operator==(const PriceSchedule&, const PriceSchedule&) = default;
};

inline Rational price_lookup(const PriceSchedule& schedule, const Rational& protein)
{
    return schedule.lookup(protein);
}

struct Bin {
    Rational capacity;
    Rational protein;
    /// Per-trip cost of hauling from this bin, indexed by elevator.
    std::vector<Rational> delivery_cost;

    friend bool operator==(const Bin&, const Bin&) = default;
};

struct Truck {
    Rational capacity;

    friend bool operator==(const Truck&, const Truck&) = default;
};

struct Elevator {
    Rational capacity;
    PriceSchedule schedule;

    friend bool operator==(const Elevator&, const Elevator&) = default;
};

/// Symmetric bin-pair mixing costs. Unset pairs cost +inf; the diagonal is
/// never queried.
class MixingMatrix {
public:
    MixingMatrix() = default;
    explicit MixingMatrix(std::size_t bins);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] const ExtendedCost& at(BinId a, BinId b) const;
    void set(BinId a, BinId b, ExtendedCost cost);

    friend bool operator==(const MixingMatrix&, const MixingMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(BinId a, BinId b) const;

    std::size_t n_ = 0;
    std::vector<ExtendedCost> cells_;
};

struct GmInstance {
    std::vector<Bin> bins;
    std::vector<Truck> trucks;
    std::vector<Elevator> elevators;
    MixingMatrix mixing;
    ProteinScale protein_scale = ProteinScale::fraction;

    friend bool operator==(const GmInstance&, const GmInstance&) = default;
};

/// Throws Error when the instance breaks a structural invariant
/// (non-positive capacity, protein outside its scale, ragged delivery table,
/// mixing matrix of the wrong size, malformed schedule interval).
void check_instance(const GmInstance& instance);

struct Load {
    BinId bin = 0;
    Rational quantity;

    friend bool operator==(const Load&, const Load&) = default;
};

struct Trip {
    TruckId truck = 0;
    std::vector<Load> loads;
    ElevatorId elevator = 0;

    [[nodiscard]] Rational quantity() const;

    friend bool operator==(const Trip&, const Trip&) = default;
};

struct Solution {
    std::vector<Trip> trips;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Quantity-weighted average protein of a set of loads.
Rational load_protein(const GmInstance& instance, std::span<const Load> loads);

struct Violation {
    enum class Kind {
        bin_overflow,
        truck_overflow,
        elevator_overflow,
        truck_reused,
        too_many_bins,
        duplicate_bin,
        non_positive_quantity,
        empty_trip,
    };

    Kind kind;
    /// Bin, truck or elevator id for capacity violations; trip index otherwise.
    std::size_t entity = 0;
    Rational amount;
    Rational bound;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(Violation::Kind k);

/// Bins allowed on one truck.
inline constexpr std::size_t max_bins_per_trip = 2;

/*
 * Capacity and shape check of a candidate solution. Returns every violated
 * constraint; an empty result means the solution is feasible. References to
 * bins, trucks or elevators that do not exist are an Error, not a violation.
 */
std::vector<Violation> validate(const GmInstance& instance, const Solution& solution);

struct ElevatorReport {
    ElevatorId elevator = 0;
    Rational received;
    std::size_t truck_count = 0;
    Rational revenue;
    /// Revenue at this elevator minus mixing and delivery costs of the trips
    /// that end there; -inf when one of those trips mixes an infinite pair.
    Extended profit;

    friend bool operator==(const ElevatorReport&, const ElevatorReport&) = default;
};

struct ProfitReport {
    Rational revenue;
    ExtendedCost mixing_cost;
    Rational delivery_cost;
    Extended profit;
    std::vector<ElevatorReport> per_elevator;

    friend bool operator==(const ProfitReport&, const ProfitReport&) = default;
};

struct TripValue {
    Rational quantity;
    Rational protein;
    Rational revenue;
    ExtendedCost mixing_cost;
    Rational delivery_cost;
    Extended profit;
};

/// Revenue and costs of a single trip, ignoring every other trip.
/// Delivery is charged once per trip: the largest bin-to-elevator cost among
/// the loaded bins.
TripValue evaluate_trip(const GmInstance& instance, const Trip& trip);

/// Profit of a feasible solution. Throws Error listing the violations when
/// validate() is not empty.
ProfitReport evaluate(const GmInstance& instance, const Solution& solution);

}  // namespace grainmix
