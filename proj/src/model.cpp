#include "grainmix/model.hpp"

#include <algorithm>
#include <sstream>

namespace grainmix {

std::string to_string(ProteinScale s)
{
    return s == ProteinScale::fraction ? "fraction" : "percent";
}

ProteinScale protein_scale_from_string(const std::string& s)
{
    if (s == "fraction") return ProteinScale::fraction;
    if (s == "percent") return ProteinScale::percent;
    throw Error("unknown protein scale \"" + s + "\"");
}

bool Interval::contains(const Rational& x) const
{
    bool above = lo_closed ? x >= lo : x > lo;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool Interval::empty() const
{
    if (lo > hi) return true;
    if (lo == hi) return !(lo_closed && hi_closed);
    return false;
}

Rational PriceSchedule::lookup(const Rational& protein) const
{
    Rational total;
    for (const auto& e : entries)
        if (e.support.contains(protein)) total += e.price_per_unit;
    return total;
}

MixingMatrix::MixingMatrix(std::size_t bins)
    : n_(bins), cells_(bins * bins, ExtendedCost::infinity())
{
}

std::size_t MixingMatrix::index(BinId a, BinId b) const
{
    if (a >= n_ || b >= n_) throw Error("mixing matrix index out of range");
    if (a == b) throw Error("mixing cost of a bin with itself is undefined");
    return a * n_ + b;
}

const ExtendedCost& MixingMatrix::at(BinId a, BinId b) const
{
    return cells_[index(a, b)];
}

void MixingMatrix::set(BinId a, BinId b, ExtendedCost cost)
{
    if (cost.is_neg_inf() || (cost.is_finite() && cost.value() < Rational(0)))
        throw Error("mixing cost must be non-negative");
    cells_[index(a, b)] = cost;
    cells_[index(b, a)] = cost;
}

void check_instance(const GmInstance& instance)
{
    const Rational scale_max = instance.protein_scale == ProteinScale::fraction ? 1 : 100;
    const std::size_t ne = instance.elevators.size();
    for (std::size_t i = 0; i < instance.bins.size(); ++i) {
        const Bin& b = instance.bins[i];
        std::string where = "bin " + std::to_string(i);
        if (b.capacity <= Rational(0)) throw Error(where + ": capacity must be positive");
        if (b.protein < Rational(0) || b.protein > scale_max)
            throw Error(where + ": protein outside the declared " + to_string(instance.protein_scale) + " scale");
        if (b.delivery_cost.size() != ne)
            throw Error(where + ": delivery cost required for every elevator");
        for (const auto& c : b.delivery_cost)
            if (c < Rational(0)) throw Error(where + ": negative delivery cost");
    }
    for (std::size_t i = 0; i < instance.trucks.size(); ++i)
        if (instance.trucks[i].capacity <= Rational(0))
            throw Error("truck " + std::to_string(i) + ": capacity must be positive");
    for (std::size_t i = 0; i < ne; ++i) {
        const Elevator& e = instance.elevators[i];
        if (e.capacity <= Rational(0))
            throw Error("elevator " + std::to_string(i) + ": capacity must be positive");
        for (const auto& entry : e.schedule.entries)
            if (entry.support.empty())
                throw Error("elevator " + std::to_string(i) + ": empty price interval");
    }
    if (instance.mixing.size() != instance.bins.size())
        throw Error("mixing matrix size does not match bin count");
}

Rational Trip::quantity() const
{
    Rational q;
    for (const auto& l : loads) q += l.quantity;
    return q;
}

Rational load_protein(const GmInstance& instance, std::span<const Load> loads)
{
    Rational total;
    Rational weighted;
    for (const auto& l : loads) {
        if (l.bin >= instance.bins.size()) throw Error("load references unknown bin " + std::to_string(l.bin));
        total += l.quantity;
        weighted += l.quantity * instance.bins[l.bin].protein;
    }
    if (total <= Rational(0)) throw Error("empty load");
    return weighted / total;
}

std::string to_string(Violation::Kind k)
{
    switch (k) {
    case Violation::Kind::bin_overflow: return "BinOverflow";
    case Violation::Kind::truck_overflow: return "TruckOverflow";
    case Violation::Kind::elevator_overflow: return "ElevatorOverflow";
    case Violation::Kind::truck_reused: return "TruckReused";
    case Violation::Kind::too_many_bins: return "TooManyBins";
    case Violation::Kind::duplicate_bin: return "DuplicateBin";
    case Violation::Kind::non_positive_quantity: return "NonPositiveQuantity";
    case Violation::Kind::empty_trip: return "EmptyTrip";
    }
    return "?";
}

std::string Violation::describe() const
{
    std::ostringstream os;
    os << to_string(kind);
    switch (kind) {
    case Kind::bin_overflow: os << "(bin " << entity; break;
    case Kind::truck_overflow:
    case Kind::truck_reused: os << "(truck " << entity; break;
    case Kind::elevator_overflow: os << "(elevator " << entity; break;
    default: os << "(trip " << entity; break;
    }
    if (kind == Kind::bin_overflow || kind == Kind::truck_overflow || kind == Kind::elevator_overflow ||
        kind == Kind::too_many_bins)
        os << ": " << amount << " > " << bound;
    os << ')';
    return os.str();
}

std::vector<Violation> validate(const GmInstance& instance, const Solution& solution)
{
    using K = Violation::Kind;
    const auto nb = instance.bins.size();
    const auto nt = instance.trucks.size();
    const auto ne = instance.elevators.size();

    // Dangling references first: they make the rest meaningless.
    for (std::size_t i = 0; i < solution.trips.size(); ++i) {
        const Trip& t = solution.trips[i];
        if (t.truck >= nt) throw Error("trip " + std::to_string(i) + " references unknown truck " + std::to_string(t.truck));
        if (t.elevator >= ne)
            throw Error("trip " + std::to_string(i) + " references unknown elevator " + std::to_string(t.elevator));
        for (const auto& l : t.loads)
            if (l.bin >= nb) throw Error("trip " + std::to_string(i) + " references unknown bin " + std::to_string(l.bin));
    }

    std::vector<Violation> out;
    std::vector<Rational> bin_used(nb);
    std::vector<Rational> elev_used(ne);
    std::vector<int> truck_uses(nt, 0);

    for (std::size_t i = 0; i < solution.trips.size(); ++i) {
        const Trip& t = solution.trips[i];
        if (t.loads.empty()) out.push_back({K::empty_trip, i, {}, {}});

        std::vector<BinId> seen;
        Rational total;
        for (const auto& l : t.loads) {
            if (std::find(seen.begin(), seen.end(), l.bin) != seen.end())
                out.push_back({K::duplicate_bin, i, Rational(static_cast<std::int64_t>(l.bin)), {}});
            else
                seen.push_back(l.bin);
            if (l.quantity <= Rational(0)) out.push_back({K::non_positive_quantity, i, l.quantity, {}});
            total += l.quantity;
            bin_used[l.bin] += l.quantity;
        }
        if (seen.size() > max_bins_per_trip)
            out.push_back({K::too_many_bins, i, Rational(static_cast<std::int64_t>(seen.size())),
                           Rational(static_cast<std::int64_t>(max_bins_per_trip))});
        if (total > instance.trucks[t.truck].capacity)
            out.push_back({K::truck_overflow, t.truck, total, instance.trucks[t.truck].capacity});
        if (++truck_uses[t.truck] == 2) out.push_back({K::truck_reused, t.truck, {}, {}});
        elev_used[t.elevator] += total;
    }
    for (std::size_t b = 0; b < nb; ++b)
        if (bin_used[b] > instance.bins[b].capacity)
            out.push_back({K::bin_overflow, b, bin_used[b], instance.bins[b].capacity});
    for (std::size_t e = 0; e < ne; ++e)
        if (elev_used[e] > instance.elevators[e].capacity)
            out.push_back({K::elevator_overflow, e, elev_used[e], instance.elevators[e].capacity});
    return out;
}

TripValue evaluate_trip(const GmInstance& instance, const Trip& trip)
{
    TripValue v;
    v.quantity = trip.quantity();
    v.protein = load_protein(instance, trip.loads);
    v.revenue = v.quantity * instance.elevators.at(trip.elevator).schedule.lookup(v.protein);

    v.mixing_cost = Rational(0);
    for (std::size_t i = 0; i < trip.loads.size(); ++i)
        for (std::size_t j = i + 1; j < trip.loads.size(); ++j)
            v.mixing_cost = v.mixing_cost + instance.mixing.at(trip.loads[i].bin, trip.loads[j].bin);

    for (const auto& l : trip.loads)
        v.delivery_cost = max(v.delivery_cost, instance.bins[l.bin].delivery_cost.at(trip.elevator));

    v.profit = Extended(v.revenue) - v.mixing_cost - Extended(v.delivery_cost);
    return v;
}

ProfitReport evaluate(const GmInstance& instance, const Solution& solution)
{
    auto violations = validate(instance, solution);
    if (!violations.empty()) {
        std::string msg = "infeasible solution:";
        for (const auto& v : violations) msg += " " + v.describe();
        throw Error(msg);
    }

    ProfitReport r;
    r.mixing_cost = Rational(0);
    r.per_elevator.resize(instance.elevators.size());
    for (std::size_t e = 0; e < r.per_elevator.size(); ++e) {
        r.per_elevator[e].elevator = e;
        r.per_elevator[e].profit = Rational(0);
    }

    for (const auto& trip : solution.trips) {
        TripValue v = evaluate_trip(instance, trip);
        r.revenue += v.revenue;
        r.mixing_cost = r.mixing_cost + v.mixing_cost;
        r.delivery_cost += v.delivery_cost;

        ElevatorReport& er = r.per_elevator[trip.elevator];
        er.received += v.quantity;
        er.truck_count += 1;
        er.revenue += v.revenue;
        er.profit = er.profit + v.profit;
    }
    r.profit = Extended(r.revenue) - r.mixing_cost - Extended(r.delivery_cost);
    return r;
}

}  // namespace grainmix
