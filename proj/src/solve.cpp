#include "grainmix/solve.hpp"

#include <algorithm>
#include <tuple>

#include "grainmix/random.hpp"

namespace grainmix {

Rational SolveConfig::step() const
{
    if (lattice_denominator < 1) throw Error("lattice denominator must be at least 1");
    if (unit <= Rational(0)) throw Error("lattice unit must be positive");
    return unit / Rational(lattice_denominator);
}

namespace {

struct Candidate {
    Trip trip;
    Rational quantity;
    Rational profit;
    Rational rate;
};

bool candidate_before(const Candidate& a, const Candidate& b)
{
    if (a.profit != b.profit) return a.profit > b.profit;
    if (a.trip.elevator != b.trip.elevator) return a.trip.elevator < b.trip.elevator;
    const auto key = [](const Trip& t) {
        std::vector<std::tuple<BinId, Rational>> k;
        for (const auto& l : t.loads) k.emplace_back(l.bin, l.quantity);
        return k;
    };
    return key(a.trip) < key(b.trip);
}

std::vector<Candidate> enumerate_candidates(const GmInstance& gm, const Rational& step)
{
    Rational truck_max;
    for (const auto& t : gm.trucks) truck_max = max(truck_max, t.capacity);

    std::vector<Candidate> out;
    auto consider = [&](Trip trip) {
        TripValue v = evaluate_trip(gm, trip);
        if (!v.profit.is_finite() || v.profit.value() <= Rational(0)) return;
        out.push_back({std::move(trip), v.quantity, v.profit.value(), v.profit.value() / v.quantity});
    };

    for (ElevatorId e = 0; e < gm.elevators.size(); ++e) {
        const Rational cap = min(truck_max, gm.elevators[e].capacity);
        for (BinId a = 0; a < gm.bins.size(); ++a) {
            const Rational cap_a = min(gm.bins[a].capacity, cap);
            for (Rational qa = step; qa <= cap_a; qa += step) consider(Trip{0, {{a, qa}}, e});

            for (BinId b = a + 1; b < gm.bins.size(); ++b) {
                if (!gm.mixing.at(a, b).is_finite()) continue;
                for (Rational qa = step; qa <= cap_a; qa += step)
                    for (Rational qb = step; qb <= gm.bins[b].capacity && qa + qb <= cap; qb += step)
                        consider(Trip{0, {{a, qa}, {b, qb}}, e});
            }
        }
    }
    std::sort(out.begin(), out.end(), candidate_before);
    return out;
}

class ExactSearch {
public:
    ExactSearch(const GmInstance& gm, const SolveConfig& config, std::vector<Candidate> cands)
        : gm_(gm), config_(config), cands_(std::move(cands)), idle_(cands_.size())
    {
        const std::size_t m = gm.trucks.size();
        prev_same_.assign(m, SIZE_MAX);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = j; i-- > 0;)
                if (gm.trucks[i].capacity == gm.trucks[j].capacity) {
                    prev_same_[j] = i;
                    break;
                }

        suffix_best_.assign(m + 1, Rational(0));
        for (std::size_t j = m; j-- > 0;) {
            Rational best;
            for (const auto& c : cands_)
                if (c.quantity <= gm.trucks[j].capacity) {
                    best = c.profit;  // sorted by profit
                    break;
                }
            suffix_best_[j] = suffix_best_[j + 1] + best;
        }
        for (const auto& c : cands_) best_rate_ = max(best_rate_, c.rate);

        for (const auto& b : gm.bins) {
            bin_left_.push_back(b.capacity);
            bin_total_ += b.capacity;
        }
        for (const auto& e : gm.elevators) {
            elev_left_.push_back(e.capacity);
            elev_total_ += e.capacity;
        }
        choice_.assign(m, idle_);
        best_choice_ = choice_;
        if (config.time_budget) deadline_ = std::chrono::steady_clock::now() + *config.time_budget;
    }

    void run() { dfs(0, Rational(0), 0); }

    [[nodiscard]] Solution best_solution() const
    {
        Solution s;
        for (std::size_t j = 0; j < best_choice_.size(); ++j) {
            if (best_choice_[j] == idle_) continue;
            Trip t = cands_[best_choice_[j]].trip;
            t.truck = j;
            s.trips.push_back(std::move(t));
        }
        return s;
    }

    [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

private:
    bool fits(const Candidate& c, std::size_t truck) const
    {
        if (c.quantity > gm_.trucks[truck].capacity) return false;
        if (c.quantity > elev_left_[c.trip.elevator]) return false;
        for (const auto& l : c.trip.loads)
            if (l.quantity > bin_left_[l.bin]) return false;
        return true;
    }

    void apply(const Candidate& c, int sign)
    {
        const Rational q = sign > 0 ? c.quantity : -c.quantity;
        elev_left_[c.trip.elevator] -= q;
        elev_total_ -= q;
        for (const auto& l : c.trip.loads) {
            const Rational lq = sign > 0 ? l.quantity : -l.quantity;
            bin_left_[l.bin] -= lq;
            bin_total_ -= lq;
        }
    }

    void dfs(std::size_t truck, const Rational& profit, std::size_t trips)
    {
        if ((++nodes_ & 0xfff) == 0 && deadline_ && std::chrono::steady_clock::now() > *deadline_)
            throw Error("time budget exceeded");
        if (profit > best_profit_) {
            best_profit_ = profit;
            best_choice_ = choice_;
        }
        if (truck == choice_.size()) return;

        Rational bound = min(suffix_best_[truck], best_rate_ * min(elev_total_, bin_total_));
        if (profit + bound <= best_profit_) return;

        const std::size_t first = prev_same_[truck] == SIZE_MAX ? 0 : choice_[prev_same_[truck]];
        const bool may_add = !config_.max_trips || trips < *config_.max_trips;
        for (std::size_t k = first; k < idle_ && may_add; ++k) {
            const Candidate& c = cands_[k];
            if (!fits(c, truck)) continue;
            choice_[truck] = k;
            apply(c, +1);
            dfs(truck + 1, profit + c.profit, trips + 1);
            apply(c, -1);
        }
        choice_[truck] = idle_;
        dfs(truck + 1, profit, trips);
    }

    const GmInstance& gm_;
    const SolveConfig& config_;
    std::vector<Candidate> cands_;
    std::size_t idle_;
    std::vector<std::size_t> prev_same_;
    std::vector<Rational> suffix_best_;
    Rational best_rate_;
    std::vector<Rational> bin_left_;
    std::vector<Rational> elev_left_;
    Rational bin_total_;
    Rational elev_total_;
    std::vector<std::size_t> choice_;
    std::vector<std::size_t> best_choice_;
    Rational best_profit_;
    std::uint64_t nodes_ = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

SolveResult solve_exact(const GmInstance& instance, const SolveConfig& config)
{
    check_instance(instance);
    const auto& lim = config.limits;
    if (instance.bins.size() > lim.max_bins || instance.trucks.size() > lim.max_trucks ||
        instance.elevators.size() > lim.max_elevators)
        throw Error("search bound exceeded");

    std::vector<Candidate> cands = enumerate_candidates(instance, config.step());
    const std::size_t ncand = cands.size();
    ExactSearch search(instance, config, std::move(cands));
    search.run();

    SolveResult r;
    r.solution = search.best_solution();
    r.report = evaluate(instance, r.solution);
    r.candidates = ncand;
    r.nodes = search.nodes();
    return r;
}

Solution unmixed_baseline(const GmInstance& instance)
{
    check_instance(instance);
    Solution s;
    std::vector<Rational> elev_left;
    for (const auto& e : instance.elevators) elev_left.push_back(e.capacity);

    TruckId next_truck = 0;
    for (BinId b = 0; b < instance.bins.size(); ++b) {
        const Bin& bin = instance.bins[b];
        Rational left = bin.capacity;
        while (left > Rational(0) && next_truck < instance.trucks.size()) {
            const Rational truck_cap = instance.trucks[next_truck].capacity;
            std::optional<ElevatorId> best_e;
            Rational best_q;
            Rational best_profit;
            for (ElevatorId e = 0; e < instance.elevators.size(); ++e) {
                const Rational q = min(min(left, truck_cap), elev_left[e]);
                if (q <= Rational(0)) continue;
                const Rational profit =
                    q * instance.elevators[e].schedule.lookup(bin.protein) - bin.delivery_cost[e];
                if (profit > best_profit) {
                    best_profit = profit;
                    best_q = q;
                    best_e = e;
                }
            }
            if (!best_e) break;
            s.trips.push_back(Trip{next_truck++, {{b, best_q}}, *best_e});
            left -= best_q;
            elev_left[*best_e] -= best_q;
        }
    }
    return s;
}

namespace {

/// Merges repeated bins, drops empty loads and trips.
void tidy(Solution& s)
{
    for (auto& t : s.trips) {
        std::vector<Load> merged;
        for (const auto& l : t.loads) {
            auto it = std::find_if(merged.begin(), merged.end(), [&](const Load& m) { return m.bin == l.bin; });
            if (it == merged.end())
                merged.push_back(l);
            else
                it->quantity += l.quantity;
        }
        std::erase_if(merged, [](const Load& l) { return l.quantity <= Rational(0); });
        t.loads = std::move(merged);
    }
    std::erase_if(s.trips, [](const Trip& t) { return t.loads.empty(); });
}

class Mutator {
public:
    Mutator(const GmInstance& gm, Rational step, std::uint64_t seed) : gm_(gm), step_(step), rng_(seed) {}

    bool mutate(Solution& s)
    {
        switch (rng_.below(5)) {
        case 0: return retarget(s);
        case 1: return repair_bins(s);
        case 2: return nudge(s);
        case 3: return transfer(s);
        default: return spawn(s);
        }
    }

private:
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_.below(n)); }

    std::vector<TruckId> idle_trucks(const Solution& s) const
    {
        std::vector<bool> used(gm_.trucks.size(), false);
        for (const auto& t : s.trips) used[t.truck] = true;
        std::vector<TruckId> out;
        for (TruckId i = 0; i < used.size(); ++i)
            if (!used[i]) out.push_back(i);
        return out;
    }

    std::optional<BinId> other_bin(const Trip& t)
    {
        std::vector<BinId> free;
        for (BinId b = 0; b < gm_.bins.size(); ++b)
            if (std::none_of(t.loads.begin(), t.loads.end(), [&](const Load& l) { return l.bin == b; }))
                free.push_back(b);
        if (free.empty()) return std::nullopt;
        return free[pick(free.size())];
    }

    bool retarget(Solution& s)
    {
        if (s.trips.empty() || gm_.elevators.size() < 2) return false;
        Trip& t = s.trips[pick(s.trips.size())];
        ElevatorId e = pick(gm_.elevators.size() - 1);
        t.elevator = e >= t.elevator ? e + 1 : e;
        return true;
    }

    bool repair_bins(Solution& s)
    {
        if (s.trips.empty()) return false;
        Trip& t = s.trips[pick(s.trips.size())];
        if (t.loads.size() >= 2 && rng_.coin()) {
            t.loads.erase(t.loads.begin() + static_cast<std::ptrdiff_t>(pick(t.loads.size())));
            return true;
        }
        auto b = other_bin(t);
        if (!b) return false;
        if (t.loads.size() < 2 && rng_.coin())
            t.loads.push_back({*b, step_});
        else
            t.loads[pick(t.loads.size())].bin = *b;
        return true;
    }

    bool nudge(Solution& s)
    {
        if (s.trips.empty()) return false;
        Trip& t = s.trips[pick(s.trips.size())];
        Load& l = t.loads[pick(t.loads.size())];
        l.quantity += rng_.coin() ? step_ : -step_;
        return true;
    }

    bool transfer(Solution& s)
    {
        if (s.trips.empty()) return false;
        const std::size_t from = pick(s.trips.size());
        const Load src = s.trips[from].loads[pick(s.trips[from].loads.size())];
        const Rational amount = min(step_, src.quantity);

        auto idle = idle_trucks(s);
        const std::size_t targets = s.trips.size() - 1 + idle.size();
        if (targets == 0) return false;
        std::size_t k = pick(targets);
        if (k < s.trips.size() - 1) {
            Trip& dst = s.trips[k >= from ? k + 1 : k];
            auto it = std::find_if(dst.loads.begin(), dst.loads.end(), [&](const Load& l) { return l.bin == src.bin; });
            if (it != dst.loads.end())
                it->quantity += amount;
            else if (dst.loads.size() < max_bins_per_trip)
                dst.loads.push_back({src.bin, amount});
            else
                return false;
        } else {
            TruckId truck = idle[k - (s.trips.size() - 1)];
            s.trips.push_back(Trip{truck, {{src.bin, amount}}, s.trips[from].elevator});
        }
        for (auto& l : s.trips[from].loads)
            if (l.bin == src.bin) l.quantity -= amount;
        return true;
    }

    bool spawn(Solution& s)
    {
        auto idle = idle_trucks(s);
        if (idle.empty() || gm_.bins.empty() || gm_.elevators.empty()) return false;
        s.trips.push_back(Trip{idle[pick(idle.size())], {{pick(gm_.bins.size()), step_}}, pick(gm_.elevators.size())});
        return true;
    }

    const GmInstance& gm_;
    Rational step_;
    Rng rng_;
};

}  // namespace

SolveResult solve_local_search(const GmInstance& instance, const SolveConfig& config, std::uint64_t seed,
                               std::size_t iterations)
{
    Solution current = unmixed_baseline(instance);
    Extended current_profit = evaluate(instance, current).profit;
    Solution best = current;
    Extended best_profit = current_profit;

    Mutator mutator(instance, config.step(), seed);
    for (std::size_t it = 0; it < iterations; ++it) {
        Solution next = current;
        if (!mutator.mutate(next)) continue;
        tidy(next);
        if (config.max_trips && next.trips.size() > *config.max_trips) continue;
        if (!validate(instance, next).empty()) continue;
        Extended p = evaluate(instance, next).profit;
        if (p < current_profit) continue;
        current = std::move(next);
        current_profit = p;
        if (current_profit > best_profit) {
            best = current;
            best_profit = current_profit;
        }
    }

    SolveResult r;
    r.solution = std::move(best);
    r.report = evaluate(instance, r.solution);
    return r;
}

}  // namespace grainmix
