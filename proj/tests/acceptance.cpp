// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "grainmix/demo.hpp"
#include "grainmix/verify.hpp"
#include "oracles.hpp"

using namespace grainmix;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

bool run_criterion(int number, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool ok = out.ok && in_time;
    std::printf("criterion %d %s: %s (%.3f s%s) %s\n", number, ok ? "PASS" : "FAIL", title, secs,
                in_time ? "" : ", over time limit", out.detail.c_str());
    return ok;
}

/// Planted instances shared by the standard-reduction criteria.
std::vector<TdmInstance> planted_standard()
{
    std::vector<TdmInstance> out;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t alpha = 1 + i % 3;
        const std::size_t most = std::min<std::size_t>(8, alpha * alpha * alpha);
        const std::size_t count = alpha + (i / 3) % (most - alpha + 1);
        out.push_back(gen_random_tdm(alpha, count, 1000 + i, true));
    }
    return out;
}

Outcome demo_reproduction()
{
    DemoReport r = run_demo(demo_instance(), demo_solve_config());
    Outcome o;
    o.ok = r.unmixed.revenue == 850 && r.mixed.revenue == 1000 && r.gain == Extended(150) &&
           r.unmixed.profit == Extended(850) && r.mixed.profit == Extended(1000);
    o.detail = "unmixed=" + r.unmixed.profit.str() + " mixed=" + r.mixed.profit.str() + " gain=" + r.gain.str();
    return o;
}

Outcome forward_standard(const std::vector<TdmInstance>& instances)
{
    Outcome o;
    std::size_t bad = 0;
    for (const TdmInstance& tdm : instances) {
        ReductionArtifacts art = reduce_standard(tdm);
        Solution s = forward_solution(art, max_matching(tdm));
        ProfitReport r = evaluate(art.gm, s);
        bool good = r.profit == Extended(static_cast<std::int64_t>(tdm.alpha));
        for (const Trip& trip : s.trips) good = good && evaluate_trip(art.gm, trip).profit == Extended(1);
        bad += !good;
    }
    o.ok = bad == 0;
    o.detail = std::to_string(instances.size()) + " instances, " + std::to_string(bad) + " mismatches";
    return o;
}

Outcome correspondence_standard(const std::vector<TdmInstance>& instances)
{
    Outcome o;
    std::size_t discrepancies = 0, missing_witness = 0, extraction = 0;
    for (const TdmInstance& tdm : instances) {
        CorrespondenceReport r = check_standard(tdm, ProteinMode::deterministic, 0, OmegaPolicy::clamped);
        if (r.profit_star != Rational(static_cast<std::int64_t>(r.alpha_star))) {
            ++discrepancies;
            missing_witness += !r.witness.has_value();
        }
        extraction += !r.extraction_ok;
    }
    o.ok = discrepancies == 0 && missing_witness == 0;
    o.detail = "discrepancies=" + std::to_string(discrepancies) + " extraction_failures=" + std::to_string(extraction);
    return o;
}

Outcome correspondence_planar()
{
    Outcome o;
    std::size_t bad = 0;
    const PlanarParams params;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t alpha = 1 + i % 2;
        const std::size_t count = alpha + (i / 2) % (alpha * alpha * alpha - alpha + 1);
        TdmInstance tdm = gen_random_tdm(alpha, count, 5000 + i, true);
        CorrespondenceReport r = check_planar(tdm, params);
        const Rational a(static_cast<std::int64_t>(r.alpha_star));
        const bool good = r.profit_star == 8 * a && r.revenue_star == 10 * a && r.cost_star == Extended(2 * a);
        bad += !good;
    }
    o.ok = bad == 0;
    o.detail = "50 instances, " + std::to_string(bad) + " mismatches";
    return o;
}

Outcome offpair_gadget()
{
    Outcome o;
    const bool example = max_offpair_load(Rational(1, 8), Rational(3, 4), Rational(3, 8)) == Rational(5, 6);

    std::mt19937_64 rng(404);
    std::size_t checked = 0, mismatches = 0;
    while (checked < 1000) {
        Rational a = oracle::unit_rational(rng, 64), b = oracle::unit_rational(rng, 64), t = oracle::unit_rational(rng, 64);
        Rational lo = min(a, b), hi = max(a, b);
        if (!(lo < t && t < hi) || t == (lo + hi) / 2) continue;
        ++checked;
        mismatches += max_offpair_load(lo, hi, t) != oracle::offpair_closed_form(lo, hi, t);
    }

    StdParams params;
    params.beta = Rational(1, 8);
    params.delta = Rational(1, 16);
    params.omega_raw = 2 * params.delta / params.beta;
    params.omega = 2;
    const OffpairBound bound = offpair_profit_bound(params, Rational(1, 8), Rational(3, 4), Rational(3, 8));

    std::size_t beta_violations = 0, audited = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        TdmInstance tdm = gen_random_tdm(3, 4 + seed % 5, seed, seed % 2 == 0);
        OffpairAudit audit = audit_offpair(reduce_standard(tdm));
        audited += audit.checked;
        beta_violations += audit.beta_bound_violations;
    }

    o.ok = example && mismatches == 0 && bound.beta_bound_violated && bound.load == Rational(5, 6);
    o.detail = "5/6 example " + std::string(example ? "exact" : "wrong") + ", closed form " +
               std::to_string(checked - mismatches) + "/" + std::to_string(checked) +
               ", 5/6 beta-bound violation " + (bound.beta_bound_violated ? "flagged" : "missed") +
               ", reduced-instance audit " + std::to_string(beta_violations) + "/" + std::to_string(audited) +
               " beta-bound violations";
    return o;
}

/*
 * Replaces part of a plan with two trucks bound for different elevators'
 * points that split one bin between them, each topped up from a second bin
 * in the ratio that hits its point. With `profitable`, only splits where both
 * trucks carry more than 2/3 (so both elevators can earn) are used. Trips
 * already bound for either elevator or drawing on the three bins are
 * removed. Returns false when no such pair is found.
 */
bool add_shared_bin_trips(const ReductionArtifacts& art, Solution& s, std::mt19937_64& rng,
                          const std::vector<std::pair<BinId, BinId>>& finite_pairs, bool profitable)
{
    const GmInstance& gm = art.gm;
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    if (gm.trucks.size() < 2 || finite_pairs.size() < 2) return false;
    const Rational half(1, 2);
    for (int attempt = 0; attempt < 400; ++attempt) {
        const PairEntry& e1 = art.pair_entry[pick(art.pair_entry.size())];
        const PairEntry& e2 = art.pair_entry[pick(art.pair_entry.size())];
        if (e1.elevator == e2.elevator) continue;
        const auto p1 = finite_pairs[pick(finite_pairs.size())];
        const auto p2 = finite_pairs[pick(finite_pairs.size())];
        BinId shared, o1, o2;
        if (p1.first == p2.first || p1.first == p2.second) {
            shared = p1.first;
            o1 = p1.second;
        } else if (p1.second == p2.first || p1.second == p2.second) {
            shared = p1.second;
            o1 = p1.first;
        } else {
            continue;
        }
        o2 = p2.first == shared ? p2.second : p2.first;
        if (o1 == o2) continue;

        // other / shared quantity ratio that averages to the target
        auto ratio = [&](BinId other, const Rational& t) -> std::optional<Rational> {
            const Rational ps = gm.bins[shared].protein, po = gm.bins[other].protein;
            if (!((min(ps, po) < t) && (t < max(ps, po)))) return std::nullopt;
            return (ps - t) / (t - po);
        };
        auto r1 = ratio(o1, e1.support.lo), r2 = ratio(o2, e2.support.lo);
        if (!r1 || !r2) continue;
        // Either a lattice split or the split that fills one of the other bins.
        std::vector<Rational> splits;
        for (std::int64_t k = 1; k < 6; ++k) splits.emplace_back(k, 12);
        if (*r1 > 1) splits.push_back(half / *r1);
        if (*r2 > 1) splits.push_back(half - half / *r2);
        const Rational s1 = splits[pick(splits.size())], s2 = half - s1;
        if (s1 <= 0 || s2 <= 0) continue;
        const Rational q1 = s1 * *r1, q2 = s2 * *r2;
        if (q1 > half || q2 > half) continue;
        if (profitable && (s1 + q1 <= Rational(2, 3) || s2 + q2 <= Rational(2, 3))) continue;

        const TruckId t1 = pick(gm.trucks.size());
        TruckId t2 = pick(gm.trucks.size() - 1);
        if (t2 >= t1) ++t2;
        std::erase_if(s.trips, [&](const Trip& t) {
            if (t.truck == t1 || t.truck == t2 || t.elevator == e1.elevator || t.elevator == e2.elevator) return true;
            return std::any_of(t.loads.begin(), t.loads.end(),
                               [&](const Load& l) { return l.bin == shared || l.bin == o1 || l.bin == o2; });
        });
        s.trips.push_back(Trip{t1, {{shared, s1}, {o1, q1}}, e1.elevator});
        s.trips.push_back(Trip{t2, {{shared, s2}, {o2, q2}}, e2.elevator});
        return true;
    }
    return false;
}

/*
 * Random plan on a reduced instance: start from the matched plan, then shrink
 * trips, send wrong pairs at other elevators' points, reroute or drop trips.
 * Trips are removed at random until the plan validates.
 */
Solution perturbed_plan(const ReductionArtifacts& art, std::mt19937_64& rng)
{
    const GmInstance& gm = art.gm;
    Solution s = forward_solution(art, max_matching(art.source));
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<std::pair<BinId, BinId>> finite_pairs;
    for (BinId a = 0; a < gm.bins.size(); ++a)
        for (BinId b = a + 1; b < gm.bins.size(); ++b)
            if (gm.mixing.at(a, b).is_finite()) finite_pairs.emplace_back(a, b);

    const std::size_t moves = 1 + pick(4);
    for (std::size_t m = 0; m < moves; ++m) {
        switch (pick(5)) {
        case 0:
            if (!s.trips.empty()) {
                Trip& t = s.trips[pick(s.trips.size())];
                const Rational q(static_cast<std::int64_t>(1 + pick(6)), 12);
                for (Load& l : t.loads) l.quantity = q;
            }
            break;
        case 1: {
            const PairEntry& entry = art.pair_entry[pick(art.pair_entry.size())];
            const Rational target = entry.support.lo;
            const auto [a, b] = finite_pairs[pick(finite_pairs.size())];
            Rational lo = gm.bins[a].protein, hi = gm.bins[b].protein;
            BinId low = a, high = b;
            if (hi < lo) {
                std::swap(lo, hi);
                std::swap(low, high);
            }
            if (!(lo < target && target < hi)) break;
            // Quantities in the ratio that averages to the target, scaled down from the largest such load.
            const Rational ratio = (hi - target) / (target - lo);
            const Rational total = max_offpair_load(lo, hi, target);
            const Rational scale = std::array{Rational(1), Rational(5, 6), Rational(2, 3), Rational(1, 2)}[pick(4)];
            const Rational q_high = total * scale / (1 + ratio);
            const Rational q_low = q_high * ratio;
            const TruckId truck = pick(gm.trucks.size());
            std::erase_if(s.trips, [&](const Trip& t) { return t.truck == truck; });
            s.trips.push_back(Trip{truck, {{low, q_low}, {high, q_high}}, entry.elevator});
            break;
        }
        case 2:
            if (!s.trips.empty()) s.trips[pick(s.trips.size())].elevator = pick(gm.elevators.size());
            break;
        case 3:
            add_shared_bin_trips(art, s, rng, finite_pairs, false);
            break;
        default:
            if (!s.trips.empty()) s.trips.erase(s.trips.begin() + static_cast<std::ptrdiff_t>(pick(s.trips.size())));
        }
    }
    if (pick(2) == 0) add_shared_bin_trips(art, s, rng, finite_pairs, true);
    while (!validate(gm, s).empty()) s.trips.erase(s.trips.begin() + static_cast<std::ptrdiff_t>(pick(s.trips.size())));
    return s;
}

Outcome submaximal_repair()
{
    Outcome o;
    std::mt19937_64 rng(606);
    std::size_t worse = 0, invalid = 0, pairs = 0, pair_violations = 0, repaired = 0, plans = 0, omega_two = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        const std::size_t alpha = 2 + i % 2;
        TdmInstance tdm = gen_random_tdm(alpha, alpha + 1 + i % 4, 7000 + i, true);
        ReductionArtifacts art = reduce_standard(tdm);
        Solution before = perturbed_plan(art, rng);
        const Extended p0 = evaluate(art.gm, before).profit;
        RepairOutcome out = repair_submaximal_detailed(art, before);
        ++plans;
        if (!validate(art.gm, out.solution).empty()) {
            ++invalid;
            continue;
        }
        worse += evaluate(art.gm, out.solution).profit < p0;
        repaired += !out.made_maximal.empty();
        if (art.std_params->omega != 2) continue;
        ++omega_two;
        for (const SubmaximalPair& pair : out.pairs) {
            ++pairs;
            pair_violations += pair.combined_profit > Extended(Rational(1, 2));
        }
    }
    o.ok = worse == 0 && invalid == 0 && pairs > 0 && pair_violations == 0 && omega_two == plans;
    o.detail = std::to_string(plans) + " plans, " + std::to_string(repaired) + " repaired, profit drops=" +
               std::to_string(worse) + ", invalid=" + std::to_string(invalid) + ", shared-bin pairs=" +
               std::to_string(pairs) + " over 1/2=" + std::to_string(pair_violations);
    return o;
}

Outcome matching_oracle()
{
    Outcome o;
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::size_t alpha = 2 + i % 4;
        const std::size_t count = std::min<std::size_t>(alpha * alpha * alpha, 1 + i % 12);
        TdmInstance tdm = gen_random_tdm(alpha, count, 9000 + i, false);
        Matching m = max_matching(tdm);
        bad += !is_matching(tdm, m) || m.size() != oracle::matching_size(tdm);
    }
    o.ok = bad == 0;
    o.detail = "100 instances, " + std::to_string(bad) + " mismatches";
    return o;
}

Outcome certificate_checker()
{
    GmInstance gm;
    const std::size_t n = 100, elevators = 10;
    gm.protein_scale = ProteinScale::fraction;
    for (std::size_t b = 0; b < 2 * n; ++b)
        gm.bins.push_back({1, Rational(static_cast<std::int64_t>(b + 1), 256), std::vector<Rational>(elevators, Rational(1, 3))});
    gm.trucks.assign(n, Truck{2});
    for (std::size_t e = 0; e < elevators; ++e) {
        PriceSchedule s;
        s.entries.push_back({Interval::half_open(0, Rational(1, 2)), 3});
        s.entries.push_back({Interval::half_open(Rational(1, 2), 1), 5});
        gm.elevators.push_back({30, s});
    }
    gm.mixing = MixingMatrix(gm.bins.size());
    Solution sol;
    for (std::size_t t = 0; t < n; ++t) {
        gm.mixing.set(2 * t, 2 * t + 1, Rational(1, 4));
        sol.trips.push_back(Trip{t, {{2 * t, Rational(3, 4)}, {2 * t + 1, Rational(1, 2)}}, t % elevators});
    }

    Outcome o;
    std::size_t ok = 0;
    Rational total;
    for (int i = 0; i < 10000; ++i) {
        if (!validate(gm, sol).empty()) continue;
        ++ok;
        total = evaluate(gm, sol).revenue;
    }
    o.ok = ok == 10000;
    o.detail = "10000 validate+evaluate passes of a 100-trip plan, revenue " + total.str();
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    // An optional argument restricts the run to one criterion.
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    auto wanted = [&](int n) { return only == 0 || only == n; };

    std::vector<TdmInstance> instances;
    if (wanted(2) || wanted(3)) instances = planted_standard();
    int failed = 0, ran = 0;
    auto criterion = [&](int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
        if (!wanted(n)) return;
        ++ran;
        failed += !run_criterion(n, title, limit_s, body);
    };
    criterion(1, "demo reproduction", 1.0, demo_reproduction);
    criterion(2, "forward direction, standard reduction", 10.0, [&] { return forward_standard(instances); });
    criterion(3, "correspondence, standard reduction", 60.0, [&] { return correspondence_standard(instances); });
    criterion(4, "correspondence, planar reduction", 60.0, correspondence_planar);
    criterion(5, "off-pair gadget", 0, offpair_gadget);
    criterion(6, "submaximal repair", 0, submaximal_repair);
    criterion(7, "3-DM oracle equivalence", 30.0, matching_oracle);
    criterion(8, "certificate checker", 5.0, certificate_checker);
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    std::printf("%d of %d criteria failed\n", failed, ran);
    return failed == 0 ? 0 : 1;
}
