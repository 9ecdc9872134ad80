#include "grainmix/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "grainmix/random.hpp"

namespace grainmix {

Rational max_offpair_load(const Rational& p_low, const Rational& p_high, const Rational& target)
{
    if (!(p_low < target && target < p_high)) throw Error("unreachable average");
    const Rational half(1, 2);
    const Rational average = (p_low + p_high) / 2;
    if (target == average) return 1;
    if (target < average) {
        // Low bin full; solve (p_low/2 + q*p_high) / (1/2 + q) = target.
        Rational q = half * (target - p_low) / (p_high - target);
        return half + q;
    }
    // High bin full; solve (q*p_low + p_high/2) / (1/2 + q) = target.
    Rational q = half * (p_high - target) / (target - p_low);
    return half + q;
}

OffpairBound offpair_profit_bound(const StdParams& params, const Rational& p_low, const Rational& p_high,
                                  const Rational& target)
{
    OffpairBound out;
    out.load = max_offpair_load(p_low, p_high, target);
    const Rational gap = p_high - p_low;
    out.pair_gap_bound = (1 + 2 * params.delta / gap).reciprocal();
    out.beta_bound = (1 + 2 * params.delta / params.beta).reciprocal();
    out.pair_gap_bound_holds = out.load <= out.pair_gap_bound;
    out.beta_bound_violated = out.load > out.beta_bound;
    out.profit = (1 + params.omega) * out.load - params.omega;
    out.claimed_profit_bound = 1 - params.omega;
    out.claim_violated = out.profit > out.claimed_profit_bound;
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> trips_by_elevator(const GmInstance& gm, const Solution& s)
{
    std::vector<std::vector<std::size_t>> out(gm.elevators.size());
    for (std::size_t i = 0; i < s.trips.size(); ++i) out.at(s.trips[i].elevator).push_back(i);
    return out;
}

bool positive(const Extended& e)
{
    return e > Extended(0);
}

bool uses_bin(const Trip& t, BinId b)
{
    return std::any_of(t.loads.begin(), t.loads.end(), [&](const Load& l) { return l.bin == b; });
}

bool share_bin(const Trip& a, const Trip& b)
{
    return std::any_of(a.loads.begin(), a.loads.end(), [&](const Load& l) { return uses_bin(b, l.bin); });
}

}  // namespace

Extraction extract_matching(const ReductionArtifacts& artifacts, const Solution& solution)
{
    const ProfitReport report = evaluate(artifacts.gm, solution);
    const auto by_elevator = trips_by_elevator(artifacts.gm, solution);

    Extraction out;
    for (const auto& er : report.per_elevator) {
        if (!positive(er.profit)) continue;
        const auto& trips = by_elevator[er.elevator];
        std::optional<std::size_t> triple;
        if (trips.size() == 1) {
            const Trip& t = solution.trips[trips.front()];
            if (t.loads.size() == 2) triple = artifacts.triple_for(t.loads[0].bin, t.loads[1].bin, er.elevator);
        }
        if (triple)
            out.matching.push_back(artifacts.source.triples[*triple]);
        else
            out.flagged.push_back(er.elevator);
    }
    out.ok = out.flagged.empty() && is_matching(artifacts.source, out.matching);
    return out;
}

RepairOutcome repair_submaximal_detailed(const ReductionArtifacts& artifacts, const Solution& solution)
{
    if (artifacts.kind != ReductionKind::standard) throw Error("submaximal repair needs standard-reduction artifacts");
    const GmInstance& gm = artifacts.gm;
    const ProfitReport report = evaluate(gm, solution);
    const auto by_elevator = trips_by_elevator(gm, solution);

    std::vector<ElevatorId> submaximal;
    for (const auto& er : report.per_elevator)
        if (positive(er.profit) && er.received < Rational(1)) submaximal.push_back(er.elevator);

    RepairOutcome out;
    for (std::size_t i = 0; i < submaximal.size(); ++i)
        for (std::size_t j = i + 1; j < submaximal.size(); ++j) {
            ElevatorId e = submaximal[i], f = submaximal[j];
            bool shared = false;
            for (auto ti : by_elevator[e])
                for (auto tj : by_elevator[f]) shared = shared || share_bin(solution.trips[ti], solution.trips[tj]);
            if (shared)
                out.pairs.push_back({e, f, report.per_elevator[e].profit + report.per_elevator[f].profit});
        }

    Solution current = solution;
    Extended current_profit = report.profit;
    for (ElevatorId e : submaximal) {
        // Locate e's single trip in the current plan; earlier steps may have dropped it.
        std::vector<std::size_t> mine;
        for (std::size_t k = 0; k < current.trips.size(); ++k)
            if (current.trips[k].elevator == e) mine.push_back(k);
        if (mine.size() != 1) continue;
        const Trip& trip = current.trips[mine.front()];
        if (trip.loads.size() != 2 || !artifacts.triple_for(trip.loads[0].bin, trip.loads[1].bin, e)) continue;
        if (trip.quantity() == Rational(1)) continue;

        const BinId a = trip.loads[0].bin, b = trip.loads[1].bin;
        Solution next;
        std::vector<ElevatorId> dropped;
        for (std::size_t k = 0; k < current.trips.size(); ++k) {
            const Trip& t = current.trips[k];
            if (k == mine.front()) {
                next.trips.push_back(Trip{t.truck, {{a, Rational(1, 2)}, {b, Rational(1, 2)}}, e});
            } else if (uses_bin(t, a) || uses_bin(t, b)) {
                dropped.push_back(t.elevator);
            } else {
                next.trips.push_back(t);
            }
        }
        if (!validate(gm, next).empty()) continue;
        Extended p = evaluate(gm, next).profit;
        if (p < current_profit) continue;
        current = std::move(next);
        current_profit = p;
        out.made_maximal.push_back(e);
        out.zeroed.insert(out.zeroed.end(), dropped.begin(), dropped.end());
    }
    out.solution = std::move(current);
    return out;
}

Solution repair_submaximal(const ReductionArtifacts& artifacts, const Solution& solution)
{
    return repair_submaximal_detailed(artifacts, solution).solution;
}

OffpairAudit audit_offpair(const ReductionArtifacts& artifacts)
{
    OffpairAudit out;
    if (artifacts.kind != ReductionKind::standard) return out;
    const GmInstance& gm = artifacts.gm;
    const StdParams& params = *artifacts.std_params;

    for (std::size_t i = 0; i < artifacts.source.triples.size(); ++i) {
        const Triple& t = artifacts.source.triples[i];
        const BinId own_x = artifacts.bin_of_x[t.x], own_y = artifacts.bin_of_y[t.y];
        const Rational target = artifacts.pair_entry[i].support.lo;
        for (BinId a = 0; a < gm.bins.size(); ++a)
            for (BinId b = a + 1; b < gm.bins.size(); ++b) {
                if (!gm.mixing.at(a, b).is_finite()) continue;
                if ((a == own_x && b == own_y) || (a == own_y && b == own_x)) continue;
                Rational lo = min(gm.bins[a].protein, gm.bins[b].protein);
                Rational hi = max(gm.bins[a].protein, gm.bins[b].protein);
                if (!(lo < target && target < hi)) continue;
                OffpairBound bound = offpair_profit_bound(params, lo, hi, target);
                ++out.checked;
                out.beta_bound_violations += bound.beta_bound_violated;
                out.claim_violations += bound.claim_violated;
                out.profitable += bound.profit > Rational(0);
            }
    }
    return out;
}

namespace {

void check_bounds(const TdmInstance& tdm, CheckBounds bounds)
{
    if (tdm.alpha > bounds.max_alpha || tdm.triples.size() > bounds.max_triples)
        throw Error("search bound exceeded");
}

void fill_common(CorrespondenceReport& r, const ReductionArtifacts& art, const SolveConfig& config)
{
    r.kind = art.kind;
    r.alpha = art.source.alpha;
    r.triple_count = art.source.triples.size();
    r.max_matching = max_matching(art.source);
    r.alpha_star = r.max_matching.size();

    r.forward_profit = evaluate(art.gm, forward_solution(art, r.max_matching)).profit.value();

    SolveResult opt = solve_exact(art.gm, config);
    r.optimum = opt.solution;
    r.profit_star = opt.report.profit.value();
    r.revenue_star = opt.report.revenue;
    r.cost_star = opt.report.mixing_cost + Extended(opt.report.delivery_cost);
}

}  // namespace

CorrespondenceReport check_standard(const TdmInstance& tdm, ProteinMode mode, std::uint64_t seed,
                                    OmegaPolicy policy, const SolveConfig& config, CheckBounds bounds)
{
    check_bounds(tdm, bounds);
    CorrespondenceReport r;
    if (tdm.alpha == 0) {
        // Nothing to reduce: no bins, no trucks, profit 0.
        r.forward_ok = r.backward_ok = r.extraction_ok = true;
        r.cost_star = Rational(0);
        return r;
    }
    const ReductionArtifacts art = reduce_standard(tdm, mode, seed, policy);
    fill_common(r, art, config);

    const Rational alpha_star(static_cast<std::int64_t>(r.alpha_star));
    r.expected_profit = alpha_star;
    r.forward_ok = r.forward_profit == alpha_star && r.profit_star >= alpha_star;
    r.backward_ok = r.profit_star <= alpha_star;

    Extraction ext = extract_matching(art, repair_submaximal(art, r.optimum));
    r.extracted = ext.matching;
    r.flagged = ext.flagged;
    r.extraction_ok = ext.ok && static_cast<std::int64_t>(ext.matching.size()) >= r.profit_star.ceil();
    r.audit = audit_offpair(art);

    if (!r.forward_ok)
        r.witness = forward_solution(art, r.max_matching);
    else if (!r.backward_ok)
        r.witness = r.optimum;
    return r;
}

CorrespondenceReport check_planar(const TdmInstance& tdm, const PlanarParams& params, const SolveConfig& config,
                                  CheckBounds bounds)
{
    check_bounds(tdm, bounds);
    CorrespondenceReport r;
    r.kind = ReductionKind::planar;
    if (tdm.alpha == 0) {
        r.forward_ok = r.backward_ok = r.extraction_ok = true;
        r.cost_star = Rational(0);
        return r;
    }
    const ReductionArtifacts art = reduce_planar(tdm, params);
    fill_common(r, art, config);

    const Rational alpha_star(static_cast<std::int64_t>(r.alpha_star));
    const Rational per_trip = params.revenue - 2 * params.cost;
    r.expected_profit = per_trip * alpha_star;
    r.degenerate = per_trip.is_zero();
    r.forward_ok = r.forward_profit == r.expected_profit && r.profit_star >= r.expected_profit;
    r.backward_ok = r.profit_star <= r.expected_profit;
    r.revenue_ok = r.degenerate || r.revenue_star == params.revenue * alpha_star;
    r.cost_ok = r.degenerate || r.cost_star == Extended(2 * params.cost * alpha_star);

    Extraction ext = extract_matching(art, r.optimum);
    r.extracted = ext.matching;
    r.flagged = ext.flagged;
    r.extraction_ok =
        ext.ok && per_trip * Rational(static_cast<std::int64_t>(ext.matching.size())) >= r.profit_star;

    if (!r.forward_ok)
        r.witness = forward_solution(art, r.max_matching);
    else if (!r.passed())
        r.witness = r.optimum;
    return r;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index)
{
    // splitmix64 finaliser over (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TdmInstance trial_instance(const BatchConfig& config, std::size_t index)
{
    if (config.alpha_min == 0 || config.alpha_min > config.alpha_max) throw Error("invalid alpha range");
    Rng rng(trial_seed(config.seed, index));
    const std::size_t alpha = config.alpha_min + rng.below(config.alpha_max - config.alpha_min + 1);
    const std::size_t lo = config.plant ? alpha : 1;
    const std::size_t hi = std::min(config.max_triples, alpha * alpha * alpha);
    if (lo > hi) throw Error("max triples too small for the requested alpha");
    const auto count = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    return gen_random_tdm(alpha, count, rng.next(), config.plant);
}

namespace {

Trial run_trial(const BatchConfig& config, std::size_t index)
{
    Trial t;
    t.index = index;
    t.seed = trial_seed(config.seed, index);
    t.tdm = trial_instance(config, index);
    CheckBounds bounds{std::max<std::size_t>(3, config.alpha_max), std::max<std::size_t>(8, config.max_triples)};
    if (config.kind == ReductionKind::standard)
        t.report = check_standard(t.tdm, config.protein_mode, t.seed, config.policy, config.solve, bounds);
    else
        t.report = check_planar(t.tdm, config.planar, config.solve, bounds);
    return t;
}

}  // namespace

BatchReport run_batch(const BatchConfig& config)
{
    BatchReport out;
    out.trials.resize(config.trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            try {
                out.trials[i] = run_trial(config, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = config.trials;
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(config.trials)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& t : out.trials) {
        const auto& r = t.report;
        out.failures += !r.passed();
        out.forward_failures += !r.forward_ok;
        out.discrepancies += !r.backward_ok || !r.revenue_ok || !r.cost_ok;
        out.extraction_failures += !r.extraction_ok;
        out.audit.checked += r.audit.checked;
        out.audit.beta_bound_violations += r.audit.beta_bound_violations;
        out.audit.claim_violations += r.audit.claim_violations;
        out.audit.profitable += r.audit.profitable;
    }
    return out;
}

}  // namespace grainmix
