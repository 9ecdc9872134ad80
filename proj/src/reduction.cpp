#include "grainmix/reduction.hpp"

#include <algorithm>
#include <set>

#include "grainmix/random.hpp"

namespace grainmix {

std::string to_string(ProteinMode m)
{
    return m == ProteinMode::deterministic ? "det" : "rand";
}

std::string to_string(OmegaPolicy p)
{
    return p == OmegaPolicy::literal ? "paper" : "clamped";
}

std::string to_string(ReductionKind k)
{
    return k == ReductionKind::standard ? "standard" : "planar";
}

ProteinMode protein_mode_from_string(const std::string& s)
{
    if (s == "det" || s == "deterministic") return ProteinMode::deterministic;
    if (s == "rand" || s == "random") return ProteinMode::random;
    throw Error("unknown protein mode \"" + s + "\"");
}

OmegaPolicy omega_policy_from_string(const std::string& s)
{
    if (s == "paper") return OmegaPolicy::literal;
    if (s == "clamped") return OmegaPolicy::clamped;
    throw Error("unknown omega policy \"" + s + "\"");
}

ReductionKind reduction_kind_from_string(const std::string& s)
{
    if (s == "standard" || s == "std") return ReductionKind::standard;
    if (s == "planar") return ReductionKind::planar;
    throw Error("unknown reduction kind \"" + s + "\"");
}

namespace {

constexpr std::size_t max_protein_bins = 30;
constexpr int max_random_draws = 100000;

std::vector<Rational> random_proteins(std::size_t n, std::uint64_t seed)
{
    const std::int64_t denom = std::int64_t{1} << (n + 4);
    Rng rng(seed);
    std::vector<Rational> assigned;
    std::vector<Rational> sums;
    std::set<Rational> disallowed;

    int draws = 0;
    while (assigned.size() < n) {
        if (++draws > max_random_draws) throw Error("protein assignment gave up: too many rejected draws");
        Rational v(rng.between(1, denom - 1), denom);
        if (disallowed.contains(v)) continue;

        std::vector<Rational> fresh;
        for (const auto& a : assigned) fresh.push_back(v + a);
        assigned.push_back(v);
        disallowed.insert(v);
        for (const auto& s : sums) disallowed.insert(s - v);
        for (const auto& s : fresh)
            for (const auto& c : assigned) disallowed.insert(s - c);
        sums.insert(sums.end(), fresh.begin(), fresh.end());
    }
    return assigned;
}

}  // namespace

std::vector<Rational> assign_proteins(std::size_t n, ProteinMode mode, std::uint64_t seed)
{
    if (n == 0) throw Error("assign_proteins needs at least one bin");
    if (n > max_protein_bins) throw Error("too many bins for exact protein assignment");
    if (mode == ProteinMode::random) return random_proteins(n, seed);

    const std::int64_t denom = std::int64_t{1} << (n + 1);
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(std::int64_t{1} << i, denom);
    return out;
}

StdParams compute_params(const std::vector<Rational>& proteins, OmegaPolicy policy)
{
    const std::size_t n = proteins.size();
    if (n < 2) throw Error("at least two bins are needed to compute beta");

    StdParams out;
    out.policy = policy;
    out.protein_map = proteins;

    std::optional<Rational> beta;
    std::vector<Rational> averages;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            Rational gap = (proteins[a] - proteins[b]).abs();
            if (gap.is_zero()) throw Error("duplicate protein value " + proteins[a].str());
            if (!beta || gap < *beta) beta = gap;
            averages.push_back((proteins[a] + proteins[b]) / 2);
        }
    }
    out.beta = *beta;

    std::sort(averages.begin(), averages.end());
    if (averages.size() == 1) {
        out.delta = out.beta;
    } else {
        std::optional<Rational> delta;
        for (std::size_t i = 1; i < averages.size(); ++i) {
            Rational gap = averages[i] - averages[i - 1];
            if (gap.is_zero()) throw Error("duplicate pair average " + averages[i].str());
            if (!delta || gap < *delta) delta = gap;
        }
        out.delta = *delta;
    }

    out.omega_raw = 2 * out.delta / out.beta;
    out.omega = policy == OmegaPolicy::clamped ? max(Rational(2), out.omega_raw) : out.omega_raw;
    if (averages.size() == 1) out.omega = 2;
    return out;
}

void check_planar_params(const PlanarParams& params)
{
    if (params.eps <= Rational(0)) throw Error("planar eps must be positive");
    if (params.cost < Rational(0)) throw Error("planar cost must be non-negative");
    if (params.revenue < 2 * params.cost) throw Error("planar revenue must be at least twice the cost");
    if (params.p - params.eps < Rational(0) || params.p + params.eps > Rational(100))
        throw Error("planar bin proteins fall outside the percent scale");
}

std::optional<std::size_t> ReductionArtifacts::triple_for(BinId a, BinId b, ElevatorId elevator) const
{
    for (std::size_t i = 0; i < source.triples.size(); ++i) {
        const Triple& t = source.triples[i];
        if (t.z != elevator) continue;
        BinId bx = bin_of_x[t.x], by = bin_of_y[t.y];
        if ((a == bx && b == by) || (a == by && b == bx)) return i;
    }
    return std::nullopt;
}

void check_artifacts(const ReductionArtifacts& artifacts)
{
    check_tdm(artifacts.source);
    check_instance(artifacts.gm);
    const std::size_t nt = artifacts.source.triples.size();
    if (artifacts.triple_to_truck.size() != nt || artifacts.pair_entry.size() != nt)
        throw Error("reduction maps are not total over the source triples");
    if (artifacts.bin_of_x.size() != artifacts.source.alpha || artifacts.bin_of_y.size() != artifacts.source.alpha)
        throw Error("bin maps do not cover X and Y");
    for (auto t : artifacts.triple_to_truck)
        if (t >= artifacts.gm.trucks.size()) throw Error("triple mapped to unknown truck");
    for (const auto& e : artifacts.pair_entry)
        if (e.elevator >= artifacts.gm.elevators.size()) throw Error("pair entry on unknown elevator");
    for (auto b : artifacts.bin_of_x)
        if (b >= artifacts.gm.bins.size()) throw Error("x element mapped to unknown bin");
    for (auto b : artifacts.bin_of_y)
        if (b >= artifacts.gm.bins.size()) throw Error("y element mapped to unknown bin");
    if (artifacts.kind == ReductionKind::standard && !artifacts.std_params)
        throw Error("standard artifacts without parameters");
    if (artifacts.kind == ReductionKind::planar && !artifacts.planar_params)
        throw Error("planar artifacts without parameters");
}

namespace {

ReductionArtifacts skeleton(const TdmInstance& tdm, ReductionKind kind, ProteinScale scale)
{
    check_tdm(tdm);
    if (tdm.alpha == 0) throw Error("cannot reduce a 3-DM instance with alpha 0");

    ReductionArtifacts out;
    out.source = tdm;
    out.kind = kind;
    out.gm.protein_scale = scale;
    const std::size_t alpha = tdm.alpha;
    for (std::size_t i = 0; i < alpha; ++i) {
        out.bin_of_x.push_back(i);
        out.bin_of_y.push_back(alpha + i);
    }
    out.gm.bins.resize(2 * alpha);
    for (auto& b : out.gm.bins) b.capacity = Rational(1, 2);
    out.gm.elevators.resize(alpha);
    for (auto& e : out.gm.elevators) e.capacity = 1;
    out.gm.trucks.assign(tdm.triples.size(), Truck{1});
    out.gm.mixing = MixingMatrix(2 * alpha);
    for (std::size_t i = 0; i < tdm.triples.size(); ++i) out.triple_to_truck.push_back(i);
    return out;
}

}  // namespace

ReductionArtifacts reduce_standard(const TdmInstance& tdm, ProteinMode mode, std::uint64_t seed, OmegaPolicy policy)
{
    ReductionArtifacts out = skeleton(tdm, ReductionKind::standard, ProteinScale::fraction);
    GmInstance& gm = out.gm;

    std::vector<Rational> proteins = assign_proteins(gm.bins.size(), mode, seed);
    StdParams params = compute_params(proteins, policy);
    for (std::size_t i = 0; i < gm.bins.size(); ++i) {
        gm.bins[i].protein = proteins[i];
        gm.bins[i].delivery_cost.assign(gm.elevators.size(), params.omega);
    }

    for (const Triple& t : tdm.triples) {
        BinId bx = out.bin_of_x[t.x], by = out.bin_of_y[t.y];
        gm.mixing.set(bx, by, Rational(0));
        Rational avg = (proteins[bx] + proteins[by]) / 2;
        gm.elevators[t.z].schedule.entries.push_back({Interval::point(avg), 1 + params.omega});
        out.pair_entry.push_back({t.z, Interval::point(avg)});
    }
    out.std_params = std::move(params);
    return out;
}

ReductionArtifacts reduce_planar(const TdmInstance& tdm, const PlanarParams& params)
{
    check_planar_params(params);
    ReductionArtifacts out = skeleton(tdm, ReductionKind::planar, ProteinScale::percent);
    GmInstance& gm = out.gm;
    const std::size_t alpha = tdm.alpha;

    for (std::size_t i = 0; i < alpha; ++i) {
        gm.bins[out.bin_of_x[i]].protein = params.p - params.eps;
        gm.bins[out.bin_of_y[i]].protein = params.p + params.eps;
    }
    for (auto& b : gm.bins) b.delivery_cost.assign(alpha, params.cost);

    const Interval window = Interval::half_open(params.p, params.p + 2 * params.eps);
    for (const Triple& t : tdm.triples) {
        gm.mixing.set(out.bin_of_x[t.x], out.bin_of_y[t.y], params.cost);
        // Repeated triples on one elevator set the same price; they do not stack.
        auto& entries = gm.elevators[t.z].schedule.entries;
        if (entries.empty()) entries.push_back({window, params.revenue});
        out.pair_entry.push_back({t.z, window});
    }
    out.planar_params = params;
    return out;
}

Solution forward_solution(const ReductionArtifacts& artifacts, const Matching& matching)
{
    Solution s;
    for (const Triple& t : matching) {
        auto it = std::find(artifacts.source.triples.begin(), artifacts.source.triples.end(), t);
        if (it == artifacts.source.triples.end()) throw Error("matching triple is not in the source instance");
        auto idx = static_cast<std::size_t>(it - artifacts.source.triples.begin());
        Trip trip;
        trip.truck = artifacts.triple_to_truck[idx];
        trip.elevator = artifacts.pair_entry[idx].elevator;
        trip.loads = {{artifacts.bin_of_x[t.x], Rational(1, 2)}, {artifacts.bin_of_y[t.y], Rational(1, 2)}};
        s.trips.push_back(std::move(trip));
    }
    return s;
}

}  // namespace grainmix
