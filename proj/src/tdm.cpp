#include "grainmix/tdm.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "grainmix/random.hpp"

namespace grainmix {

void check_tdm(const TdmInstance& instance)
{
    if (instance.alpha == 0 && !instance.triples.empty()) throw Error("3-DM instance with alpha 0 has triples");
    std::set<Triple> seen;
    for (const auto& t : instance.triples) {
        if (t.x >= instance.alpha || t.y >= instance.alpha || t.z >= instance.alpha)
            throw Error("triple coordinate out of range");
        if (!seen.insert(t).second) throw Error("repeated triple");
    }
}

bool is_matching(const TdmInstance& instance, std::span<const Triple> subset)
{
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const Triple& a = subset[i];
        if (std::find(instance.triples.begin(), instance.triples.end(), a) == instance.triples.end()) return false;
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            const Triple& b = subset[j];
            if (a.x == b.x || a.y == b.y || a.z == b.z) return false;
        }
    }
    return true;
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

/// Branch-and-bound over X elements for the largest matching inside a
/// candidate set. Search state lives only for one call.
class SizeSearch {
public:
    SizeSearch(std::span<const Triple> cands, std::size_t alpha) : by_x_(alpha)
    {
        for (const auto& t : cands) by_x_[t.x].push_back(t);
    }

    /// Largest matching size, stopping early once `target` is reached.
    std::size_t run(Mask used_y, Mask used_z, std::size_t target)
    {
        target_ = target;
        best_ = 0;
        Mask open_x = 0;
        for (std::size_t x = 0; x < by_x_.size(); ++x)
            if (!by_x_[x].empty()) open_x |= bit(x);
        dfs(open_x, used_y, used_z, 0);
        return best_;
    }

private:
    void dfs(Mask open_x, Mask used_y, Mask used_z, std::size_t size)
    {
        if (best_ >= target_) return;
        best_ = std::max(best_, size);

        std::size_t live = 0;
        std::size_t pick = by_x_.size();
        std::size_t pick_options = SIZE_MAX;
        for (Mask m = open_x; m != 0; m &= m - 1) {
            auto x = static_cast<std::size_t>(std::countr_zero(m));
            std::size_t options = 0;
            for (const auto& t : by_x_[x])
                if (!(used_y & bit(t.y)) && !(used_z & bit(t.z))) ++options;
            if (options == 0) continue;
            ++live;
            if (options < pick_options) {
                pick_options = options;
                pick = x;
            }
        }
        if (live == 0 || size + live <= best_) return;

        Mask rest = open_x & ~bit(pick);
        for (const auto& t : by_x_[pick]) {
            if ((used_y & bit(t.y)) || (used_z & bit(t.z))) continue;
            dfs(rest, used_y | bit(t.y), used_z | bit(t.z), size + 1);
        }
        dfs(rest, used_y, used_z, size);
    }

    std::vector<std::vector<Triple>> by_x_;
    std::size_t best_ = 0;
    std::size_t target_ = 0;
};

std::size_t largest(std::span<const Triple> cands, std::size_t alpha, Mask used_y, Mask used_z,
                    std::size_t target = SIZE_MAX)
{
    return SizeSearch(cands, alpha).run(used_y, used_z, target);
}

}  // namespace

Matching max_matching(const TdmInstance& instance, MatchingBounds bounds)
{
    if (instance.alpha > bounds.max_alpha || instance.triples.size() > bounds.max_triples || instance.alpha > 64)
        throw Error("search bound exceeded");
    check_tdm(instance);

    std::vector<Triple> sorted = instance.triples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = largest(sorted, instance.alpha, 0, 0);

    Matching chosen;
    Mask ux = 0, uy = 0, uz = 0;
    for (std::size_t i = 0; i < sorted.size() && chosen.size() < k; ++i) {
        const Triple& t = sorted[i];
        if ((ux & bit(t.x)) || (uy & bit(t.y)) || (uz & bit(t.z))) continue;
        const Mask nx = ux | bit(t.x), ny = uy | bit(t.y), nz = uz | bit(t.z);
        const std::size_t need = k - chosen.size() - 1;
        std::vector<Triple> later;
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const Triple& u = sorted[j];
            if (!(nx & bit(u.x)) && !(ny & bit(u.y)) && !(nz & bit(u.z))) later.push_back(u);
        }
        if (need == 0 || largest(later, instance.alpha, ny, nz, need) >= need) {
            chosen.push_back(t);
            ux = nx;
            uy = ny;
            uz = nz;
        }
    }
    return chosen;
}

TdmInstance gen_random_tdm(std::size_t alpha, std::size_t triple_count, std::uint64_t seed, bool plant_perfect)
{
    if (alpha == 0 || alpha > 64) throw Error("alpha must be in [1, 64]");
    const std::size_t universe = alpha * alpha * alpha;
    if (triple_count > universe) throw Error("more triples requested than alpha^3");
    if (plant_perfect && triple_count < alpha) throw Error("a planted perfect matching needs at least alpha triples");

    Rng rng(seed);
    TdmInstance out;
    out.alpha = alpha;
    std::set<Triple> chosen;
    if (plant_perfect) {
        std::vector<std::size_t> py(alpha), pz(alpha);
        std::iota(py.begin(), py.end(), 0);
        std::iota(pz.begin(), pz.end(), 0);
        rng.shuffle(py.begin(), py.end());
        rng.shuffle(pz.begin(), pz.end());
        for (std::size_t i = 0; i < alpha; ++i) chosen.insert({i, py[i], pz[i]});
    }

    std::vector<Triple> pool;
    pool.reserve(universe);
    for (std::size_t x = 0; x < alpha; ++x)
        for (std::size_t y = 0; y < alpha; ++y)
            for (std::size_t z = 0; z < alpha; ++z)
                if (!chosen.contains({x, y, z})) pool.push_back({x, y, z});
    rng.shuffle(pool.begin(), pool.end());
    for (std::size_t i = 0; chosen.size() < triple_count; ++i) chosen.insert(pool[i]);

    out.triples.assign(chosen.begin(), chosen.end());
    return out;
}

}  // namespace grainmix
