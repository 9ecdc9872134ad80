#include "grainmix/demo.hpp"

namespace grainmix {

PriceSchedule demo_price_schedule()
{
    PriceSchedule s;
    s.entries.push_back({Interval::half_open(10, 11), 3});
    s.entries.push_back({Interval::half_open(11, 12), 4});
    s.entries.push_back({Interval::half_open(12, 13), 6});
    return s;
}

GmInstance demo_instance()
{
    GmInstance gm;
    gm.protein_scale = ProteinScale::percent;
    gm.bins = {
        {50, Rational(108, 10), {0}},
        {100, Rational(116, 10), {0}},
        {50, Rational(128, 10), {0}},
    };
    gm.trucks.assign(3, Truck{100});
    gm.elevators.push_back({1000, demo_price_schedule()});
    gm.mixing = MixingMatrix(gm.bins.size());
    for (BinId a = 0; a < gm.bins.size(); ++a)
        for (BinId b = a + 1; b < gm.bins.size(); ++b) gm.mixing.set(a, b, Rational(0));
    return gm;
}

SolveConfig demo_solve_config()
{
    SolveConfig c;
    c.unit = 100;
    c.lattice_denominator = 2;
    return c;
}

DemoReport run_demo(const GmInstance& instance, const SolveConfig& config)
{
    DemoReport r;
    r.unmixed_solution = unmixed_baseline(instance);
    r.unmixed = evaluate(instance, r.unmixed_solution);
    SolveResult best = solve_exact(instance, config);
    r.mixed_solution = best.solution;
    r.mixed = best.report;
    r.gain = r.mixed.profit - r.unmixed.profit;
    return r;
}

}  // namespace grainmix
