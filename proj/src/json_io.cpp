#include "grainmix/json_io.hpp"

namespace grainmix::json {

namespace {

/// Cursor into a document that remembers its JSON pointer for errors.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("at " + (path_.empty() ? std::string("/") : path_) + ": " + msg);
    }

    [[nodiscard]] Reader at(const std::string& key) const
    {
        if (!j_.is_object()) fail("expected an object");
        auto it = j_.find(key);
        if (it == j_.end()) Reader(j_, path_ + "/" + key).fail("missing field");
        return {*it, path_ + "/" + key};
    }

    [[nodiscard]] bool has(const std::string& key) const
    {
        return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
    }

    [[nodiscard]] Reader at(std::size_t i) const { return {j_.at(i), path_ + "/" + std::to_string(i)}; }

    [[nodiscard]] std::size_t size() const
    {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    template <class F>
    void each(F&& f) const
    {
        for (std::size_t i = 0, n = size(); i < n; ++i) f(at(i), i);
    }

    [[nodiscard]] std::string string() const
    {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    [[nodiscard]] Rational rational() const
    {
        try {
            return Rational::parse(string());
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    [[nodiscard]] Extended extended() const
    {
        try {
            return Extended::parse(string());
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    [[nodiscard]] std::size_t index() const
    {
        if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
            fail("expected a non-negative integer");
        return j_.get<std::size_t>();
    }

    [[nodiscard]] bool boolean() const
    {
        if (!j_.is_boolean()) fail("expected a boolean");
        return j_.get<bool>();
    }

    void check_format() const
    {
        if (!j_.is_object()) fail("expected an object");
        if (has("format") && at("format").index() != static_cast<std::size_t>(format_version))
            at("format").fail("unsupported format version");
    }

    void check_id(std::size_t expected) const
    {
        if (has("id") && at("id").index() != expected) at("id").fail("ids must be dense and in order");
    }

    [[nodiscard]] const json& raw() const { return j_; }

private:
    const json& j_;
    std::string path_;
};

json interval_to_json(const Interval& iv)
{
    return {{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Interval interval_from(const Reader& r)
{
    Interval iv;
    iv.lo = r.at("lo").rational();
    iv.hi = r.at("hi").rational();
    iv.lo_closed = r.at("lo_closed").boolean();
    iv.hi_closed = r.at("hi_closed").boolean();
    if (iv.empty()) r.fail("empty interval");
    return iv;
}

json matching_to_json(const Matching& m)
{
    json out = json::array();
    for (const auto& t : m) out.push_back({t.x, t.y, t.z});
    return out;
}

std::vector<Triple> triples_from(const Reader& r)
{
    std::vector<Triple> out;
    r.each([&](const Reader& t, std::size_t) {
        if (t.size() != 3) t.fail("a triple has three coordinates");
        out.push_back({t.at(std::size_t{0}).index(), t.at(1).index(), t.at(2).index()});
    });
    return out;
}

GmInstance instance_from(const Reader& r)
{
    r.check_format();
    GmInstance gm;
    gm.protein_scale = r.has("protein_scale") ? ([&] {
        try {
            return protein_scale_from_string(r.at("protein_scale").string());
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            r.at("protein_scale").fail(e.what());
        }
    })()
                                              : ProteinScale::fraction;

    r.at("elevators").each([&](const Reader& e, std::size_t i) {
        e.check_id(i);
        Elevator el;
        el.capacity = e.at("capacity").rational();
        e.at("schedule").each([&](const Reader& s, std::size_t) {
            el.schedule.entries.push_back({interval_from(s.at("support")), s.at("price").rational()});
        });
        gm.elevators.push_back(std::move(el));
    });
    r.at("bins").each([&](const Reader& b, std::size_t i) {
        b.check_id(i);
        Bin bin;
        bin.capacity = b.at("capacity").rational();
        bin.protein = b.at("protein").rational();
        Reader dc = b.at("delivery_cost");
        if (dc.size() != gm.elevators.size()) dc.fail("one delivery cost per elevator is required");
        dc.each([&](const Reader& c, std::size_t) { bin.delivery_cost.push_back(c.rational()); });
        gm.bins.push_back(std::move(bin));
    });
    r.at("trucks").each([&](const Reader& t, std::size_t i) {
        t.check_id(i);
        gm.trucks.push_back({t.at("capacity").rational()});
    });
    gm.mixing = MixingMatrix(gm.bins.size());
    if (r.has("mixing"))
        r.at("mixing").each([&](const Reader& m, std::size_t) {
            std::size_t a = m.at("a").index(), b = m.at("b").index();
            if (a >= gm.bins.size() || b >= gm.bins.size()) m.fail("mixing entry references an unknown bin");
            if (a == b) m.fail("mixing entry pairs a bin with itself");
            Extended cost = m.at("cost").extended();
            if (cost.is_neg_inf() || (cost.is_finite() && cost.value() < Rational(0)))
                m.at("cost").fail("mixing cost must be non-negative");
            gm.mixing.set(a, b, cost);
        });
    try {
        check_instance(gm);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    return gm;
}

Solution solution_from(const Reader& r)
{
    r.check_format();
    Solution s;
    r.at("trips").each([&](const Reader& t, std::size_t) {
        Trip trip;
        trip.truck = t.at("truck").index();
        trip.elevator = t.at("elevator").index();
        t.at("loads").each([&](const Reader& l, std::size_t) {
            trip.loads.push_back({l.at("bin").index(), l.at("quantity").rational()});
        });
        s.trips.push_back(std::move(trip));
    });
    return s;
}

TdmInstance tdm_from(const Reader& r)
{
    r.check_format();
    TdmInstance t;
    t.alpha = r.at("alpha").index();
    t.triples = triples_from(r.at("triples"));
    for (std::size_t i = 0; i < t.triples.size(); ++i) {
        const Triple& x = t.triples[i];
        if (x.x >= t.alpha || x.y >= t.alpha || x.z >= t.alpha) r.at("triples").at(i).fail("triple coordinate out of range");
    }
    try {
        check_tdm(t);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    return t;
}

}  // namespace

json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json to_json(const Rational& r)
{
    return r.str();
}

json to_json(const Extended& e)
{
    return e.str();
}

json to_json(const GmInstance& gm)
{
    json bins = json::array();
    for (std::size_t i = 0; i < gm.bins.size(); ++i) {
        const Bin& b = gm.bins[i];
        json dc = json::array();
        for (const auto& c : b.delivery_cost) dc.push_back(to_json(c));
        bins.push_back({{"id", i}, {"capacity", to_json(b.capacity)}, {"protein", to_json(b.protein)}, {"delivery_cost", dc}});
    }
    json trucks = json::array();
    for (std::size_t i = 0; i < gm.trucks.size(); ++i)
        trucks.push_back({{"id", i}, {"capacity", to_json(gm.trucks[i].capacity)}});
    json elevators = json::array();
    for (std::size_t i = 0; i < gm.elevators.size(); ++i) {
        json sched = json::array();
        for (const auto& e : gm.elevators[i].schedule.entries)
            sched.push_back({{"support", interval_to_json(e.support)}, {"price", to_json(e.price_per_unit)}});
        elevators.push_back({{"id", i}, {"capacity", to_json(gm.elevators[i].capacity)}, {"schedule", sched}});
    }
    json mixing = json::array();
    for (std::size_t a = 0; a < gm.bins.size(); ++a)
        for (std::size_t b = a + 1; b < gm.bins.size(); ++b)
            if (gm.mixing.at(a, b).is_finite()) mixing.push_back({{"a", a}, {"b", b}, {"cost", to_json(gm.mixing.at(a, b))}});
    return {{"format", format_version},
            {"protein_scale", to_string(gm.protein_scale)},
            {"bins", bins},
            {"trucks", trucks},
            {"elevators", elevators},
            {"mixing", mixing}};
}

json to_json(const Solution& s)
{
    json trips = json::array();
    for (const auto& t : s.trips) {
        json loads = json::array();
        for (const auto& l : t.loads) loads.push_back({{"bin", l.bin}, {"quantity", to_json(l.quantity)}});
        trips.push_back({{"truck", t.truck}, {"elevator", t.elevator}, {"loads", loads}});
    }
    return {{"format", format_version}, {"trips", trips}};
}

json to_json(const ProfitReport& r)
{
    json per = json::array();
    for (const auto& e : r.per_elevator)
        per.push_back({{"elevator", e.elevator},
                       {"received", to_json(e.received)},
                       {"truck_count", e.truck_count},
                       {"revenue", to_json(e.revenue)},
                       {"profit", to_json(e.profit)}});
    return {{"format", format_version},
            {"revenue", to_json(r.revenue)},
            {"mixing_cost", to_json(r.mixing_cost)},
            {"delivery_cost", to_json(r.delivery_cost)},
            {"profit", to_json(r.profit)},
            {"per_elevator", per}};
}

json to_json(const std::vector<Violation>& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back({{"kind", to_string(x.kind)},
                       {"entity", x.entity},
                       {"amount", to_json(x.amount)},
                       {"bound", to_json(x.bound)},
                       {"message", x.describe()}});
    return out;
}

json to_json(const TdmInstance& t)
{
    return {{"format", format_version}, {"alpha", t.alpha}, {"triples", matching_to_json(t.triples)}};
}

json to_json(const StdParams& p)
{
    json proteins = json::array();
    for (const auto& x : p.protein_map) proteins.push_back(to_json(x));
    return {{"beta", to_json(p.beta)},
            {"delta", to_json(p.delta)},
            {"omega_raw", to_json(p.omega_raw)},
            {"omega", to_json(p.omega)},
            {"policy", to_string(p.policy)},
            {"protein_map", proteins}};
}

json to_json(const PlanarParams& p)
{
    return {{"p", to_json(p.p)}, {"eps", to_json(p.eps)}, {"revenue", to_json(p.revenue)}, {"cost", to_json(p.cost)}};
}

json to_json(const ReductionArtifacts& a)
{
    json entries = json::array();
    for (const auto& e : a.pair_entry) entries.push_back({{"elevator", e.elevator}, {"support", interval_to_json(e.support)}});
    return {{"format", format_version},
            {"kind", to_string(a.kind)},
            {"instance", to_json(a.gm)},
            {"source", to_json(a.source)},
            {"std_params", a.std_params ? to_json(*a.std_params) : json(nullptr)},
            {"planar_params", a.planar_params ? to_json(*a.planar_params) : json(nullptr)},
            {"triple_to_truck", a.triple_to_truck},
            {"pair_entry", entries},
            {"bin_of_x", a.bin_of_x},
            {"bin_of_y", a.bin_of_y}};
}

json to_json(const OffpairAudit& a)
{
    return {{"checked", a.checked},
            {"beta_bound_violations", a.beta_bound_violations},
            {"claim_violations", a.claim_violations},
            {"profitable", a.profitable}};
}

json to_json(const CorrespondenceReport& r)
{
    json out = {{"format", format_version},
                {"kind", to_string(r.kind)},
                {"alpha", r.alpha},
                {"triple_count", r.triple_count},
                {"alpha_star", r.alpha_star},
                {"max_matching", matching_to_json(r.max_matching)},
                {"forward_profit", to_json(r.forward_profit)},
                {"profit_star", to_json(r.profit_star)},
                {"revenue_star", to_json(r.revenue_star)},
                {"cost_star", to_json(r.cost_star)},
                {"expected_profit", to_json(r.expected_profit)},
                {"forward_ok", r.forward_ok},
                {"backward_ok", r.backward_ok},
                {"revenue_ok", r.revenue_ok},
                {"cost_ok", r.cost_ok},
                {"degenerate", r.degenerate},
                {"extracted_matching", matching_to_json(r.extracted)},
                {"flagged_elevators", r.flagged},
                {"extraction_ok", r.extraction_ok},
                {"passed", r.passed()},
                {"optimum", to_json(r.optimum)},
                {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
                {"audit", to_json(r.audit)}};
    return out;
}

json to_json(const BatchReport& b)
{
    json trials = json::array();
    for (const auto& t : b.trials)
        trials.push_back({{"index", t.index}, {"seed", t.seed}, {"tdm", to_json(t.tdm)}, {"report", to_json(t.report)}});
    return {{"format", format_version},
            {"summary",
             {{"trials", b.trials.size()},
              {"failures", b.failures},
              {"forward_failures", b.forward_failures},
              {"discrepancies", b.discrepancies},
              {"extraction_failures", b.extraction_failures},
              {"audit", to_json(b.audit)}}},
            {"trials", trials}};
}

GmInstance instance_from_json(const json& j)
{
    return instance_from(Reader(j, ""));
}

Solution solution_from_json(const json& j)
{
    return solution_from(Reader(j, ""));
}

ProfitReport report_from_json(const json& j)
{
    Reader r(j, "");
    r.check_format();
    ProfitReport p;
    p.revenue = r.at("revenue").rational();
    p.mixing_cost = r.at("mixing_cost").extended();
    p.delivery_cost = r.at("delivery_cost").rational();
    p.profit = r.at("profit").extended();
    r.at("per_elevator").each([&](const Reader& e, std::size_t) {
        ElevatorReport er;
        er.elevator = e.at("elevator").index();
        er.received = e.at("received").rational();
        er.truck_count = e.at("truck_count").index();
        er.revenue = e.at("revenue").rational();
        er.profit = e.at("profit").extended();
        p.per_elevator.push_back(er);
    });
    return p;
}

TdmInstance tdm_from_json(const json& j)
{
    return tdm_from(Reader(j, ""));
}

ReductionArtifacts artifacts_from_json(const json& j)
{
    Reader r(j, "");
    r.check_format();
    ReductionArtifacts a;
    try {
        a.kind = reduction_kind_from_string(r.at("kind").string());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        r.at("kind").fail(e.what());
    }
    a.gm = instance_from(r.at("instance"));
    a.source = tdm_from(r.at("source"));
    if (r.has("std_params")) {
        Reader p = r.at("std_params");
        StdParams sp;
        sp.beta = p.at("beta").rational();
        sp.delta = p.at("delta").rational();
        sp.omega_raw = p.at("omega_raw").rational();
        sp.omega = p.at("omega").rational();
        try {
            sp.policy = omega_policy_from_string(p.at("policy").string());
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            p.at("policy").fail(e.what());
        }
        p.at("protein_map").each([&](const Reader& x, std::size_t) { sp.protein_map.push_back(x.rational()); });
        a.std_params = sp;
    }
    if (r.has("planar_params")) {
        Reader p = r.at("planar_params");
        a.planar_params = PlanarParams{p.at("p").rational(), p.at("eps").rational(), p.at("revenue").rational(),
                                       p.at("cost").rational()};
    }
    r.at("triple_to_truck").each([&](const Reader& x, std::size_t) { a.triple_to_truck.push_back(x.index()); });
    r.at("pair_entry").each([&](const Reader& e, std::size_t) {
        a.pair_entry.push_back({e.at("elevator").index(), interval_from(e.at("support"))});
    });
    r.at("bin_of_x").each([&](const Reader& x, std::size_t) { a.bin_of_x.push_back(x.index()); });
    r.at("bin_of_y").each([&](const Reader& x, std::size_t) { a.bin_of_y.push_back(x.index()); });
    try {
        check_artifacts(a);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    return a;
}

}  // namespace grainmix::json
