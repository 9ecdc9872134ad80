// grainmix: command-line front end for instance generation, reductions,
// solving, evaluation and batch verification.
//
// Exit codes: 0 success, 1 a failed check or runtime error, 2 bad usage or
// unreadable input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grainmix/demo.hpp"
#include "grainmix/json_io.hpp"
#include "grainmix/reduction.hpp"
#include "grainmix/solve.hpp"
#include "grainmix/tdm.hpp"
#include "grainmix/verify.hpp"
#include "manifest.hpp"

namespace {

using namespace grainmix;
using Json = nlohmann::json;

constexpr const char* schema_help = R"(JSON documents (all carry "format": 1; rationals are "num/den" strings, +inf is "inf"):
  3-DM instance   {alpha, triples: [[x,y,z], ...]}
  GM instance     {protein_scale: fraction|percent,
                   bins: [{id, capacity, protein, delivery_cost: [per elevator]}],
                   trucks: [{id, capacity}],
                   elevators: [{id, capacity, schedule: [{support: {lo, hi, lo_closed, hi_closed}, price}]}],
                   mixing: [{a, b, cost}]            (pairs not listed cost "inf")}
  solution        {trips: [{truck, elevator, loads: [{bin, quantity}]}]}
  profit report   {revenue, mixing_cost, delivery_cost, profit, per_elevator: [...]}
  artifacts       {kind, instance, source, std_params|planar_params, triple_to_truck, pair_entry, bin_of_x, bin_of_y}
Environment: GRAINMIX_SEED is used when --seed is not given.)";

struct Context {
    cli::RunManifest manifest;
    std::string manifest_path;
};

std::string read_file(Context& ctx, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw json::ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    ctx.manifest.inputs.push_back({path, cli::sha256_hex(text)});
    return text;
}

void write_output(Context& ctx, const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path);
        out << text;
    }
    ctx.manifest.outputs.push_back({path.empty() ? "-" : path, cli::sha256_hex(text)});
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv("GRAINMIX_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw json::ParseError("GRAINMIX_SEED is not an unsigned integer");
        }
    }
    return 0;
}

/// Instance document or reduction artifacts; artifacts are unwrapped.
GmInstance load_instance(Context& ctx, const std::string& path)
{
    Json j = json::parse_text(read_file(ctx, path));
    if (j.is_object() && j.contains("kind") && j.contains("instance")) return json::artifacts_from_json(j).gm;
    return json::instance_from_json(j);
}

struct PlanarOpts {
    std::string p = "12", eps = "1/2", revenue = "10", cost = "1";

    void add(CLI::App* app)
    {
        app->add_option("--p", p, "planar base protein (percent)")->capture_default_str();
        app->add_option("--eps", eps, "planar protein offset")->capture_default_str();
        app->add_option("--revenue", revenue, "planar price per unit in the window")->capture_default_str();
        app->add_option("--cost", cost, "planar mixing and delivery cost")->capture_default_str();
    }

    [[nodiscard]] PlanarParams params() const
    {
        auto rat = [](const std::string& s, const char* name) {
            try {
                return Rational::parse(s);
            } catch (const Error& e) {
                throw json::ParseError(std::string("--") + name + ": " + e.what());
            }
        };
        return {rat(p, "p"), rat(eps, "eps"), rat(revenue, "revenue"), rat(cost, "cost")};
    }
};

struct SolveOpts {
    std::int64_t lattice = 12;
    std::string unit = "1";
    std::optional<std::size_t> max_trips;
    std::optional<std::int64_t> time_budget_ms;

    void add(CLI::App* app)
    {
        app->add_option("--lattice", lattice, "quantities are multiples of unit/lattice")->capture_default_str();
        app->add_option("--unit", unit, "lattice unit as a rational")->capture_default_str();
        app->add_option("--max-trips", max_trips, "cap on the number of trips");
        app->add_option("--time-budget-ms", time_budget_ms, "abort the exact search after this long");
    }

    [[nodiscard]] SolveConfig config() const
    {
        SolveConfig c;
        c.lattice_denominator = lattice;
        try {
            c.unit = Rational::parse(unit);
        } catch (const Error& e) {
            throw json::ParseError(std::string("--unit: ") + e.what());
        }
        c.max_trips = max_trips;
        if (time_budget_ms) c.time_budget = std::chrono::milliseconds(*time_budget_ms);
        (void)c.step();
        return c;
    }

    [[nodiscard]] Json snapshot() const
    {
        return {{"lattice", lattice},
                {"unit", unit},
                {"max_trips", max_trips ? Json(*max_trips) : Json(nullptr)},
                {"time_budget_ms", time_budget_ms ? Json(*time_budget_ms) : Json(nullptr)}};
    }
};

int cmd_demo(Context& ctx, bool as_json, const std::string& instance_path)
{
    GmInstance gm = instance_path.empty() ? demo_instance() : load_instance(ctx, instance_path);
    DemoReport r = run_demo(gm, demo_solve_config());
    std::ostringstream os;
    if (as_json) {
        os << dump({{"format", json::format_version},
                    {"unmixed", {{"solution", json::to_json(r.unmixed_solution)}, {"report", json::to_json(r.unmixed)}}},
                    {"mixed", {{"solution", json::to_json(r.mixed_solution)}, {"report", json::to_json(r.mixed)}}},
                    {"gain", json::to_json(r.gain)}});
    } else {
        os << "unmixed=" << r.unmixed.profit << " mixed=" << r.mixed.profit << " gain=" << r.gain << "\n";
    }
    write_output(ctx, "", os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Grain mixing instances, 3-DM reductions and exact verification"};
    app.footer(schema_help);
    app.require_subcommand(1);

    Context ctx;
    app.add_option("--manifest", ctx.manifest_path, "write a run manifest (inputs, outputs, checksums) here");

    std::optional<std::uint64_t> seed_flag;
    std::string out_path;

    auto* demo = app.add_subcommand("demo", "three-bin blending example: unmixed vs mixed revenue");
    bool demo_json = false;
    std::string demo_instance_path;
    demo->add_flag("--json", demo_json, "machine-readable profit reports");
    demo->add_option("--instance", demo_instance_path, "use this instance instead of the bundled one");

    auto* gen = app.add_subcommand("gen-3dm", "generate a random 3-DM instance");
    std::size_t gen_alpha = 2, gen_triples = 4;
    bool gen_plant = true;
    gen->add_option("--alpha", gen_alpha)->capture_default_str();
    gen->add_option("--triples", gen_triples)->capture_default_str();
    gen->add_option("--seed", seed_flag);
    gen->add_flag("--plant,!--no-plant", gen_plant, "plant a perfect matching")->capture_default_str();
    gen->add_option("-o,--out", out_path);

    auto* reduce = app.add_subcommand("reduce", "build a GM instance from a 3-DM instance");
    std::string reduce_in, reduce_mode = "std", omega_policy = "clamped", protein_mode = "det";
    PlanarOpts planar_opts;
    reduce->add_option("-i,--in", reduce_in, "3-DM instance JSON")->required();
    reduce->add_option("--mode", reduce_mode, "std|planar")->capture_default_str();
    reduce->add_option("--omega-policy", omega_policy, "paper|clamped")->capture_default_str();
    reduce->add_option("--protein-mode", protein_mode, "det|rand")->capture_default_str();
    reduce->add_option("--seed", seed_flag);
    planar_opts.add(reduce);
    reduce->add_option("-o,--out", out_path);

    auto* solve = app.add_subcommand("solve", "solve a GM instance (or reduction artifacts)");
    std::string solve_in, solver = "exact";
    std::size_t iterations = 2000;
    SolveOpts solve_opts;
    solve->add_option("-i,--in", solve_in)->required();
    solve->add_option("--solver", solver, "exact|ls")->capture_default_str();
    solve->add_option("--iterations", iterations, "local search iterations")->capture_default_str();
    solve->add_option("--seed", seed_flag);
    solve_opts.add(solve);
    solve->add_option("-o,--out", out_path);

    auto* eval = app.add_subcommand("eval", "validate and evaluate a solution");
    std::string eval_instance, eval_solution;
    eval->add_option("--instance", eval_instance)->required();
    eval->add_option("--solution", eval_solution)->required();
    eval->add_option("-o,--out", out_path);

    auto* verify = app.add_subcommand("verify", "check matching size against GM optimum on reduced instances");
    BatchConfig batch;
    std::string verify_mode = "std", verify_in;
    std::size_t trials = 20;
    std::optional<std::size_t> alpha_max;
    bool plant = true;
    SolveOpts verify_solve;
    PlanarOpts verify_planar;
    verify->add_option("--mode", verify_mode, "std|planar")->capture_default_str();
    verify->add_option("-i,--in", verify_in, "check this 3-DM instance instead of a random batch");
    verify->add_option("--trials", trials)->capture_default_str();
    verify->add_option("--seed", seed_flag);
    verify->add_option("--alpha-min", batch.alpha_min)->capture_default_str();
    verify->add_option("--alpha-max", alpha_max, "default 3 (std) or 2 (planar)");
    verify->add_option("--max-triples", batch.max_triples)->capture_default_str();
    verify->add_flag("--plant,!--no-plant", plant, "plant a perfect matching in each instance")->capture_default_str();
    verify->add_option("--omega-policy", omega_policy, "paper|clamped")->capture_default_str();
    verify->add_option("--protein-mode", protein_mode, "det|rand")->capture_default_str();
    verify->add_option("--jobs", batch.jobs, "parallel trials")->capture_default_str();
    verify_solve.add(verify);
    verify_planar.add(verify);
    verify->add_option("-o,--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (int i = 1; i < argc; ++i) ctx.manifest.args.emplace_back(argv[i]);
    int rc = 0;
    try {
        const std::uint64_t seed = resolve_seed(seed_flag);
        ctx.manifest.seed = seed;

        if (*demo) {
            ctx.manifest.command = "demo";
            ctx.manifest.config = {{"json", demo_json}};
            rc = cmd_demo(ctx, demo_json, demo_instance_path);
        } else if (*gen) {
            ctx.manifest.command = "gen-3dm";
            ctx.manifest.config = {{"alpha", gen_alpha}, {"triples", gen_triples}, {"plant", gen_plant}};
            write_output(ctx, out_path, dump(json::to_json(gen_random_tdm(gen_alpha, gen_triples, seed, gen_plant))));
        } else if (*reduce) {
            ctx.manifest.command = "reduce";
            TdmInstance tdm = json::tdm_from_json(json::parse_text(read_file(ctx, reduce_in)));
            ReductionKind kind;
            ProteinMode pm;
            OmegaPolicy op;
            try {
                kind = reduction_kind_from_string(reduce_mode);
                pm = protein_mode_from_string(protein_mode);
                op = omega_policy_from_string(omega_policy);
            } catch (const Error& e) {
                throw json::ParseError(e.what());
            }
            const PlanarParams pp = planar_opts.params();
            ctx.manifest.config = {{"mode", to_string(kind)},
                                   {"omega_policy", to_string(op)},
                                   {"protein_mode", to_string(pm)},
                                   {"planar", json::to_json(pp)}};
            ReductionArtifacts art = kind == ReductionKind::standard ? reduce_standard(tdm, pm, seed, op) : reduce_planar(tdm, pp);
            write_output(ctx, out_path, dump(json::to_json(art)));
        } else if (*solve) {
            ctx.manifest.command = "solve";
            GmInstance gm = load_instance(ctx, solve_in);
            SolveConfig config = solve_opts.config();
            ctx.manifest.config = solve_opts.snapshot();
            ctx.manifest.config["solver"] = solver;
            ctx.manifest.config["iterations"] = iterations;
            SolveResult r;
            if (solver == "exact")
                r = solve_exact(gm, config);
            else if (solver == "ls")
                r = solve_local_search(gm, config, seed, iterations);
            else
                throw json::ParseError("unknown solver \"" + solver + "\"");
            write_output(ctx, out_path,
                         dump({{"format", json::format_version},
                               {"solver", solver},
                               {"solution", json::to_json(r.solution)},
                               {"report", json::to_json(r.report)}}));
        } else if (*eval) {
            ctx.manifest.command = "eval";
            GmInstance gm = load_instance(ctx, eval_instance);
            Solution s = json::solution_from_json(json::parse_text(read_file(ctx, eval_solution)));
            auto violations = validate(gm, s);
            Json out = {{"format", json::format_version}, {"violations", json::to_json(violations)}};
            out["report"] = violations.empty() ? json::to_json(evaluate(gm, s)) : Json(nullptr);
            write_output(ctx, out_path, dump(out));
            rc = violations.empty() ? 0 : 1;
        } else if (*verify) {
            ctx.manifest.command = "verify";
            try {
                batch.kind = reduction_kind_from_string(verify_mode);
                batch.protein_mode = protein_mode_from_string(protein_mode);
                batch.policy = omega_policy_from_string(omega_policy);
            } catch (const Error& e) {
                throw json::ParseError(e.what());
            }
            batch.trials = trials;
            batch.seed = seed;
            batch.plant = plant;
            batch.alpha_max = alpha_max.value_or(batch.kind == ReductionKind::standard ? 3 : 2);
            batch.planar = verify_planar.params();
            batch.solve = verify_solve.config();
            ctx.manifest.config = {{"mode", to_string(batch.kind)},
                                   {"trials", batch.trials},
                                   {"alpha_min", batch.alpha_min},
                                   {"alpha_max", batch.alpha_max},
                                   {"max_triples", batch.max_triples},
                                   {"plant", batch.plant},
                                   {"omega_policy", to_string(batch.policy)},
                                   {"protein_mode", to_string(batch.protein_mode)},
                                   {"planar", json::to_json(batch.planar)},
                                   {"solve", verify_solve.snapshot()}};
            if (!verify_in.empty()) {
                TdmInstance tdm = json::tdm_from_json(json::parse_text(read_file(ctx, verify_in)));
                CheckBounds bounds{std::max<std::size_t>(3, batch.alpha_max), std::max<std::size_t>(8, batch.max_triples)};
                CorrespondenceReport r = batch.kind == ReductionKind::standard
                                             ? check_standard(tdm, batch.protein_mode, seed, batch.policy, batch.solve, bounds)
                                             : check_planar(tdm, batch.planar, batch.solve, bounds);
                write_output(ctx, out_path, dump(json::to_json(r)));
                rc = r.passed() ? 0 : 1;
            } else {
                BatchReport r = run_batch(batch);
                write_output(ctx, out_path, dump(json::to_json(r)));
                std::cerr << "verify: " << r.trials.size() << " trials, " << r.failures << " failed, "
                          << r.discrepancies << " discrepancies, " << r.extraction_failures
                          << " extraction failures (audit)\n";
                rc = r.failures == 0 ? 0 : 1;
            }
        }

        if (!ctx.manifest_path.empty()) {
            std::ofstream m(ctx.manifest_path, std::ios::binary);
            if (!m) throw Error("cannot write " + ctx.manifest_path);
            m << ctx.manifest.to_json().dump(2) << "\n";
        }
    } catch (const json::ParseError& e) {
        std::cerr << "grainmix: parse error " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "grainmix: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
