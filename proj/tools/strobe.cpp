// strobe - command-line front end.
//
//   strobe simulate    --config c.json [--cycles 100]
//   strobe limit-cycle --config c.json [--method spectral|iterate] [--tol 1e-12]
//   strobe sweep       --config c.json [--jobs 4]
//   strobe analytic    --config c.json [--cycles 200] [--summary]
//   strobe verify      --config c.json
//
// All subcommands take --out (default stdout) and --format csv|json.
// Exit status: 0 success, 1 configuration or usage error, 2 solver failure.

#include "strobe/analytic.hpp"
#include "strobe/config.hpp"
#include "strobe/cycles.hpp"
#include "strobe/errors.hpp"
#include "strobe/io.hpp"
#include "strobe/sweep.hpp"
#include "strobe/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace {

using namespace strobe;

constexpr int kConfigFailure = 1;
constexpr int kSolverFailure = 2;

// Raised for solver failures in single-run modes.
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::string out{"-"};
    std::string format{"csv"};
    std::size_t cycles{0};
    double tol{1e-12};
    std::string method{"spectral"};
    std::size_t jobs{1};
    bool summary{false};
};

LimitCycleOptions solver_options(const Common& c, std::size_t default_max_cycles) {
    LimitCycleOptions o;
    o.method = parse_method(c.method);
    o.tol = c.tol;
    o.max_cycles = c.cycles ? c.cycles : default_max_cycles;
    if (!(o.tol > 0.0)) throw ConfigError("--tol must be positive");
    return o;
}

Table simulate(const RunConfig& cfg, const Common& c) {
    const EngineSpec spec = cfg.model.to_spec();
    const CycleLedger ledger = run_cycles(initial_state(spec, cfg.initial), spec, c.cycles ? c.cycles : 100);
    Table t{{"n", "Q_C", "Q_H", "W", "dE", "Sigma", "S"}, {}};
    for (const CycleRow& r : ledger.rows)
        t.add_row({static_cast<std::int64_t>(r.n), r.Q_C, r.Q_H, r.W, r.dE, r.Sigma, r.S});
    return t;
}

Table limit_cycle(const RunConfig& cfg, const Common& c) {
    LimitCycleOptions o = solver_options(c, 100000);
    o.spectrum = o.method == LimitCycleMethod::Spectral;
    const SweepPoint p = solve_point(cfg.model, o, cfg.initial);
    if (p.status != "ok") throw SolverFailure(p.status + ": " + p.message);
    std::vector<std::string> outputs;
    for (const auto& name : all_outputs())
        if (name != "message") outputs.push_back(name);
    Table t{outputs, {}};
    std::vector<Cell> row;
    append_outputs(row, p, outputs);
    t.add_row(std::move(row));
    return t;
}

Table sweep(const RunConfig& cfg, const Common& c, const CLI::App& cmd) {
    if (!cfg.sweep) throw ConfigError("config has no \"sweep\" block");
    Common effective = c;
    if (cfg.sweep->method && cmd.count("--method") == 0) effective.method = to_string(*cfg.sweep->method);
    SweepPlan plan{cfg.model, cfg.sweep->axes, solver_options(effective, 100000), cfg.initial, cfg.sweep->outputs};
    const std::size_t jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
    return run_sweep(plan, jobs).to_table(plan.outputs);
}

Table analytic_run(const RunConfig& cfg, const Common& c) {
    using namespace strobe::analytic;
    const AnalyticParams params = derive_params(raw_inputs(cfg.model), cfg.analytic);
    const AffineMapPair maps = build_affine_maps(params);
    if (c.summary) {
        Table t{{"quantity", "value"}, {}};
        auto put = [&](const char* name, Cell v) { t.add_row({std::string(name), std::move(v)}); };
        put("lambda", params.lambda);
        put("p", params.p);
        put("eta", params.eta);
        put("xi", params.xi);
        put("theta", params.theta);
        put("omega_r", params.omega_r);
        put("xi_identity_defect", params.xi_identity_defect());
        put("eta_bound_holds", static_cast<std::int64_t>(params.eta_bound_holds()));
        put("relaxation_rate", relaxation_rate(maps));
        SteadyState ss;
        try {
            ss = steady_state(maps);
        } catch (const SingularityError& e) {
            throw SolverFailure(e.what());
        }
        const Thermo th = thermo_from_states(ss.x, ss.x_tilde, ss.x, params);
        put("Z1_star", ss.x.Z1);
        put("Z2_star", ss.x.Z2);
        put("S_star", ss.x.S);
        put("A_star", ss.x.A);
        put("Q_C_star", th.Q_C);
        put("Q_H_star", th.Q_H);
        put("W_star", th.W);
        put("W_closed_form", work_closed_form(params));
        put("efficiency", th.Q_H > kRegimeThreshold ? Cell{th.W / th.Q_H} : Cell{});
        return t;
    }
    const ObservableVector x0 = extract_observables(initial_state(cfg.model.to_spec(), cfg.initial));
    Table t{{"n", "Z1", "Z1t", "Z2", "Z2t", "S", "St", "A", "At"}, {}};
    const auto points = trajectory(x0, c.cycles ? c.cycles : 200, maps);
    for (std::size_t n = 0; n < points.size(); ++n) {
        const auto& [x, xt] = points[n];
        t.add_row({static_cast<std::int64_t>(n), x.Z1, xt.Z1, x.Z2, xt.Z2, x.S, xt.S, x.A, xt.A});
    }
    return t;
}

Table verify_run(const RunConfig& cfg, const Common& c) {
    VerifyOptions o;
    o.cycles = c.cycles ? c.cycles : 100;
    o.initial = cfg.initial;
    Common solver = c;
    solver.cycles = 0;
    o.solver = solver_options(solver, 100000);
    return verify(cfg.model, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stroke collisional quantum heat engines"};
    app.require_subcommand(1);
    Common c;

    auto add = [&](const char* name, const char* about) {
        CLI::App* cmd = app.add_subcommand(name, about);
        cmd->add_option("--config", c.config, "JSON configuration")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", c.out, "output path, - for stdout");
        cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        return cmd;
    };
    auto solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--tol", c.tol, "trace-distance tolerance of the iterate method");
        cmd->add_option("--method", c.method, "iterate or spectral")->check(CLI::IsMember({"iterate", "spectral"}));
    };

    CLI::App* sim = add("simulate", "per-cycle heat, work and entropy ledger");
    sim->add_option("--cycles", c.cycles, "number of cycles (default 100)");
    CLI::App* lc = add("limit-cycle", "limit-cycle report");
    lc->add_option("--cycles", c.cycles, "iterate method: maximum cycles");
    solver_flags(lc);
    CLI::App* sw = add("sweep", "limit-cycle parameter grid from the config's sweep block");
    sw->add_option("--cycles", c.cycles, "iterate method: maximum cycles");
    sw->add_option("--jobs", c.jobs, "worker threads, 0 for all cores");
    solver_flags(sw);
    CLI::App* an = add("analytic", "two-qubit difference equations");
    an->add_option("--cycles", c.cycles, "trajectory length (default 200)");
    an->add_flag("--summary", c.summary, "parameters and steady state instead of the trajectory");
    CLI::App* ve = add("verify", "invariant checks");
    ve->add_option("--cycles", c.cycles, "transient ledger length (default 100)");
    solver_flags(ve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigFailure;
    }

    try {
        const RunConfig cfg = load_config(c.config);
        Table table;
        if (sim->parsed())
            table = simulate(cfg, c);
        else if (lc->parsed())
            table = limit_cycle(cfg, c);
        else if (sw->parsed())
            table = sweep(cfg, c, *sw);
        else if (an->parsed())
            table = analytic_run(cfg, c);
        else
            table = verify_run(cfg, c);
        emit(table, parse_output_format(c.format), c.out);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const SpecError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    }
}
