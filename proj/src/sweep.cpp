#include "strobe/sweep.hpp"

#include "strobe/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace strobe {

SweepAxis SweepAxis::range(std::string name, double min, double max, std::size_t points) {
    if (!std::isfinite(min) || !std::isfinite(max)) throw ConfigError("axis " + name + ": min and max must be finite");
    if (points == 0 || (points == 1 && min != max))
        throw ConfigError("axis " + name + ": need at least two points (or min == max for one)");
    SweepAxis a{std::move(name), {}};
    a.values.resize(points);
    for (std::size_t k = 0; k < points; ++k)
        a.values[k] = points == 1 ? min : min + (max - min) * static_cast<double>(k) / (points - 1);
    if (points > 1) a.values.back() = max;
    return a;
}

const std::vector<std::string>& supported_axes() {
    static const std::vector<std::string> names{"tau_q", "tau_w", "lambda", "g", "J_z", "N", "omega_ratio"};
    return names;
}

double tau_q_for_lambda(double lambda, double g_bath) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw SpecError("lambda must lie in [0, 1]");
    if (!(g_bath > 0.0)) throw SpecError("lambda axis needs a positive bath coupling");
    return std::acos(1.0 - 2.0 * lambda) / (2.0 * g_bath);
}

ChainModel apply_axis(const ChainModel& model, const std::string& name, double value) {
    ChainModel m = model;
    if (name == "tau_q") {
        m.tau_q = value;
    } else if (name == "tau_w") {
        m.tau_w = value;
    } else if (name == "lambda") {
        if (m.cold.g != m.hot.g) throw SpecError("lambda axis needs equal cold and hot bath couplings");
        m.tau_q = tau_q_for_lambda(value, m.cold.g);
    } else if (name == "g") {
        if (m.coupling.kind != CouplingKind::PartialSwap) throw SpecError("g axis needs a partial_swap coupling");
        m.coupling.g = {value};
    } else if (name == "J_z") {
        if (m.coupling.kind == CouplingKind::PartialSwap) throw SpecError("J_z axis needs an xx, xxz or xyz coupling");
        if (m.coupling.kind == CouplingKind::XX) m.coupling.kind = CouplingKind::XXZ;
        m.coupling.Jz = value;
    } else if (name == "N") {
        if (value != std::floor(value) || value < 2.0) throw SpecError("N axis values must be integers >= 2");
        if (m.coupling.kind == CouplingKind::PartialSwap && m.coupling.g.size() != 1)
            throw SpecError("N axis needs a uniform partial_swap g");
        m.omegas = linear_frequencies(m.omegas.front(), m.omegas.back(), static_cast<std::size_t>(value));
    } else if (name == "omega_ratio") {
        if (!(value > 0.0)) throw SpecError("omega_ratio must be positive");
        const double wN = m.omegas.back();
        m.omegas = linear_frequencies(value * wN, wN, m.omegas.size());
    } else {
        throw SpecError("unknown sweep axis \"" + name + "\"");
    }
    return m;
}

PointMetrics metrics_from(const LimitCycleReport& r, const EngineSpec& spec) {
    PointMetrics m;
    m.W = r.W;
    m.Q_C = r.Q_C;
    m.Q_H = r.Q_H;
    m.Q_C_ancilla = r.Q_C_ancilla;
    m.Q_H_ancilla = r.Q_H_ancilla;
    m.P = r.power;
    m.Sigma = r.Sigma;
    m.efficiency = r.efficiency;
    m.regime = classify_regime(r);
    m.cycles = r.cycles_to_converge;
    m.residual = r.residual;
    for (double d : r.internal_drift) m.max_drift = std::max(m.max_drift, d);
    m.second_eigenvalue = r.second_eigenvalue;
    m.tau_q = spec.tau_q;
    m.tau_w = spec.tau_w;
    return m;
}

const std::vector<std::string>& default_outputs() {
    static const std::vector<std::string> names{"W", "Q_C", "Q_H", "P", "Sigma", "efficiency", "regime", "cycles"};
    return names;
}

const std::vector<std::string>& all_outputs() {
    static const std::vector<std::string> names{"W",       "Q_C",         "Q_H",         "Q_C_ancilla",
                                                "Q_H_ancilla", "P",       "Sigma",       "efficiency",
                                                "regime",  "cycles",      "residual",    "max_drift",
                                                "second_eigenvalue", "tau_q", "tau_w",   "message"};
    return names;
}

void SweepPlan::validate() const {
    if (axes.empty() || axes.size() > 2) throw ConfigError("sweep: expected one or two axes");
    const auto& names = supported_axes();
    for (const auto& a : axes) {
        if (std::find(names.begin(), names.end(), a.name) == names.end())
            throw ConfigError("sweep: unknown axis \"" + a.name + "\"");
        if (a.values.empty()) throw ConfigError("sweep: axis " + a.name + " has no values");
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name) throw ConfigError("sweep: axis " + axes[0].name + " repeated");
    auto has = [&](const char* n) { return std::any_of(axes.begin(), axes.end(), [&](const auto& a) { return a.name == n; }); };
    if (has("lambda") && has("tau_q")) throw ConfigError("sweep: lambda and tau_q both set the heat-stroke time");
    const auto& known = all_outputs();
    for (const auto& o : outputs)
        if (std::find(known.begin(), known.end(), o) == known.end())
            throw ConfigError("sweep: unknown output \"" + o + "\"");
    if (!(solver.tol > 0.0)) throw ConfigError("sweep: tol must be positive");
}

SweepPoint solve_point(const ChainModel& model, const LimitCycleOptions& solver, InitialState initial) {
    SweepPoint p;
    try {
        const EngineSpec spec = model.to_spec();
        const EngineChannels channels(spec);
        LimitCycleOptions opts = solver;
        opts.start.reset();
        if (opts.method == LimitCycleMethod::Iterate) opts.start = initial_state(spec, initial);
        p.metrics = metrics_from(find_limit_cycle(channels, opts), spec);
        p.status = "ok";
    } catch (const ConvergenceError& e) {
        p.status = "convergence_error";
        p.message = e.what();
    } catch (const DegeneracyError& e) {
        p.status = "degenerate";
        p.message = e.what();
    } catch (const SpecError& e) {
        p.status = "spec_error";
        p.message = e.what();
    } catch (const ConsistencyError& e) {
        p.status = "consistency_error";
        p.message = e.what();
    } catch (const std::exception& e) {
        p.status = "error";
        p.message = e.what();
    }
    return p;
}

SweepResult run_sweep(const SweepPlan& plan, std::size_t jobs) {
    plan.validate();
    SweepResult result;
    std::size_t total = 1;
    for (const auto& a : plan.axes) {
        result.axis_names.push_back(a.name);
        result.shape.push_back(a.values.size());
        total *= a.values.size();
    }
    result.points.resize(total);

    auto solve = [&](std::size_t index) {
        std::vector<double> coords(plan.axes.size());
        std::size_t rest = index;
        for (std::size_t k = plan.axes.size(); k-- > 0;) {
            coords[k] = plan.axes[k].values[rest % plan.axes[k].values.size()];
            rest /= plan.axes[k].values.size();
        }
        SweepPoint p;
        try {
            ChainModel m = plan.base;
            for (std::size_t k = 0; k < coords.size(); ++k) m = apply_axis(m, plan.axes[k].name, coords[k]);
            p = solve_point(m, plan.solver, plan.initial);
        } catch (const SpecError& e) {
            p.status = "spec_error";
            p.message = e.what();
        }
        p.coords = std::move(coords);
        result.points[index] = std::move(p);
    };

    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < total; ++i) solve(i);
        return result;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < total;) solve(i);
        });
    for (auto& t : workers) t.join();
    return result;
}

const SweepPoint& SweepResult::at(std::size_t i, std::size_t j) const {
    if (shape.size() == 1) return points.at(i);
    return points.at(i * shape.at(1) + j);
}

void append_outputs(std::vector<Cell>& row, const SweepPoint& point, const std::vector<std::string>& outputs) {
    const auto& m = point.metrics;
    auto num = [&](double PointMetrics::*field) { return m ? Cell{(*m).*field} : Cell{}; };
    for (const auto& o : outputs) {
        if (o == "message") {
            row.emplace_back(point.message);
        } else if (!m) {
            row.emplace_back();
        } else if (o == "W") {
            row.push_back(num(&PointMetrics::W));
        } else if (o == "Q_C") {
            row.push_back(num(&PointMetrics::Q_C));
        } else if (o == "Q_H") {
            row.push_back(num(&PointMetrics::Q_H));
        } else if (o == "Q_C_ancilla") {
            row.push_back(num(&PointMetrics::Q_C_ancilla));
        } else if (o == "Q_H_ancilla") {
            row.push_back(num(&PointMetrics::Q_H_ancilla));
        } else if (o == "P") {
            row.push_back(num(&PointMetrics::P));
        } else if (o == "Sigma") {
            row.push_back(num(&PointMetrics::Sigma));
        } else if (o == "efficiency") {
            row.push_back(cell(m->efficiency));
        } else if (o == "regime") {
            row.emplace_back(to_string(m->regime));
        } else if (o == "cycles") {
            row.emplace_back(static_cast<std::int64_t>(m->cycles));
        } else if (o == "residual") {
            row.push_back(num(&PointMetrics::residual));
        } else if (o == "max_drift") {
            row.push_back(num(&PointMetrics::max_drift));
        } else if (o == "second_eigenvalue") {
            row.push_back(cell(m->second_eigenvalue));
        } else if (o == "tau_q") {
            row.push_back(num(&PointMetrics::tau_q));
        } else if (o == "tau_w") {
            row.push_back(num(&PointMetrics::tau_w));
        } else {
            throw ConfigError("unknown output \"" + o + "\"");
        }
    }
}

Table SweepResult::to_table(const std::vector<std::string>& requested) const {
    std::vector<std::string> outputs;
    for (const auto& o : requested)
        if (std::find(axis_names.begin(), axis_names.end(), o) == axis_names.end()) outputs.push_back(o);
    Table t;
    t.columns = axis_names;
    t.columns.insert(t.columns.end(), outputs.begin(), outputs.end());
    t.columns.push_back("status");
    for (const auto& p : points) {
        std::vector<Cell> row;
        for (double c : p.coords) row.emplace_back(c);
        append_outputs(row, p, outputs);
        row.emplace_back(p.status);
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace strobe
