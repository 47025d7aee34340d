#include "strobe/verify.hpp"

#include "strobe/cycles.hpp"
#include "strobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace strobe {

namespace {

class Report {
public:
    Report() { table_.columns = {"check", "status", "value", "tolerance", "detail"}; }

    // |value| <= tol passes.
    void bound(const std::string& check, double value, double tol, const std::string& detail = "") {
        add(check, std::abs(value) <= tol ? "pass" : "fail", value, tol, detail);
    }
    void floor(const std::string& check, double value, double tol, const std::string& detail = "") {
        add(check, value >= -tol ? "pass" : "fail", value, tol, detail);
    }
    void flag(const std::string& check, bool ok, const std::string& detail = "") {
        table_.add_row({check, ok ? "pass" : "fail", Cell{}, Cell{}, detail});
    }
    void not_applicable(const std::string& check, const std::string& detail) {
        table_.add_row({check, "n/a", Cell{}, Cell{}, detail});
    }
    Table take() { return std::move(table_); }

private:
    void add(const std::string& check, const char* status, double value, double tol, const std::string& detail) {
        table_.add_row({check, std::string(status), value, tol, detail});
    }
    Table table_;
};

}  // namespace

Table verify(const ChainModel& model, const VerifyOptions& options) {
    Report out;
    const EngineSpec spec = model.to_spec();
    const EngineChannels channels(spec);

    const ConservationNorms norms = check_strict_energy_conservation(spec);
    out.bound("commutator_norm", std::max(norms.norm_C, norms.norm_H), kStructuralTol,
              "max |[V_x, H_site + H_x]|");

    const CycleLedger ledger = run_cycles(initial_state(spec, options.initial), channels, options.cycles);
    double onoff = 0.0, onoff_dv = 0.0, min_sigma = 0.0;
    for (std::size_t k = 0; k < ledger.rows.size(); ++k) {
        const CycleRow& r = ledger.rows[k];
        onoff = std::max({onoff, std::abs(r.W_onoff_C), std::abs(r.W_onoff_H)});
        min_sigma = k == 0 ? r.Sigma : std::min(min_sigma, r.Sigma);
    }
    // W_onoff = -dV per heat stroke, from the pair states directly.
    {
        DensityMatrix rho = initial_state(spec, options.initial);
        for (std::size_t k = 0; k < std::min<std::size_t>(options.cycles, 20); ++k) {
            const StrokeOutcome h = channels.heat_stroke(rho);
            onoff_dv = std::max({onoff_dv, std::abs(h.W_onoff_C + h.dV_C), std::abs(h.W_onoff_H + h.dV_H)});
            rho = channels.work_stroke(h.state_after).state_after;
        }
    }
    out.bound("strict_energy_conservation", onoff, kDynamicalTol, "max |W_onoff| over the transient");
    out.bound("onoff_work_equals_minus_dV", onoff_dv, kDynamicalTol);
    out.bound("first_law", ledger.first_law_residual(), kDynamicalTol, "max |dE - Q_C - Q_H + W|");
    out.floor("second_law", min_sigma, 1e-12, "min Sigma over the transient");

    std::optional<LimitCycleReport> found;
    try {
        found = find_limit_cycle(channels, options.solver);
    } catch (const std::exception& e) {
        out.flag("limit_cycle", false, e.what());
        return out.take();
    }
    const LimitCycleReport& report = *found;
    out.flag("limit_cycle", true, to_string(options.solver.method));
    out.bound("fixed_point_residual", report.residual, 1e-9);
    out.floor("limit_cycle_second_law", report.Sigma, 1e-12, "Sigma*");

    const Matrix delta = report.rho_tilde_star.matrix() - report.rho_star.matrix();
    double internal = 0.0, drift = 0.0;
    for (std::size_t i = 1; i + 1 < spec.size(); ++i)
        internal += channels.site_hamiltonian(i).cwiseProduct(delta.transpose()).sum().real();
    for (double d : report.internal_drift) drift = std::max(drift, d);
    out.bound("limit_cycle_energy_balance", report.W - report.Q_C - report.Q_H - internal, kDynamicalTol,
              "W* - Q_C* - Q_H* - internal energy change");
    const double w_stroke = channels.work_stroke(report.rho_tilde_star).W;
    out.bound("work_two_route", report.W - w_stroke, kDynamicalTol, "heat-stroke vs work-stroke W*");
    if (spec.size() > 2)
        out.bound("internal_drift", drift, 1e-9, "max internal-site energy change per stroke");
    else
        out.not_applicable("internal_drift", "no internal sites");

    const OttoDiagnostics otto = otto_check(spec, report);
    if (!otto.applicable) {
        out.not_applicable("otto_heat_ratio", otto.reason);
        out.not_applicable("otto_sign_law", otto.reason);
        out.not_applicable("otto_efficiency", otto.reason);
    } else {
        out.bound("otto_heat_ratio", otto.heat_ratio_defect, 1e-9, "|Q_C* + (omega_1/omega_N) Q_H*|");
        out.flag("otto_sign_law", otto.sign_law_ok, "sign(Q_H*) vs omega_1/T_C - omega_N/T_H");
        if (otto.efficiency_defect)
            out.bound("otto_efficiency", *otto.efficiency_defect, 1e-8, "|W*/Q_H* - (1 - omega_1/omega_N)|");
        else
            out.not_applicable("otto_efficiency", "Q_H* below threshold");
    }
    return out.take();
}

bool verify_passed(const Table& report) {
    return std::none_of(report.rows.begin(), report.rows.end(), [](const auto& row) {
        return std::get<std::string>(row[1]) == "fail";
    });
}

}  // namespace strobe
