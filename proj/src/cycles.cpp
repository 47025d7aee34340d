#include "strobe/cycles.hpp"

#include "strobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strobe {

double heat_over_temperature(double Q, double T) { return std::isinf(T) ? 0.0 : Q / T; }

double CycleLedger::first_law_residual() const {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.dE - r.Q_C - r.Q_H + r.W));
    return worst;
}

double CycleLedger::min_entropy_production() const {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) lowest = std::min(lowest, r.Sigma);
    return lowest;
}

CycleLedger run_cycles(const DensityMatrix& rho0, const EngineChannels& channels, std::size_t n_cycles,
                       bool keep_snapshots) {
    if (n_cycles < 1) throw ParameterError("run_cycles: need at least one cycle");
    const EngineSpec& spec = channels.spec();
    CycleLedger ledger;
    ledger.rows.reserve(n_cycles);
    DensityMatrix rho = rho0;
    double entropy = von_neumann_entropy(rho);
    for (std::size_t n = 0; n < n_cycles; ++n) {
        const StrokeOutcome heat = channels.heat_stroke(rho);
        const StrokeOutcome work = channels.work_stroke(heat.state_after);
        const double next_entropy = von_neumann_entropy(work.state_after);

        CycleRow row;
        row.n = n;
        row.Q_C = heat.Q_C;
        row.Q_H = heat.Q_H;
        row.Q_C_ancilla = heat.Q_C_ancilla;
        row.Q_H_ancilla = heat.Q_H_ancilla;
        row.W = work.W;
        row.W_onoff_C = heat.W_onoff_C;
        row.W_onoff_H = heat.W_onoff_H;
        row.dE = channels.local_hamiltonian().matrix().cwiseProduct(
                     (work.state_after.matrix() - rho.matrix()).transpose()).sum().real();
        row.S = entropy;
        row.Sigma = next_entropy - entropy - heat_over_temperature(heat.Q_C_ancilla, spec.cold.temperature) -
                    heat_over_temperature(heat.Q_H_ancilla, spec.hot.temperature);

        ledger.rows.push_back(row);
        if (keep_snapshots) ledger.snapshots.push_back({rho, heat.state_after});
        rho = work.state_after;
        entropy = next_entropy;
    }
    ledger.final_state = rho;
    return ledger;
}

CycleLedger run_cycles(const DensityMatrix& rho0, const EngineSpec& spec, std::size_t n_cycles,
                       bool keep_snapshots) {
    return run_cycles(rho0, EngineChannels(spec), n_cycles, keep_snapshots);
}

}  // namespace strobe
