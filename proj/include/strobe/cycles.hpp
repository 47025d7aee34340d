// cycles.hpp - repeated heat/work cycles and the per-cycle ledger.

#pragma once

#include "strobe/strokes.hpp"

#include <optional>
#include <vector>

namespace strobe {

struct CycleRow {
    std::size_t n{0};
    double Q_C{0.0};          // boundary-site energy change, heat stroke
    double Q_H{0.0};
    double Q_C_ancilla{0.0};  // minus ancilla energy change
    double Q_H_ancilla{0.0};
    double W{0.0};            // work extracted in the work stroke
    double W_onoff_C{0.0};
    double W_onoff_H{0.0};
    double dE{0.0};           // tr{sum H_i (rho^{n+1} - rho^n)}
    double Sigma{0.0};        // entropy production, ancilla-side heats
    double S{0.0};            // S(rho^n)
};

struct CycleSnapshot {
    DensityMatrix rho;        // rho^n
    DensityMatrix rho_tilde;  // after the heat stroke of cycle n
};

struct CycleLedger {
    std::vector<CycleRow> rows;
    std::vector<CycleSnapshot> snapshots;  // empty unless requested
    std::optional<DensityMatrix> final_state;

    // max_n |dE - Q_C - Q_H + W|
    double first_law_residual() const;
    double min_entropy_production() const;
};

// Cycles n = 0 .. n_cycles-1 starting from rho0. Stroke outputs that are not
// density matrices raise ConsistencyError; the laws are left to the caller.
CycleLedger run_cycles(const DensityMatrix& rho0, const EngineChannels& channels, std::size_t n_cycles,
                       bool keep_snapshots = false);
CycleLedger run_cycles(const DensityMatrix& rho0, const EngineSpec& spec, std::size_t n_cycles,
                       bool keep_snapshots = false);

// Q / T with the infinite-temperature convention Q / inf = 0.
double heat_over_temperature(double Q, double T);

}  // namespace strobe
