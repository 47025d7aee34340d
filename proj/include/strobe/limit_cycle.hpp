// limit_cycle.hpp - fixed point of the cycle map and its thermodynamics.

#pragma once

#include "strobe/strokes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace strobe {

enum class LimitCycleMethod { Iterate, Spectral };

std::string to_string(LimitCycleMethod method);

// Threshold below which heats and work count as zero.
inline constexpr double kRegimeThreshold = 1e-12;

struct LimitCycleOptions {
    LimitCycleMethod method{LimitCycleMethod::Iterate};
    double tol{1e-12};
    std::size_t max_cycles{100000};
    // Iterate start; defaults to the product of site thermal states at T_C.
    std::optional<DensityMatrix> start;
    // Spectral only: also diagonalize the cycle map to report the
    // second-largest eigenvalue magnitude.
    bool spectrum{false};
};

struct LimitCycleReport {
    DensityMatrix rho_star;
    DensityMatrix rho_tilde_star;
    double Q_C{0.0};          // boundary-site energy changes
    double Q_H{0.0};
    double Q_C_ancilla{0.0};
    double Q_H_ancilla{0.0};
    double W{0.0};
    double Sigma{0.0};        // -Q_C_ancilla/T_C - Q_H_ancilla/T_H
    std::optional<double> efficiency;  // W / Q_H when Q_H > threshold
    double power{0.0};        // W / (tau_q + tau_w); NaN if both vanish
    std::vector<double> internal_drift;
    std::size_t cycles_to_converge{0};
    double residual{0.0};     // trace distance between cycle(rho*) and rho*
    std::optional<double> second_eigenvalue;
};

// Throws ConvergenceError (iterate) or DegeneracyError (spectral).
LimitCycleReport find_limit_cycle(const EngineChannels& channels, const LimitCycleOptions& options = {});
LimitCycleReport find_limit_cycle(const EngineSpec& spec, const LimitCycleOptions& options = {});

// Fill the thermodynamic fields from rho* and rho~*.
LimitCycleReport limit_cycle_thermo(const DensityMatrix& rho_star, const DensityMatrix& rho_tilde_star,
                                    const EngineChannels& channels);

enum class Regime { Engine, Refrigerator, Accelerator, Heater, Idle };

std::string to_string(Regime regime);
Regime classify_regime(const LimitCycleReport& report, double threshold = kRegimeThreshold);

struct OttoDiagnostics {
    bool applicable{false};
    std::string reason;
    double otto_efficiency{0.0};  // 1 - omega_1 / omega_N
    double heat_ratio_defect{0.0};  // |Q_C + (omega_1/omega_N) Q_H|
    bool heat_ratio_ok{false};
    bool sign_law_ok{false};        // sign(Q_H) = sign(omega_1/T_C - omega_N/T_H)
    std::optional<double> efficiency_defect;
    bool efficiency_ok{false};

    bool passed() const { return applicable && heat_ratio_ok && sign_law_ok && efficiency_ok; }
};

OttoDiagnostics otto_check(const EngineSpec& spec, const LimitCycleReport& report);

}  // namespace strobe
