// sweep.hpp - limit-cycle parameter grids.
//
// Axis names: tau_q, tau_w, lambda, g, J_z, N, omega_ratio. A lambda value
// sets tau_q = arccos(1 - 2 lambda) / (2 g_bath) on the principal branch, so
// lambda and tau_q cannot both be swept. N rebuilds the chain with
// frequencies interpolated linearly between omega_1 and omega_N;
// omega_ratio sets omega_1 = r omega_N and re-interpolates. J_z turns an xx
// chain into xxz.

#pragma once

#include "strobe/chain_model.hpp"
#include "strobe/io.hpp"
#include "strobe/limit_cycle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace strobe {

struct SweepAxis {
    std::string name;
    std::vector<double> values;

    // points >= 2, or points == 1 with min == max.
    static SweepAxis range(std::string name, double min, double max, std::size_t points);
};

const std::vector<std::string>& supported_axes();

// Throws SpecError when the value cannot be applied to the model.
ChainModel apply_axis(const ChainModel& model, const std::string& name, double value);

double tau_q_for_lambda(double lambda, double g_bath);

// Per-point scalars of a limit-cycle report.
struct PointMetrics {
    double W{0.0};
    double Q_C{0.0};
    double Q_H{0.0};
    double Q_C_ancilla{0.0};
    double Q_H_ancilla{0.0};
    double P{0.0};
    double Sigma{0.0};
    std::optional<double> efficiency;
    Regime regime{Regime::Idle};
    std::size_t cycles{0};
    double residual{0.0};
    double max_drift{0.0};
    std::optional<double> second_eigenvalue;
    double tau_q{0.0};
    double tau_w{0.0};
};

PointMetrics metrics_from(const LimitCycleReport& report, const EngineSpec& spec);

// Output column names accepted by SweepResult::to_table.
const std::vector<std::string>& default_outputs();
const std::vector<std::string>& all_outputs();

struct SweepPlan {
    ChainModel base;
    std::vector<SweepAxis> axes;  // one or two
    LimitCycleOptions solver;     // `start` is ignored; see initial
    InitialState initial{InitialState::ThermalCold};
    std::vector<std::string> outputs{default_outputs()};

    // Throws ConfigError.
    void validate() const;
};

struct SweepPoint {
    std::vector<double> coords;
    std::string status;  // ok, convergence_error, degenerate, spec_error, consistency_error, error
    std::string message;
    std::optional<PointMetrics> metrics;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<std::size_t> shape;
    std::vector<SweepPoint> points;  // row-major, first axis slowest

    const SweepPoint& at(std::size_t i, std::size_t j = 0) const;
    // Axis columns, the requested outputs not already an axis, then status.
    Table to_table(const std::vector<std::string>& outputs) const;
};

// Solve every grid point with up to `jobs` worker threads. Point order and
// content do not depend on `jobs`.
SweepResult run_sweep(const SweepPlan& plan, std::size_t jobs = 1);

// Solve one model, turning solver failures into a status string.
SweepPoint solve_point(const ChainModel& model, const LimitCycleOptions& solver, InitialState initial);

// Cells for the requested outputs; empty cells when the point failed.
void append_outputs(std::vector<Cell>& row, const SweepPoint& point, const std::vector<std::string>& outputs);

}  // namespace strobe
