// analytic.hpp - exact difference equations of the two-qubit partial-swap engine.
//
// State vector x = (Z1, Z2, S, A) with Z_i = <sigma_z^i>,
// S = <s+ s- + s- s+> and A = i<s+ s- - s- s+> (site 1 first).
// The heat stroke rotates (S, A) by the angle (omega1 - omega2) tau_q; the
// magnitudes of its cosine and sine are sqrt(p) and sqrt(1 - p).

#pragma once

#include "strobe/chain_model.hpp"
#include "strobe/hilbert.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace strobe::analytic {

struct RawInputs {
    double omega1{0.75};
    double omega2{1.0};
    double g{0.3};       // internal partial swap
    double g_bath{0.3};  // both system-bath partial swaps
    double tau_q{1.0};
    double tau_w{1.0};
    double T_C{0.4};
    double T_H{0.8};
};

// Direct parameter values that replace the ones derived from RawInputs.
struct Overrides {
    std::optional<double> lambda;
    std::optional<double> p;
    std::optional<double> eta;
    std::optional<double> xi;

    bool any() const { return lambda || p || eta || xi; }
};

struct AnalyticParams {
    RawInputs raw;
    double lambda{0.0};
    double p{1.0};
    double rot_cos{1.0};  // signed cos / sin of the heat-stroke rotation
    double rot_sin{0.0};
    double eta{0.0};
    double xi{0.0};
    double theta{0.0};
    double omega_r{0.0};
    double f_C{0.0};
    double f_H{0.0};
    double Z1_th{0.0};
    double Z2_th{0.0};
    // Products that stay finite when g -> 0.
    double eta_tan{0.0};   // eta tan(theta)
    double eta_tan2{0.0};  // eta tan^2(theta)
    double eta_sec2{0.0};  // eta sec^2(theta)
    double xi_tan{0.0};    // xi tan(theta)

    double tan_theta() const { return std::tan(theta); }
    // |xi^2 - eta (1 - eta sec^2 theta)|
    double xi_identity_defect() const;
    // eta < cos^2 theta
    bool eta_bound_holds() const;
};

AnalyticParams derive_params(const RawInputs& raw, const Overrides& overrides = {});

// Requires two sites, partial-swap coupling, equal bath couplings and
// resonant ancillas; throws SpecError otherwise.
RawInputs raw_inputs(const ChainModel& model);

struct ObservableVector {
    double Z1{0.0};
    double Z2{0.0};
    double S{0.0};
    double A{0.0};

    Eigen::Vector4d vec() const { return {Z1, Z2, S, A}; }
    static ObservableVector from(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }
};

ObservableVector heat_map(const ObservableVector& x, const AnalyticParams& params);
ObservableVector work_map(const ObservableVector& x_tilde, const AnalyticParams& params);

struct AffineMapPair {
    Eigen::Matrix4d J;
    Eigen::Matrix4d D;
    Eigen::Vector4d Svec;
    double lambda{0.0};
};

AffineMapPair build_affine_maps(const AnalyticParams& params);

struct TrajectoryPoint {
    ObservableVector x;        // x_n
    ObservableVector x_tilde;  // J x_n + S
};

// Points n = 0 .. n_cycles, from x_n = (DJ)^n (x0 - x*) + x*, or from the
// partial sums when I - DJ is singular.
std::vector<TrajectoryPoint> trajectory(const ObservableVector& x0, std::size_t n_cycles, const AffineMapPair& maps);

struct SteadyState {
    ObservableVector x;
    ObservableVector x_tilde;
};

// Throws SingularityError when lambda = 0.
SteadyState steady_state(const AffineMapPair& maps);

double relaxation_rate(const AffineMapPair& maps);

// Closed-form limit-cycle work.
double work_closed_form(const AnalyticParams& params);
// The same expression with the literature prefactor 2 eta and unsigned
// sqrt(1 - p); kept for comparison, it equals twice the true value.
double work_closed_form_printed(const AnalyticParams& params);

struct Thermo {
    double Q_C{0.0};
    double Q_H{0.0};
    double W{0.0};
};

Thermo thermo_from_states(const ObservableVector& x, const ObservableVector& x_tilde,
                          const ObservableVector& x_next, const AnalyticParams& params);

// (Z1, Z2, S, A) of a two-qubit state.
ObservableVector extract_observables(const DensityMatrix& rho);

}  // namespace strobe::analytic
