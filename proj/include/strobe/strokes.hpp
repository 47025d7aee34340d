// strokes.hpp - heat and work strokes of the two-stroke engine.
//
// Sign conventions: heat is positive into the system, work positive when
// extracted. Q_C, Q_H are the boundary-site energy changes; the *_ancilla
// fields are minus the ancilla energy changes. They differ by the on/off work
// W_onoff_x = dH_boundary - Q_x_ancilla = -dV_x.

#pragma once

#include "strobe/engine_spec.hpp"
#include "strobe/hilbert.hpp"

#include <vector>

namespace strobe {

struct StrokeOutcome {
    DensityMatrix state_after;
    double Q_C{0.0};
    double Q_H{0.0};
    double Q_C_ancilla{0.0};
    double Q_H_ancilla{0.0};
    double W{0.0};          // work stroke: -d<sum H_i>
    double W_onoff_C{0.0};
    double W_onoff_H{0.0};
    double dV_C{0.0};       // heat stroke: change of <V_C>
    double dV_H{0.0};
    double dV{0.0};         // work stroke: change of <V_S>; equals W
};

// Precomputed propagators and Kraus operators for one spec.
//
// U_q factorizes into a {C, S1} block, free evolution of S2..S(N-1) and an
// {SN, H} block, so the reduced heat channel is a product of local channels.
class EngineChannels {
public:
    explicit EngineChannels(EngineSpec spec);

    const EngineSpec& spec() const noexcept { return spec_; }
    const SpaceLayout& chain() const noexcept { return chain_; }
    const HermitianOperator& local_hamiltonian() const noexcept { return local_; }
    const HermitianOperator& coupling() const noexcept { return coupling_; }
    // H_i embedded in the chain.
    const Matrix& site_hamiltonian(std::size_t i) const { return site_h_.at(i); }
    const DensityMatrix& cold_ancilla() const noexcept { return rho_cold_; }
    const DensityMatrix& hot_ancilla() const noexcept { return rho_hot_; }

    // Bare channel actions on chain matrices, no validation.
    Matrix heat(const Matrix& rho) const;
    Matrix work(const Matrix& rho) const;
    Matrix cycle(const Matrix& rho) const { return work(heat(rho)); }

    StrokeOutcome heat_stroke(const DensityMatrix& rho) const;
    // Same stroke through the full C x S x H unitary.
    StrokeOutcome heat_stroke_composite(const DensityMatrix& rho) const;
    StrokeOutcome work_stroke(const DensityMatrix& rho) const;

private:
    struct Boundary {
        SpaceLayout pair;            // {C, S1} or {SN, H}
        std::size_t site_factor;     // index of the site inside `pair`
        std::size_t chain_factor;    // index of the site inside the chain
        Matrix unitary;              // on `pair`
        Matrix ancilla_h;            // H_x embedded in `pair`
        Matrix site_h;               // H_site embedded in `pair`
        Matrix interaction;          // V_x embedded in `pair`
        Matrix ancilla_state;
        std::vector<Matrix> kraus;   // on the site
    };

    Boundary make_boundary(const BathSpec& bath, const DensityMatrix& ancilla, std::size_t chain_factor,
                           bool ancilla_first) const;
    Matrix apply_kraus(const Boundary& b, const Matrix& rho) const;
    void local_balance(const Boundary& b, const DensityMatrix& rho, double& Q_ancilla, double& dV) const;
    void check_channel_output(const Matrix& out, const char* stroke) const;

    EngineSpec spec_;
    SpaceLayout chain_;
    HermitianOperator local_;
    HermitianOperator coupling_;
    std::vector<Matrix> site_h_;
    DensityMatrix rho_cold_;
    DensityMatrix rho_hot_;
    Boundary cold_;
    Boundary hot_;
    std::vector<Matrix> internal_unitaries_;  // per chain site, identity-free sites only
    std::vector<std::size_t> internal_sites_;
    Propagator work_;
};

// Product of site ground states.
DensityMatrix ground_state(const EngineSpec& spec);
// Product of site thermal states at temperature T.
DensityMatrix thermal_product(const EngineSpec& spec, double temperature);

enum class InitialState { ThermalCold, Ground };

DensityMatrix initial_state(const EngineSpec& spec, InitialState kind);

// One-shot strokes through the full composite unitary.
StrokeOutcome heat_stroke(const DensityMatrix& rho, const EngineSpec& spec);
StrokeOutcome work_stroke(const DensityMatrix& rho, const EngineSpec& spec);

}  // namespace strobe
