#include "strobe/cycles.hpp"
#include "strobe/errors.hpp"
#include "strobe/limit_cycle.hpp"
#include "strobe/qubit.hpp"
#include "strobe/strokes.hpp"
#include "test_models.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace strobe;
using strobe::test_support::random_model;
using strobe::test_support::random_state;
using strobe::test_support::spin_chain_model;
using strobe::test_support::two_qubit_model;

namespace {

void expect_state_close(const Matrix& a, const Matrix& b, double tol) { EXPECT_LE(max_abs(a - b), tol); }

double min_eig(const Matrix& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST(HeatStroke, FastRouteMatchesCompositeUnitary) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto model = random_model(rng, n);
            if (trial == 2) model.cold.omega = model.omegas[0] + 0.3;
            const EngineChannels ch(model.to_spec());
            const auto rho = random_state(ch.chain(), rng);
            const auto fast = ch.heat_stroke(rho);
            const auto full = ch.heat_stroke_composite(rho);
            expect_state_close(fast.state_after.matrix(), full.state_after.matrix(), 1e-12);
            EXPECT_NEAR(fast.Q_C, full.Q_C, 1e-12);
            EXPECT_NEAR(fast.Q_H, full.Q_H, 1e-12);
            EXPECT_NEAR(fast.Q_C_ancilla, full.Q_C_ancilla, 1e-12);
            EXPECT_NEAR(fast.Q_H_ancilla, full.Q_H_ancilla, 1e-12);
            EXPECT_NEAR(fast.dV_C, full.dV_C, 1e-12);
            EXPECT_NEAR(fast.dV_H, full.dV_H, 1e-12);
        }
    }
}

TEST(HeatStroke, EquilibriumIsFixed) {
    auto model = two_qubit_model();
    model.cold.T = model.hot.T = 0.6;
    const auto spec = model.to_spec();
    const auto rho = thermal_product(spec, 0.6);
    const auto out = heat_stroke(rho, spec);
    expect_state_close(out.state_after.matrix(), rho.matrix(), 1e-13);
    EXPECT_NEAR(out.Q_C, 0.0, 1e-14);
    EXPECT_NEAR(out.Q_H, 0.0, 1e-14);
}

TEST(HeatStroke, ZeroBathCouplingIsIdentity) {
    auto model = two_qubit_model();
    model.cold.g = model.hot.g = 0.0;
    const auto spec = model.to_spec();
    std::mt19937_64 rng(12);
    const auto rho = random_state(spec.chain_layout(), rng);
    const auto out = heat_stroke(rho, spec);
    // The only evolution left is free rotation of the sites, which commutes with
    // populations: diagonal unchanged, coherences rotate.
    expect_state_close(out.state_after.matrix(),
                       evolve_unitary(build_local_hamiltonian(spec), spec.tau_q, rho).matrix(), 1e-13);
    EXPECT_NEAR(out.Q_C, 0.0, 1e-15);
    EXPECT_NEAR(out.Q_H, 0.0, 1e-15);
    EXPECT_NEAR(out.W_onoff_C, 0.0, 1e-15);
}

TEST(HeatStroke, OnOffWorkVanishesForResonantAncillas) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto spec = random_model(rng, 2 + trial % 3).to_spec();
        ASSERT_TRUE(check_strict_energy_conservation(spec).holds());
        const auto out = heat_stroke(random_state(spec.chain_layout(), rng), spec);
        EXPECT_LE(std::abs(out.W_onoff_C), 1e-10);
        EXPECT_LE(std::abs(out.W_onoff_H), 1e-10);
        EXPECT_NEAR(out.Q_C, out.Q_C_ancilla, 1e-10);
        EXPECT_NEAR(out.Q_H, out.Q_H_ancilla, 1e-10);
    }
}

TEST(HeatStroke, OnOffWorkEqualsMinusInteractionEnergyWhenDetuned) {
    auto model = two_qubit_model();
    model.cold.omega = 0.9;
    const auto spec = model.to_spec();
    EXPECT_FALSE(check_strict_energy_conservation(spec).holds());
    std::mt19937_64 rng(14);
    const auto rho = random_state(spec.chain_layout(), rng);
    const auto out = heat_stroke(rho, spec);
    EXPECT_GT(std::abs(out.W_onoff_C), 1e-4);
    EXPECT_NEAR(out.W_onoff_C, -out.dV_C, 1e-10);
    EXPECT_LE(std::abs(out.W_onoff_H), 1e-10);
}

TEST(HeatStroke, ConservationCheckPredictsOnOffWork) {
    // Zero commutator norm iff the stroke shows no on/off work, over random specs
    // with and without detuned ancillas.
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto model = random_model(rng, 2 + trial % 2);
        if (trial % 2) model.hot.omega = model.omegas.back() * (0.7 + 0.6 * u(rng));
        const auto spec = model.to_spec();
        const bool conserving = check_strict_energy_conservation(spec).holds();
        const auto out = heat_stroke(random_state(spec.chain_layout(), rng), spec);
        const bool no_onoff = std::abs(out.W_onoff_C) <= 1e-10 && std::abs(out.W_onoff_H) <= 1e-10;
        EXPECT_EQ(conserving, no_onoff) << "trial " << trial;
    }
}

TEST(HeatStroke, RejectsWrongLayout) {
    const auto spec = two_qubit_model().to_spec();
    const auto rho = DensityMatrix::maximally_mixed(SpaceLayout{{"S1", 2}, {"S3", 2}});
    EXPECT_THROW(heat_stroke(rho, spec), LayoutError);
}

TEST(WorkStroke, ResonantQubitsGiveNoWork) {
    const auto spec = two_qubit_model(0.9, 0.9).to_spec();
    std::mt19937_64 rng(16);
    for (double tau : {0.3, 1.0, 4.2}) {
        auto s = spec;
        s.tau_w = tau;
        const auto out = work_stroke(random_state(s.chain_layout(), rng), s);
        EXPECT_NEAR(out.W, 0.0, 1e-14);
    }
}

TEST(WorkStroke, ZeroDurationIsIdentity) {
    auto spec = two_qubit_model().to_spec();
    spec.tau_w = 0.0;
    std::mt19937_64 rng(17);
    const auto rho = random_state(spec.chain_layout(), rng);
    const auto out = work_stroke(rho, spec);
    expect_state_close(out.state_after.matrix(), rho.matrix(), 1e-15);
    EXPECT_NEAR(out.W, 0.0, 1e-15);
}

TEST(WorkStroke, TwoWorkRoutesAgree) {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        const auto spec = random_model(rng, 2 + trial % 3).to_spec();
        const auto out = work_stroke(random_state(spec.chain_layout(), rng), spec);
        EXPECT_NEAR(out.W, out.dV, 1e-10);
    }
}

TEST(Channels, PreserveStateProperties) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 12; ++trial) {
        const EngineChannels ch(random_model(rng, 2 + trial % 3).to_spec());
        const auto rho = random_state(ch.chain(), rng, 1 + trial % 4);
        for (const Matrix& out : {ch.heat(rho.matrix()), ch.work(rho.matrix())}) {
            EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
            EXPECT_LE(hermiticity_defect(out), 1e-10);
            EXPECT_GE(min_eig(out), -1e-10);
        }
    }
}

TEST(RunCycles, EquilibriumRowsVanish) {
    auto model = two_qubit_model(0.8, 0.8);
    model.cold.T = model.hot.T = 0.5;
    const auto spec = model.to_spec();
    const auto ledger = run_cycles(thermal_product(spec, 0.5), spec, 5);
    for (const auto& r : ledger.rows) {
        EXPECT_NEAR(r.Q_C, 0.0, 1e-14);
        EXPECT_NEAR(r.Q_H, 0.0, 1e-14);
        EXPECT_NEAR(r.W, 0.0, 1e-14);
        EXPECT_NEAR(r.Sigma, 0.0, 1e-13);
    }
}

TEST(RunCycles, FirstAndSecondLawOnRandomSpecs) {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 9; ++trial) {
        auto model = random_model(rng, 2 + trial % 3);
        if (trial % 3 == 0) model.cold.omega = model.omegas[0] + 0.2;
        const auto spec = model.to_spec();
        const auto ledger = run_cycles(random_state(spec.chain_layout(), rng), spec, 15);
        EXPECT_LE(ledger.first_law_residual(), 1e-10);
        EXPECT_GE(ledger.min_entropy_production(), -1e-12);
        for (const auto& r : ledger.rows) EXPECT_NEAR(r.W_onoff_C, r.Q_C - r.Q_C_ancilla, 1e-15);
    }
}

TEST(RunCycles, TransientWorkStartsSmallAndSettles) {
    const auto spec = two_qubit_model().to_spec();
    const auto ledger = run_cycles(ground_state(spec), spec, 30, true);
    ASSERT_EQ(ledger.rows.size(), 30u);
    ASSERT_EQ(ledger.snapshots.size(), 30u);
    const double plateau = ledger.rows.back().W;
    EXPECT_GT(plateau, 0.0);
    EXPECT_LT(std::abs(ledger.rows.front().W), 0.5 * plateau);
    EXPECT_GT(ledger.rows.front().Q_C, 0.0);
    EXPECT_GT(ledger.rows.front().Q_H, 0.0);
    EXPECT_LT(std::abs(ledger.rows[28].W - plateau), 0.05 * plateau);
}

TEST(LimitCycle, EquilibriumHasNoCurrents) {
    auto model = two_qubit_model(0.8, 0.8);
    model.cold.T = model.hot.T = 0.5;
    const auto spec = model.to_spec();
    for (auto method : {LimitCycleMethod::Iterate, LimitCycleMethod::Spectral}) {
        LimitCycleOptions opt;
        opt.method = method;
        const auto r = find_limit_cycle(spec, opt);
        expect_state_close(r.rho_star.matrix(), thermal_product(spec, 0.5).matrix(), 1e-10);
        EXPECT_NEAR(r.W, 0.0, 1e-13);
        EXPECT_NEAR(r.Q_H, 0.0, 1e-13);
        EXPECT_FALSE(r.efficiency.has_value());
        EXPECT_EQ(classify_regime(r), Regime::Idle);
    }
}

TEST(LimitCycle, MethodsAgreeOnXxChain) {
    const EngineChannels ch(spin_chain_model(3).to_spec());
    LimitCycleOptions it;
    it.tol = 1e-12;
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    sp.spectrum = true;
    const auto a = find_limit_cycle(ch, it);
    const auto b = find_limit_cycle(ch, sp);
    EXPECT_LE(trace_distance(a.rho_star, b.rho_star), 10 * it.tol);
    EXPECT_LE(b.residual, 1e-12);
    ASSERT_TRUE(b.second_eigenvalue.has_value());
    EXPECT_LT(*b.second_eigenvalue, 1.0);
    EXPECT_GT(a.cycles_to_converge, 0u);
}

TEST(LimitCycle, FixedPointOfJointMapOnly) {
    const EngineChannels ch(two_qubit_model().to_spec());
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    const auto r = find_limit_cycle(ch, sp);
    EXPECT_LE(trace_distance(ch.cycle(r.rho_star.matrix()), r.rho_star.matrix()), 1e-11);
    EXPECT_GT(trace_distance(r.rho_tilde_star, r.rho_star), 1e-3);
    EXPECT_NEAR(r.W, r.Q_C + r.Q_H, 1e-10);
}

TEST(LimitCycle, IterateBudgetExhaustion) {
    const auto spec = two_qubit_model().to_spec();
    LimitCycleOptions opt;
    opt.max_cycles = 3;
    try {
        find_limit_cycle(spec, opt);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.cycles(), 3u);
        EXPECT_GT(e.last_residual(), 1e-12);
    }
}

TEST(LimitCycle, DecoupledChainIsDegenerate) {
    auto model = two_qubit_model();
    model.cold.g = model.hot.g = 0.0;
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    EXPECT_THROW(find_limit_cycle(model.to_spec(), sp), DegeneracyError);
}

TEST(LimitCycle, InternalSitesFreeze) {
    for (std::size_t n : {3u, 4u, 5u}) {
        for (double Jz : {0.0, 0.7}) {
            LimitCycleOptions sp;
            sp.method = LimitCycleMethod::Spectral;
            const auto r = find_limit_cycle(spin_chain_model(n, Jz).to_spec(), sp);
            ASSERT_EQ(r.internal_drift.size(), n - 2);
            for (double d : r.internal_drift) EXPECT_LE(d, 1e-9);
            EXPECT_GE(r.Sigma, -1e-12);
        }
    }
}

TEST(LimitCycle, UniformFrequenciesCarryNoWork) {
    auto model = spin_chain_model(4);
    model.omegas.assign(4, 1.7);
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    const auto r = find_limit_cycle(model.to_spec(), sp);
    EXPECT_NEAR(r.Q_C, -r.Q_H, 1e-9);
    EXPECT_GT(r.Q_H, 1e-6);
}

TEST(Regime, EngineRefrigeratorIdle) {
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    const auto engine = find_limit_cycle(two_qubit_model().to_spec(), sp);
    EXPECT_EQ(classify_regime(engine), Regime::Engine);
    const auto fridge = find_limit_cycle(two_qubit_model(0.3, 1.0).to_spec(), sp);
    EXPECT_EQ(classify_regime(fridge), Regime::Refrigerator);
    EXPECT_GT(fridge.Q_C, 0.0);

    auto off = two_qubit_model();
    off.coupling.g = {0.0};
    const auto idle = find_limit_cycle(off.to_spec());
    EXPECT_EQ(classify_regime(idle), Regime::Idle);
}

TEST(Regime, SignPatterns) {
    auto report = [](double qc, double qh) {
        LimitCycleReport r{DensityMatrix::maximally_mixed(SpaceLayout{{"S1", 2}}),
                           DensityMatrix::maximally_mixed(SpaceLayout{{"S1", 2}})};
        r.Q_C = qc;
        r.Q_H = qh;
        r.W = qc + qh;
        return r;
    };
    EXPECT_EQ(classify_regime(report(-1, 2)), Regime::Engine);
    EXPECT_EQ(classify_regime(report(1, -2)), Regime::Refrigerator);
    EXPECT_EQ(classify_regime(report(-2, 1)), Regime::Accelerator);
    EXPECT_EQ(classify_regime(report(-1, -1)), Regime::Heater);
    EXPECT_EQ(classify_regime(report(1e-13, -1e-13)), Regime::Idle);
}

TEST(OttoCheck, TwoQubitAndXxChains) {
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    const auto spec = two_qubit_model().to_spec();
    const auto d = otto_check(spec, find_limit_cycle(spec, sp));
    EXPECT_TRUE(d.applicable);
    EXPECT_TRUE(d.passed());
    EXPECT_NEAR(d.otto_efficiency, 0.25, 1e-15);

    for (double tq : {0.05, 0.2}) {
        for (double tw : {0.25, 1.0}) {
            auto model = spin_chain_model(3);
            model.tau_q = tq;
            model.tau_w = tw;
            const auto s = model.to_spec();
            const auto r = find_limit_cycle(s, sp);
            ASSERT_TRUE(r.efficiency.has_value());
            EXPECT_NEAR(*r.efficiency, 0.25, 1e-8);
            EXPECT_TRUE(otto_check(s, r).passed());
        }
    }
}

TEST(OttoCheck, XxzNotApplicable) {
    const auto spec = spin_chain_model(3, 0.7).to_spec();
    LimitCycleOptions sp;
    sp.method = LimitCycleMethod::Spectral;
    const auto d = otto_check(spec, find_limit_cycle(spec, sp));
    EXPECT_FALSE(d.applicable);
    EXPECT_NE(d.reason.find("not applicable"), std::string::npos);
}
