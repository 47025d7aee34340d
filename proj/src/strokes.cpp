#include "strobe/strokes.hpp"

#include "strobe/errors.hpp"

#include <cmath>

namespace strobe {

namespace {

EngineSpec validated(EngineSpec spec) {
    spec.validate();
    return spec;
}

void require_chain(const SpaceLayout& chain, const DensityMatrix& rho, const char* who) {
    if (!(rho.layout() == chain))
        throw LayoutError(std::string(who) + ": state on " + rho.layout().describe() + ", expected " +
                          chain.describe());
}

// Re tr{a b} without forming the product.
double trace_product(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum().real(); }

}  // namespace

EngineChannels::EngineChannels(EngineSpec spec)
    : spec_(validated(std::move(spec))),
      chain_(spec_.chain_layout()),
      local_(build_local_hamiltonian(spec_)),
      coupling_(build_internal_coupling(spec_)),
      rho_cold_(thermal_state(spec_.cold.hamiltonian, spec_.cold.temperature)),
      rho_hot_(thermal_state(spec_.hot.hamiltonian, spec_.hot.temperature)),
      work_(local_ + coupling_, spec_.tau_w) {
    const std::size_t n = spec_.size();
    site_h_.reserve(n);
    for (const auto& site : spec_.sites)
        site_h_.push_back(embed(site.hamiltonian.matrix(), site.hamiltonian.layout(), chain_));
    cold_ = make_boundary(spec_.cold, rho_cold_, 0, true);
    hot_ = make_boundary(spec_.hot, rho_hot_, n - 1, false);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        internal_sites_.push_back(i);
        internal_unitaries_.push_back(Propagator(spec_.sites[i].hamiltonian, spec_.tau_q).unitary());
    }
}

EngineChannels::Boundary EngineChannels::make_boundary(const BathSpec& bath, const DensityMatrix& ancilla,
                                                       std::size_t chain_factor, bool ancilla_first) const {
    const Factor anc = bath.hamiltonian.layout()[0];
    const Factor site = chain_[chain_factor];
    Boundary b;
    b.pair = ancilla_first ? SpaceLayout{anc, site} : SpaceLayout{site, anc};
    b.site_factor = ancilla_first ? 1 : 0;
    b.chain_factor = chain_factor;
    b.ancilla_h = embed(bath.hamiltonian.matrix(), bath.hamiltonian.layout(), b.pair);
    b.site_h = embed(spec_.sites[chain_factor].hamiltonian.matrix(), spec_.sites[chain_factor].hamiltonian.layout(),
                     b.pair);
    b.interaction = embed(bath.interaction.matrix(), bath.interaction.layout(), b.pair);
    b.unitary = Propagator(HermitianOperator(b.pair, b.ancilla_h + b.site_h + b.interaction), spec_.tau_q).unitary();

    const std::size_t da = anc.dim, ds = site.dim;
    auto index = [&](std::size_t a, std::size_t s) { return ancilla_first ? a * ds + s : s * da + a; };
    Eigen::SelfAdjointEigenSolver<Matrix> es(ancilla.matrix());
    for (std::size_t k = 0; k < da; ++k) {
        const double p = es.eigenvalues()(k);
        if (!(p > 0.0)) continue;
        const ComplexVector v = es.eigenvectors().col(k);
        for (std::size_t j = 0; j < da; ++j) {
            Matrix K = Matrix::Zero(ds, ds);
            for (std::size_t s_out = 0; s_out < ds; ++s_out)
                for (std::size_t s_in = 0; s_in < ds; ++s_in) {
                    Complex acc = 0.0;
                    for (std::size_t a = 0; a < da; ++a) acc += b.unitary(index(j, s_out), index(a, s_in)) * v(a);
                    K(s_out, s_in) = std::sqrt(p) * acc;
                }
            b.kraus.push_back(std::move(K));
        }
    }
    b.ancilla_state = ancilla.matrix();
    return b;
}

Matrix EngineChannels::apply_kraus(const Boundary& b, const Matrix& rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& K : b.kraus)
        out += left_multiply_local(chain_, b.chain_factor, K,
                                   right_multiply_local(chain_, b.chain_factor, K.adjoint(), rho));
    return out;
}

Matrix EngineChannels::heat(const Matrix& rho) const {
    Matrix out = apply_kraus(hot_, apply_kraus(cold_, rho));
    for (std::size_t k = 0; k < internal_sites_.size(); ++k) {
        const Matrix& u = internal_unitaries_[k];
        out = right_multiply_local(chain_, internal_sites_[k], u.adjoint(),
                                   left_multiply_local(chain_, internal_sites_[k], u, out));
    }
    return out;
}

Matrix EngineChannels::work(const Matrix& rho) const { return work_.apply(rho); }

void EngineChannels::local_balance(const Boundary& b, const DensityMatrix& rho, double& Q_ancilla,
                                   double& dV) const {
    const Matrix site = partial_trace(rho.matrix(), chain_, {chain_[b.chain_factor].label});
    const Matrix before = b.site_factor == 1 ? kron(b.ancilla_state, site) : kron(site, b.ancilla_state);
    const Matrix after = b.unitary * before * b.unitary.adjoint();
    const Matrix delta = after - before;
    Q_ancilla = -trace_product(b.ancilla_h, delta);
    dV = trace_product(b.interaction, delta);
}

void EngineChannels::check_channel_output(const Matrix& out, const char* stroke) const {
    const double herm = hermiticity_defect(out);
    const double trace = std::abs(out.trace() - Complex(1.0));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (out + out.adjoint()), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (herm > kDynamicalTol || trace > kDynamicalTol || min_eig < -kDynamicalTol)
        throw ConsistencyError(std::string(stroke) + " stroke output is not a density matrix (hermiticity " +
                               std::to_string(herm) + ", trace defect " + std::to_string(trace) +
                               ", min eigenvalue " + std::to_string(min_eig) + ")");
}

StrokeOutcome EngineChannels::heat_stroke(const DensityMatrix& rho) const {
    require_chain(chain_, rho, "heat_stroke");
    const Matrix out = heat(rho.matrix());
    check_channel_output(out, "heat");
    const Matrix delta = out - rho.matrix();
    StrokeOutcome r{DensityMatrix::assume_valid(chain_, out)};
    r.Q_C = trace_product(site_h_.front(), delta);
    r.Q_H = trace_product(site_h_.back(), delta);
    local_balance(cold_, rho, r.Q_C_ancilla, r.dV_C);
    local_balance(hot_, rho, r.Q_H_ancilla, r.dV_H);
    r.W_onoff_C = r.Q_C - r.Q_C_ancilla;
    r.W_onoff_H = r.Q_H - r.Q_H_ancilla;
    return r;
}

StrokeOutcome EngineChannels::heat_stroke_composite(const DensityMatrix& rho) const {
    require_chain(chain_, rho, "heat_stroke");
    const SpaceLayout full = spec_.heat_layout();
    const Matrix before = kron(kron(rho_cold_.matrix(), rho.matrix()), rho_hot_.matrix());
    const Propagator u(build_heat_hamiltonian(spec_), spec_.tau_q);
    const Matrix after = u.apply(before);
    const Matrix delta = after - before;
    const Matrix out = partial_trace(after, full, chain_.labels());
    check_channel_output(out, "heat");

    auto lifted = [&](const HermitianOperator& op) { return embed(op.matrix(), op.layout(), full); };
    StrokeOutcome r{DensityMatrix::assume_valid(chain_, out)};
    r.Q_C = trace_product(lifted(spec_.sites.front().hamiltonian), delta);
    r.Q_H = trace_product(lifted(spec_.sites.back().hamiltonian), delta);
    r.Q_C_ancilla = -trace_product(lifted(spec_.cold.hamiltonian), delta);
    r.Q_H_ancilla = -trace_product(lifted(spec_.hot.hamiltonian), delta);
    r.dV_C = trace_product(lifted(spec_.cold.interaction), delta);
    r.dV_H = trace_product(lifted(spec_.hot.interaction), delta);
    r.W_onoff_C = r.Q_C - r.Q_C_ancilla;
    r.W_onoff_H = r.Q_H - r.Q_H_ancilla;
    return r;
}

StrokeOutcome EngineChannels::work_stroke(const DensityMatrix& rho) const {
    require_chain(chain_, rho, "work_stroke");
    const Matrix out = work(rho.matrix());
    check_channel_output(out, "work");
    const Matrix delta = out - rho.matrix();
    StrokeOutcome r{DensityMatrix::assume_valid(chain_, out)};
    r.W = -trace_product(local_.matrix(), delta);
    r.dV = trace_product(coupling_.matrix(), delta);
    return r;
}

DensityMatrix ground_state(const EngineSpec& spec) {
    std::vector<DensityMatrix> parts;
    for (const auto& site : spec.sites) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(site.hamiltonian.matrix());
        parts.push_back(DensityMatrix::pure(site.hamiltonian.layout(), es.eigenvectors().col(0)));
    }
    return tensor_compose(parts);
}

DensityMatrix thermal_product(const EngineSpec& spec, double temperature) {
    std::vector<DensityMatrix> parts;
    for (const auto& site : spec.sites) parts.push_back(thermal_state(site.hamiltonian, temperature));
    return tensor_compose(parts);
}

StrokeOutcome heat_stroke(const DensityMatrix& rho, const EngineSpec& spec) {
    return EngineChannels(spec).heat_stroke_composite(rho);
}

StrokeOutcome work_stroke(const DensityMatrix& rho, const EngineSpec& spec) {
    return EngineChannels(spec).work_stroke(rho);
}

DensityMatrix initial_state(const EngineSpec& spec, InitialState kind) {
    return kind == InitialState::Ground ? ground_state(spec) : thermal_product(spec, spec.cold.temperature);
}

}  // namespace strobe
