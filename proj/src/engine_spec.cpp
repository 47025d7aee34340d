#include "strobe/engine_spec.hpp"

#include "strobe/errors.hpp"
#include "strobe/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace strobe {

std::string site_label(std::size_t index) { return "S" + std::to_string(index + 1); }

SiteSpec SiteSpec::qubit(std::size_t index, double omega) {
    if (!std::isfinite(omega)) throw SpecError("site frequency must be finite");
    return SiteSpec{qubit::hamiltonian(site_label(index), omega), omega};
}

SpaceLayout EngineSpec::chain_layout() const {
    std::vector<Factor> factors;
    factors.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) factors.push_back({site_label(i), sites[i].dimension()});
    return SpaceLayout(std::move(factors));
}

SpaceLayout EngineSpec::heat_layout() const {
    std::vector<Factor> factors;
    factors.push_back({kColdLabel, cold.hamiltonian.dim()});
    for (std::size_t i = 0; i < sites.size(); ++i) factors.push_back({site_label(i), sites[i].dimension()});
    factors.push_back({kHotLabel, hot.hamiltonian.dim()});
    return SpaceLayout(std::move(factors));
}

namespace {

bool all_qubits(const EngineSpec& spec) {
    return std::all_of(spec.sites.begin(), spec.sites.end(), [](const SiteSpec& s) { return s.dimension() == 2; });
}

std::set<std::string> label_set(const SpaceLayout& layout) {
    auto labels = layout.labels();
    return {labels.begin(), labels.end()};
}

void validate_bath(const BathSpec& bath, const std::string& ancilla, const std::string& site,
                   std::size_t site_dim, const char* name) {
    const std::string who = std::string(name) + " bath: ";
    const auto& h = bath.hamiltonian.layout();
    if (h.size() != 1 || h[0].label != ancilla)
        throw SpecError(who + "hamiltonian must act on the single factor \"" + ancilla + "\", got " + h.describe());
    if (!(bath.temperature > 0.0) || std::isnan(bath.temperature))
        throw SpecError(who + "temperature must be positive");
    const auto& v = bath.interaction.layout();
    if (label_set(v) != std::set<std::string>{ancilla, site})
        throw SpecError(who + "interaction must be supported on {" + ancilla + ", " + site + "}, got " +
                        v.describe());
    const auto site_pos = v.index_of(site);
    const auto anc_pos = v.index_of(ancilla);
    if (v[*site_pos].dim != site_dim || v[*anc_pos].dim != h[0].dim)
        throw SpecError(who + "interaction dimensions do not match the ancilla and site");
}

}  // namespace

void EngineSpec::validate() const {
    const std::size_t n = sites.size();
    if (n < 2) throw SpecError("engine needs at least two sites");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& layout = sites[i].hamiltonian.layout();
        if (layout.size() != 1 || layout[0].label != site_label(i))
            throw SpecError("site " + std::to_string(i + 1) + ": hamiltonian must act on factor \"" +
                            site_label(i) + "\", got " + layout.describe());
        if (layout[0].dim < 2) throw SpecError("site " + std::to_string(i + 1) + ": dimension must be at least 2");
    }
    validate_bath(cold, kColdLabel, site_label(0), sites.front().dimension(), "cold");
    validate_bath(hot, kHotLabel, site_label(n - 1), sites.back().dimension(), "hot");
    if (cold.temperature > hot.temperature) throw SpecError("cold bath temperature exceeds hot bath temperature");
    if (!(tau_q >= 0.0) || !(tau_w >= 0.0) || !std::isfinite(tau_q) || !std::isfinite(tau_w))
        throw SpecError("stroke durations must be finite and non-negative");

    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PartialSwapCoupling>) {
                if (!all_qubits(*this)) throw SpecError("partial swap coupling requires qubit sites");
                if (c.g.size() != 1 && c.g.size() != n - 1)
                    throw SpecError("partial swap coupling needs one g or one per bond (" + std::to_string(n - 1) +
                                    "), got " + std::to_string(c.g.size()));
                for (double g : c.g)
                    if (!std::isfinite(g)) throw SpecError("partial swap g must be finite");
            } else if constexpr (std::is_same_v<T, XyzCoupling>) {
                if (!all_qubits(*this)) throw SpecError("xyz coupling requires qubit sites");
                if (!std::isfinite(c.Jx) || !std::isfinite(c.Jy) || !std::isfinite(c.Jz))
                    throw SpecError("xyz couplings must be finite");
            } else {
                if (c.bonds.size() != n - 1)
                    throw SpecError("explicit coupling needs " + std::to_string(n - 1) + " bonds, got " +
                                    std::to_string(c.bonds.size()));
                for (std::size_t k = 0; k + 1 < n; ++k) {
                    const auto& layout = c.bonds[k].layout();
                    if (label_set(layout) != std::set<std::string>{site_label(k), site_label(k + 1)})
                        throw SpecError("bond " + std::to_string(k + 1) + " must be supported on {" +
                                        site_label(k) + ", " + site_label(k + 1) + "}, got " + layout.describe());
                    for (std::size_t f = 0; f < layout.size(); ++f) {
                        const std::size_t site = (layout[f].label == site_label(k)) ? k : k + 1;
                        if (layout[f].dim != sites[site].dimension())
                            throw SpecError("bond " + std::to_string(k + 1) + " dimension mismatch on " +
                                            layout[f].label);
                    }
                }
            }
        },
        coupling);
}

HermitianOperator build_partial_swap(double g, const Factor& a, const Factor& b) {
    if (a.dim != 2 || b.dim != 2) throw SpecError("build_partial_swap: both factors must be qubits");
    Matrix m = Matrix::Zero(4, 4);
    m(1, 2) = g;
    m(2, 1) = g;
    return HermitianOperator(SpaceLayout{a, b}, m);
}

HermitianOperator build_xyz_coupling(double Jx, double Jy, double Jz, const SpaceLayout& chain) {
    for (const auto& f : chain.factors())
        if (f.dim != 2) throw SpecError("build_xyz_coupling: all sites must be qubits, " + f.label + " is not");
    const Matrix bond = Jx * kron(qubit::sigma_x(), qubit::sigma_x()) + Jy * kron(qubit::sigma_y(), qubit::sigma_y()) +
                        Jz * kron(qubit::sigma_z(), qubit::sigma_z());
    Matrix total = Matrix::Zero(chain.total_dim(), chain.total_dim());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const SpaceLayout local{chain[k], chain[k + 1]};
        total += embed(bond, local, chain);
    }
    return HermitianOperator(chain, total);
}

HermitianOperator build_internal_coupling(const EngineSpec& spec) {
    const SpaceLayout chain = spec.chain_layout();
    return std::visit(
        [&](const auto& c) -> HermitianOperator {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PartialSwapCoupling>) {
                Matrix total = Matrix::Zero(chain.total_dim(), chain.total_dim());
                for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
                    const double g = c.g.size() == 1 ? c.g[0] : c.g.at(k);
                    const auto bond = build_partial_swap(g, chain[k], chain[k + 1]);
                    total += embed(bond.matrix(), bond.layout(), chain);
                }
                return HermitianOperator(chain, total);
            } else if constexpr (std::is_same_v<T, XyzCoupling>) {
                return build_xyz_coupling(c.Jx, c.Jy, c.Jz, chain);
            } else {
                Matrix total = Matrix::Zero(chain.total_dim(), chain.total_dim());
                for (const auto& bond : c.bonds) total += embed(bond.matrix(), bond.layout(), chain);
                return HermitianOperator(chain, total);
            }
        },
        spec.coupling);
}

HermitianOperator build_local_hamiltonian(const EngineSpec& spec) {
    const SpaceLayout chain = spec.chain_layout();
    Matrix total = Matrix::Zero(chain.total_dim(), chain.total_dim());
    for (const auto& site : spec.sites) total += embed(site.hamiltonian.matrix(), site.hamiltonian.layout(), chain);
    return HermitianOperator(chain, total);
}

HermitianOperator build_heat_hamiltonian(const EngineSpec& spec) {
    spec.validate();
    const SpaceLayout full = spec.heat_layout();
    Matrix total = Matrix::Zero(full.total_dim(), full.total_dim());
    auto add = [&](const HermitianOperator& op) { total += embed(op.matrix(), op.layout(), full); };
    for (const auto& site : spec.sites) add(site.hamiltonian);
    add(spec.cold.hamiltonian);
    add(spec.hot.hamiltonian);
    add(spec.cold.interaction);
    add(spec.hot.interaction);
    return HermitianOperator(full, total);
}

HermitianOperator build_work_hamiltonian(const EngineSpec& spec) {
    spec.validate();
    return build_local_hamiltonian(spec) + build_internal_coupling(spec);
}

namespace {

double boundary_commutator(const BathSpec& bath, const SiteSpec& site) {
    const SpaceLayout& layout = bath.interaction.layout();
    const Matrix local = embed(bath.hamiltonian.matrix(), bath.hamiltonian.layout(), layout) +
                         embed(site.hamiltonian.matrix(), site.hamiltonian.layout(), layout);
    return max_abs(commutator(bath.interaction.matrix(), local));
}

// True when m = c (|01><10| + |10><01|) for real c on a two-qubit layout.
bool is_partial_swap(const Matrix& m) {
    const Complex c = m(1, 2);
    if (std::abs(c.imag()) > kStructuralTol) return false;
    Matrix reference = Matrix::Zero(4, 4);
    reference(1, 2) = c.real();
    reference(2, 1) = c.real();
    return max_abs(m - reference) <= kStructuralTol;
}

}  // namespace

ConservationNorms check_strict_energy_conservation(const EngineSpec& spec) {
    spec.validate();
    return {boundary_commutator(spec.cold, spec.sites.front()), boundary_commutator(spec.hot, spec.sites.back())};
}

CouplingForm classify_coupling_form(const EngineSpec& spec) {
    spec.validate();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& site = spec.sites[i];
        if (site.dimension() != 2 || !site.frequency)
            return {false, site_label(i) + " is not a qubit with a single transition frequency"};
        const Matrix expected = 0.5 * *site.frequency * qubit::sigma_z();
        if (max_abs(site.hamiltonian.matrix() - expected) > kStructuralTol)
            return {false, site_label(i) + " hamiltonian is not (omega/2) sigma_z"};
    }
    return std::visit(
        [&](const auto& c) -> CouplingForm {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PartialSwapCoupling>) {
                return {true, "partial swap"};
            } else if constexpr (std::is_same_v<T, XyzCoupling>) {
                if (c.Jz != 0.0) return {false, "Jz sigma_z sigma_z term is not an eigenoperator exchange"};
                if (c.Jx != c.Jy) return {false, "Jx != Jy mixes raising and lowering jumps"};
                return {true, "xx"};
            } else {
                for (std::size_t k = 0; k < c.bonds.size(); ++k) {
                    const auto& bond = c.bonds[k];
                    const SpaceLayout ordered{bond.layout().index_of(site_label(k)) == 0u
                                                  ? bond.layout()
                                                  : SpaceLayout{bond.layout()[1], bond.layout()[0]}};
                    const Matrix m = embed(bond.matrix(), bond.layout(), ordered);
                    if (!is_partial_swap(m))
                        return {false, "bond " + std::to_string(k + 1) + " is not of the form g(L^dag L + h.c.)"};
                }
                return {true, "explicit exchange bonds"};
            }
        },
        spec.coupling);
}

}  // namespace strobe
