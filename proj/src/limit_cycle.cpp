#include "strobe/limit_cycle.hpp"

#include "strobe/cycles.hpp"
#include "strobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strobe {

std::string to_string(LimitCycleMethod method) {
    return method == LimitCycleMethod::Iterate ? "iterate" : "spectral";
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::Engine: return "engine";
        case Regime::Refrigerator: return "refrigerator";
        case Regime::Accelerator: return "accelerator";
        case Regime::Heater: return "heater";
        case Regime::Idle: return "idle";
    }
    return "idle";
}

namespace {

// Orthonormal Hermitian basis: E_kk, then (E_kl + E_lk)/sqrt2 and
// i(E_kl - E_lk)/sqrt2 for k < l. Coordinates are real.
class HermitianCoordinates {
public:
    explicit HermitianCoordinates(std::size_t d) : d_(d) {}

    std::size_t size() const { return d_ * d_; }

    Eigen::VectorXd to_coords(const Matrix& x) const {
        Eigen::VectorXd c(size());
        std::size_t idx = d_;
        for (std::size_t k = 0; k < d_; ++k) {
            c(k) = x(k, k).real();
            for (std::size_t l = k + 1; l < d_; ++l) {
                const Complex avg = 0.5 * (x(k, l) + std::conj(x(l, k)));
                c(idx++) = std::sqrt(2.0) * avg.real();
                c(idx++) = std::sqrt(2.0) * avg.imag();
            }
        }
        return c;
    }

    Matrix from_coords(const Eigen::VectorXd& c) const {
        Matrix x = Matrix::Zero(d_, d_);
        std::size_t idx = d_;
        for (std::size_t k = 0; k < d_; ++k) {
            x(k, k) = c(k);
            for (std::size_t l = k + 1; l < d_; ++l) {
                const Complex v(c(idx) / std::sqrt(2.0), c(idx + 1) / std::sqrt(2.0));
                x(k, l) = v;
                x(l, k) = std::conj(v);
                idx += 2;
            }
        }
        return x;
    }

    Matrix basis(std::size_t j) const {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(size());
        c(j) = 1.0;
        return from_coords(c);
    }

private:
    std::size_t d_;
};

constexpr double kDegeneracyRcond = 1e-11;

LimitCycleReport iterate(const EngineChannels& channels, const LimitCycleOptions& options) {
    const EngineSpec& spec = channels.spec();
    DensityMatrix start = options.start ? *options.start : thermal_product(spec, spec.cold.temperature);
    if (!(start.layout() == channels.chain()))
        throw LayoutError("find_limit_cycle: start state on " + start.layout().describe());
    Matrix x = start.matrix();
    double residual = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    while (n < options.max_cycles) {
        Matrix y = channels.cycle(x);
        residual = trace_distance(x, y);
        x = std::move(y);
        ++n;
        if (residual < options.tol) break;
    }
    if (!(residual < options.tol))
        throw ConvergenceError("limit cycle not reached within " + std::to_string(options.max_cycles) +
                                   " cycles (last residual " + std::to_string(residual) + ")",
                               residual, n);
    const DensityMatrix rho_star = DensityMatrix::assume_valid(channels.chain(), x);
    LimitCycleReport report =
        limit_cycle_thermo(rho_star, DensityMatrix::assume_valid(channels.chain(), channels.heat(x)), channels);
    report.cycles_to_converge = n;
    return report;
}

LimitCycleReport spectral(const EngineChannels& channels, const LimitCycleOptions& options) {
    const std::size_t d = channels.chain().total_dim();
    const HermitianCoordinates coords(d);
    const std::size_t n = coords.size();

    Eigen::MatrixXd map(n, n);
    for (std::size_t j = 0; j < n; ++j) map.col(j) = coords.to_coords(channels.cycle(coords.basis(j)));

    std::optional<double> second;
    if (options.spectrum) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(map, false);
        std::vector<double> mags;
        std::size_t unit = 0;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const auto ev = es.eigenvalues()(k);
            mags.push_back(std::abs(ev));
            if (std::abs(ev - std::complex<double>(1.0, 0.0)) < 1e-9) ++unit;
        }
        if (unit > 1)
            throw DegeneracyError("cycle map has " + std::to_string(unit) + " eigenvalues at 1");
        std::sort(mags.begin(), mags.end(), std::greater<>());
        second = mags.size() > 1 ? mags[1] : 0.0;
    }

    Eigen::MatrixXd system = map - Eigen::MatrixXd::Identity(n, n);
    system.row(0).setZero();
    system.row(0).head(d).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > kDegeneracyRcond))
        throw DegeneracyError("unit eigenvalue of the cycle map is not simple (rcond " + std::to_string(rcond) +
                              ")");
    const Matrix x = coords.from_coords(lu.solve(rhs));

    DensityMatrix rho_star = [&] {
        try {
            return DensityMatrix(channels.chain(), x);
        } catch (const ParameterError& e) {
            throw ConsistencyError(std::string("spectral fixed point is not a state: ") + e.what());
        }
    }();
    LimitCycleReport report = limit_cycle_thermo(
        rho_star, DensityMatrix::assume_valid(channels.chain(), channels.heat(rho_star.matrix())), channels);
    report.second_eigenvalue = second;
    return report;
}

}  // namespace

LimitCycleReport find_limit_cycle(const EngineChannels& channels, const LimitCycleOptions& options) {
    if (!(options.tol > 0.0)) throw ParameterError("find_limit_cycle: tol must be positive");
    return options.method == LimitCycleMethod::Iterate ? iterate(channels, options) : spectral(channels, options);
}

LimitCycleReport find_limit_cycle(const EngineSpec& spec, const LimitCycleOptions& options) {
    return find_limit_cycle(EngineChannels(spec), options);
}

LimitCycleReport limit_cycle_thermo(const DensityMatrix& rho_star, const DensityMatrix& rho_tilde_star,
                                    const EngineChannels& channels) {
    const EngineSpec& spec = channels.spec();
    const Matrix delta = rho_tilde_star.matrix() - rho_star.matrix();
    auto energy = [&](const Matrix& h) { return h.cwiseProduct(delta.transpose()).sum().real(); };

    LimitCycleReport r{rho_star, rho_tilde_star};
    const std::size_t n = spec.size();
    r.Q_C = energy(channels.site_hamiltonian(0));
    r.Q_H = energy(channels.site_hamiltonian(n - 1));
    r.W = energy(channels.local_hamiltonian().matrix());
    for (std::size_t i = 1; i + 1 < n; ++i) r.internal_drift.push_back(std::abs(energy(channels.site_hamiltonian(i))));

    const StrokeOutcome heat = channels.heat_stroke(rho_star);
    r.Q_C_ancilla = heat.Q_C_ancilla;
    r.Q_H_ancilla = heat.Q_H_ancilla;
    r.Sigma = -heat_over_temperature(r.Q_C_ancilla, spec.cold.temperature) -
              heat_over_temperature(r.Q_H_ancilla, spec.hot.temperature);

    if (r.Q_H > kRegimeThreshold) r.efficiency = r.W / r.Q_H;
    const double period = spec.tau_q + spec.tau_w;
    r.power = period > 0.0 ? r.W / period : std::numeric_limits<double>::quiet_NaN();
    r.residual = trace_distance(channels.cycle(rho_star.matrix()), rho_star.matrix());
    return r;
}

Regime classify_regime(const LimitCycleReport& report, double threshold) {
    const double W = report.W, QC = report.Q_C, QH = report.Q_H;
    if (std::abs(W) <= threshold && std::abs(QC) <= threshold && std::abs(QH) <= threshold) return Regime::Idle;
    if (W > threshold) return Regime::Engine;
    if (QC > threshold) return Regime::Refrigerator;
    if (QH > threshold) return Regime::Accelerator;
    return Regime::Heater;
}

OttoDiagnostics otto_check(const EngineSpec& spec, const LimitCycleReport& report) {
    OttoDiagnostics d;
    const CouplingForm form = classify_coupling_form(spec);
    if (!form.single_jump) {
        d.reason = "not applicable: " + form.reason + "; Otto universality not guaranteed";
        return d;
    }
    d.applicable = true;
    d.reason = form.reason;
    const double w1 = *spec.sites.front().frequency;
    const double wN = *spec.sites.back().frequency;
    d.otto_efficiency = 1.0 - w1 / wN;

    d.heat_ratio_defect = std::abs(report.Q_C + (w1 / wN) * report.Q_H);
    d.heat_ratio_ok = d.heat_ratio_defect <= 1e-9;

    const double gradient = heat_over_temperature(w1, spec.cold.temperature) -
                            heat_over_temperature(wN, spec.hot.temperature);
    d.sign_law_ok = !(report.Q_H > kRegimeThreshold && !(gradient > 0.0)) &&
                    !(report.Q_H < -kRegimeThreshold && !(gradient < 0.0));

    if (report.efficiency) {
        d.efficiency_defect = std::abs(*report.efficiency - d.otto_efficiency);
        d.efficiency_ok = *d.efficiency_defect <= 1e-8;
    } else {
        d.efficiency_ok = true;
    }
    return d;
}

}  // namespace strobe
