#include "strobe/analytic.hpp"

#include "strobe/errors.hpp"
#include "strobe/qubit.hpp"

#include <cmath>

namespace strobe::analytic {

double AnalyticParams::xi_identity_defect() const { return std::abs(xi * xi - eta * (1.0 - eta_sec2)); }

bool AnalyticParams::eta_bound_holds() const {
    const double c = std::cos(theta);
    return eta < c * c;
}

AnalyticParams derive_params(const RawInputs& raw, const Overrides& overrides) {
    if (!(raw.T_C > 0.0) || !(raw.T_H > 0.0)) throw ParameterError("derive_params: temperatures must be positive");
    AnalyticParams a;
    a.raw = raw;
    const double delta = raw.omega1 - raw.omega2;

    a.lambda = 0.5 * (1.0 - std::cos(2.0 * raw.g_bath * raw.tau_q));
    a.rot_cos = std::cos(delta * raw.tau_q);
    a.rot_sin = std::sin(delta * raw.tau_q);
    a.p = a.rot_cos * a.rot_cos;

    a.omega_r = std::sqrt(4.0 * raw.g * raw.g + delta * delta);
    a.theta = std::atan2(delta, 2.0 * raw.g);
    if (a.omega_r > 0.0) {
        const double w2 = a.omega_r * a.omega_r;
        const double one_minus_cos = 1.0 - std::cos(a.omega_r * raw.tau_w);
        const double sine = std::sin(a.omega_r * raw.tau_w);
        a.eta = 2.0 * raw.g * raw.g / w2 * one_minus_cos;
        a.xi = raw.g / a.omega_r * sine;
        a.eta_tan = raw.g * delta / w2 * one_minus_cos;
        a.eta_tan2 = 0.5 * delta * delta / w2 * one_minus_cos;
        a.xi_tan = 0.5 * delta / a.omega_r * sine;
    }
    a.eta_sec2 = a.eta + a.eta_tan2;

    if (overrides.lambda) a.lambda = *overrides.lambda;
    if (overrides.p) {
        const double p = *overrides.p;
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("derive_params: p must lie in [0, 1]");
        a.p = p;
        a.rot_cos = std::sqrt(p);
        a.rot_sin = (delta < 0.0 ? -1.0 : 1.0) * std::sqrt(1.0 - p);
    }
    if (overrides.eta || overrides.xi) {
        if (raw.g == 0.0 && delta != 0.0)
            throw ParameterError("derive_params: eta/xi overrides need g > 0 when the qubits are detuned");
        const double t = std::tan(a.theta);
        if (overrides.eta) a.eta = *overrides.eta;
        if (overrides.xi) a.xi = *overrides.xi;
        a.eta_tan = a.eta * t;
        a.eta_tan2 = a.eta * t * t;
        a.eta_sec2 = a.eta + a.eta_tan2;
        a.xi_tan = a.xi * t;
    }
    if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) throw ParameterError("derive_params: lambda must lie in [0, 1]");

    a.f_C = qubit::fermi_dirac(raw.omega1, raw.T_C);
    a.f_H = qubit::fermi_dirac(raw.omega2, raw.T_H);
    a.Z1_th = 2.0 * a.f_C - 1.0;
    a.Z2_th = 2.0 * a.f_H - 1.0;
    return a;
}

RawInputs raw_inputs(const ChainModel& model) {
    if (model.size() != 2) throw SpecError("analytic engine needs exactly two sites");
    if (model.coupling.kind != CouplingKind::PartialSwap || model.coupling.g.size() != 1)
        throw SpecError("analytic engine needs a single partial_swap coupling");
    if (model.cold.g != model.hot.g) throw SpecError("analytic engine needs equal bath couplings");
    if (model.cold_ancilla_omega() != model.omegas[0] || model.hot_ancilla_omega() != model.omegas[1])
        throw SpecError("analytic engine needs resonant ancillas");
    return RawInputs{model.omegas[0], model.omegas[1], model.coupling.g[0], model.cold.g,
                     model.tau_q,     model.tau_w,     model.cold.T,       model.hot.T};
}

ObservableVector heat_map(const ObservableVector& x, const AnalyticParams& a) {
    const double k = 1.0 - a.lambda;
    return {k * x.Z1 + a.lambda * a.Z1_th, k * x.Z2 + a.lambda * a.Z2_th, k * (a.rot_cos * x.S + a.rot_sin * x.A),
            k * (a.rot_cos * x.A - a.rot_sin * x.S)};
}

ObservableVector work_map(const ObservableVector& x, const AnalyticParams& a) {
    const double dz = x.Z1 - x.Z2;
    return {(1.0 - a.eta) * x.Z1 + a.eta * x.Z2 + 2.0 * a.eta_tan * x.S - 2.0 * a.xi * x.A,
            (1.0 - a.eta) * x.Z2 + a.eta * x.Z1 - 2.0 * a.eta_tan * x.S + 2.0 * a.xi * x.A,
            a.eta_tan * dz + (1.0 - 2.0 * a.eta_tan2) * x.S + 2.0 * a.xi_tan * x.A,
            a.xi * dz - 2.0 * a.xi_tan * x.S + (1.0 - 2.0 * a.eta_sec2) * x.A};
}

AffineMapPair build_affine_maps(const AnalyticParams& a) {
    AffineMapPair m;
    const double k = 1.0 - a.lambda;
    m.J << k, 0, 0, 0,
           0, k, 0, 0,
           0, 0, k * a.rot_cos, k * a.rot_sin,
           0, 0, -k * a.rot_sin, k * a.rot_cos;
    m.D << 1 - a.eta, a.eta, 2 * a.eta_tan, -2 * a.xi,
           a.eta, 1 - a.eta, -2 * a.eta_tan, 2 * a.xi,
           a.eta_tan, -a.eta_tan, 1 - 2 * a.eta_tan2, 2 * a.xi_tan,
           a.xi, -a.xi, -2 * a.xi_tan, 1 - 2 * a.eta_sec2;
    m.Svec << a.lambda * a.Z1_th, a.lambda * a.Z2_th, 0, 0;
    m.lambda = a.lambda;
    return m;
}

namespace {

std::optional<Eigen::Vector4d> fixed_point(const AffineMapPair& m) {
    const Eigen::Matrix4d M = m.D * m.J;
    const Eigen::Matrix4d A = Eigen::Matrix4d::Identity() - M;
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(A);
    if (m.lambda <= 1e-15 || lu.rank() < 4 || lu.rcond() < 1e-13) return std::nullopt;
    return Eigen::Vector4d(lu.solve(m.D * m.Svec));
}

}  // namespace

std::vector<TrajectoryPoint> trajectory(const ObservableVector& x0, std::size_t n_cycles, const AffineMapPair& m) {
    const Eigen::Matrix4d M = m.D * m.J;
    const Eigen::Vector4d DS = m.D * m.Svec;
    const auto star = fixed_point(m);
    std::vector<TrajectoryPoint> out;
    out.reserve(n_cycles + 1);
    Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
    Eigen::Vector4d partial = Eigen::Vector4d::Zero();  // sum_{r<n} M^{n-r-1} DS
    for (std::size_t n = 0; n <= n_cycles; ++n) {
        Eigen::Vector4d x;
        if (star)
            x = power * (x0.vec() - *star) + *star;
        else
            x = power * x0.vec() + partial;
        out.push_back({ObservableVector::from(x), ObservableVector::from(m.J * x + m.Svec)});
        partial = M * partial + DS;
        power = M * power;
    }
    return out;
}

SteadyState steady_state(const AffineMapPair& m) {
    const auto star = fixed_point(m);
    if (!star) throw SingularityError("I - DJ is singular: no unique steady state without dissipation (lambda = 0)");
    return {ObservableVector::from(*star), ObservableVector::from(m.J * *star + m.Svec)};
}

double relaxation_rate(const AffineMapPair& m) {
    const Eigen::Matrix4d M = m.D * m.J;
    return Eigen::EigenSolver<Eigen::Matrix4d>(M, false).eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

double closed_form(const AnalyticParams& a, double prefactor, double c, double s) {
    const double l = a.lambda;
    const double numerator =
        prefactor * (2.0 - l) * l * (a.f_C - a.f_H) * (a.raw.omega1 - a.raw.omega2);
    const double denominator = l * l + 2.0 * (1.0 + a.eta) * (1.0 - l) -
                               2.0 * c * (1.0 - l) * (1.0 - (a.eta_tan2 + a.eta_sec2)) +
                               4.0 * s * (1.0 - l) * a.xi_tan;
    if (numerator == 0.0) return 0.0;
    return numerator / denominator;
}

}  // namespace

double work_closed_form(const AnalyticParams& a) { return closed_form(a, a.eta, a.rot_cos, a.rot_sin); }

double work_closed_form_printed(const AnalyticParams& a) {
    return closed_form(a, 2.0 * a.eta, std::sqrt(a.p), std::sqrt(1.0 - a.p));
}

Thermo thermo_from_states(const ObservableVector& x, const ObservableVector& xt, const ObservableVector& xn,
                          const AnalyticParams& a) {
    const double w1 = a.raw.omega1, w2 = a.raw.omega2;
    return {0.5 * w1 * (xt.Z1 - x.Z1), 0.5 * w2 * (xt.Z2 - x.Z2),
            -0.5 * (w1 * (xn.Z1 - xt.Z1) + w2 * (xn.Z2 - xt.Z2))};
}

ObservableVector extract_observables(const DensityMatrix& rho) {
    const auto& layout = rho.layout();
    if (layout.size() != 2 || layout[0].dim != 2 || layout[1].dim != 2)
        throw LayoutError("extract_observables: expected two qubits, got " + layout.describe());
    const Matrix sp = qubit::sigma_plus(), sm = qubit::sigma_minus(), id = qubit::identity();
    const Matrix& r = rho.matrix();
    const Matrix pm = kron(sp, sm), mp = kron(sm, sp);
    const Complex a = Complex(0.0, 1.0) * (pm - mp).cwiseProduct(r.transpose()).sum();
    return {expectation(kron(qubit::sigma_z(), id), r), expectation(kron(id, qubit::sigma_z()), r),
            expectation(pm + mp, r), a.real()};
}

}  // namespace strobe::analytic
