#include "strobe/hilbert.hpp"

#include "strobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace strobe {

namespace {

constexpr double kEntropyCutoff = 1e-14;
constexpr double kPositivityTol = 1e-10;

using Index = Eigen::Index;

Index as_index(std::size_t n) { return static_cast<Index>(n); }

void require_square(const SpaceLayout& layout, const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() != as_index(layout.total_dim())) {
        std::ostringstream os;
        os << who << ": matrix is " << m.rows() << "x" << m.cols() << " but layout " << layout.describe()
           << " has dimension " << layout.total_dim();
        throw LayoutError(os.str());
    }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Digits of a composite index, most significant factor first.
std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------ SpaceLayout

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw LayoutError("SpaceLayout: at least one factor required");
    std::set<std::string> seen;
    total_dim_ = 1;
    for (const auto& f : factors_) {
        if (f.dim == 0) throw LayoutError("SpaceLayout: factor '" + f.label + "' has zero dimension");
        if (!seen.insert(f.label).second) throw CompositionError("SpaceLayout: duplicate label '" + f.label + "'");
        total_dim_ *= f.dim;
    }
}

SpaceLayout::SpaceLayout(std::initializer_list<Factor> factors) : SpaceLayout(std::vector<Factor>(factors)) {}

std::vector<std::size_t> SpaceLayout::dims() const {
    std::vector<std::size_t> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.dim);
    return out;
}

std::vector<std::string> SpaceLayout::labels() const {
    std::vector<std::string> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.label);
    return out;
}

std::optional<std::size_t> SpaceLayout::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label == label) return i;
    }
    return std::nullopt;
}

std::size_t SpaceLayout::stride(std::size_t factor) const {
    std::size_t s = 1;
    for (std::size_t k = factor + 1; k < factors_.size(); ++k) s *= factors_[k].dim;
    return s;
}

SpaceLayout SpaceLayout::restricted_to(const std::vector<std::string>& keep) const {
    if (keep.empty()) throw LayoutError("restricted_to: empty label set");
    for (const auto& label : keep) {
        if (!contains(label)) throw LayoutError("unknown label '" + label + "' in layout " + describe());
    }
    std::vector<Factor> kept;
    for (const auto& f : factors_) {
        if (std::find(keep.begin(), keep.end(), f.label) != keep.end()) kept.push_back(f);
    }
    return SpaceLayout(std::move(kept));
}

std::string SpaceLayout::describe() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << ", ";
        os << factors_[i].label << ":" << factors_[i].dim;
    }
    os << "]";
    return os.str();
}

bool operator==(const SpaceLayout& a, const SpaceLayout& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i) {
        if (a.factors_[i].label != b.factors_[i].label || a.factors_[i].dim != b.factors_[i].dim) return false;
    }
    return true;
}

SpaceLayout join(const SpaceLayout& a, const SpaceLayout& b) {
    std::vector<Factor> all = a.factors();
    for (const auto& f : b.factors()) {
        if (a.contains(f.label)) throw CompositionError("tensor_compose: label '" + f.label + "' appears twice");
        all.push_back(f);
    }
    return SpaceLayout(std::move(all));
}

// ------------------------------------------------------ HermitianOperator

HermitianOperator::HermitianOperator(SpaceLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    require_square(layout_, matrix_, "HermitianOperator");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kStructuralTol) {
        std::ostringstream os;
        os << "HermitianOperator: matrix is not Hermitian (defect " << defect << ")";
        throw ParameterError(os.str());
    }
    matrix_ = hermitize(matrix_);
}

HermitianOperator HermitianOperator::zero(SpaceLayout layout) {
    const auto d = as_index(layout.total_dim());
    return HermitianOperator(std::move(layout), Matrix::Zero(d, d));
}

HermitianOperator HermitianOperator::identity(SpaceLayout layout) {
    const auto d = as_index(layout.total_dim());
    return HermitianOperator(std::move(layout), Matrix::Identity(d, d));
}

double HermitianOperator::expectation(const DensityMatrix& rho) const {
    if (!(rho.layout() == layout_)) {
        throw LayoutError("expectation: operator on " + layout_.describe() + ", state on " +
                          rho.layout().describe());
    }
    return strobe::expectation(matrix_, rho.matrix());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    if (!(other.layout_ == layout_)) throw LayoutError("operator sum on different layouts");
    return HermitianOperator(layout_, matrix_ + other.matrix_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    if (!(other.layout_ == layout_)) throw LayoutError("operator difference on different layouts");
    return HermitianOperator(layout_, matrix_ - other.matrix_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(layout_, matrix_ * scale);
}

// ---------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(SpaceLayout layout, Matrix matrix, Unchecked)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    require_square(layout_, matrix_, "DensityMatrix");
    matrix_ = hermitize(matrix_);
}

DensityMatrix::DensityMatrix(SpaceLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    require_square(layout_, matrix_, "DensityMatrix");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kStructuralTol) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian (defect " << defect << ")";
        throw ParameterError(os.str());
    }
    matrix_ = hermitize(matrix_);
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kStructuralTol) {
        std::ostringstream os;
        os.precision(17);
        os << "DensityMatrix: trace is " << tr;
        throw ParameterError(os.str());
    }
    const double min_eig = eigenvalues().minCoeff();
    if (min_eig < -kPositivityTol) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << min_eig;
        throw ParameterError(os.str());
    }
}

DensityMatrix DensityMatrix::assume_valid(SpaceLayout layout, Matrix matrix) {
    return DensityMatrix(std::move(layout), std::move(matrix), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(SpaceLayout layout) {
    const auto d = as_index(layout.total_dim());
    return DensityMatrix(std::move(layout), Matrix::Identity(d, d) / static_cast<double>(d), Unchecked{});
}

DensityMatrix DensityMatrix::pure(SpaceLayout layout, const ComplexVector& psi) {
    if (psi.size() != as_index(layout.total_dim())) throw LayoutError("pure: vector length does not match layout");
    const double norm = psi.norm();
    if (norm == 0.0) throw ParameterError("pure: zero vector");
    const ComplexVector v = psi / norm;
    return DensityMatrix(std::move(layout), v * v.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::basis_state(SpaceLayout layout, std::size_t index) {
    const auto d = layout.total_dim();
    if (index >= d) throw LayoutError("basis_state: index out of range");
    Matrix m = Matrix::Zero(as_index(d), as_index(d));
    m(as_index(index), as_index(index)) = 1.0;
    return DensityMatrix(std::move(layout), std::move(m), Unchecked{});
}

RealVector DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// ---------------------------------------------------------------- helpers

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

double expectation(const Matrix& op, const Matrix& rho) {
    // tr{op rho} = sum_ij op_ij rho_ji
    return (op.array() * rho.transpose().array()).sum().real();
}

double trace_distance(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (!(a.layout() == b.layout())) throw LayoutError("trace_distance: layouts differ");
    return trace_distance(a.matrix(), b.matrix());
}

// ------------------------------------------------------------ composition

DensityMatrix tensor_compose(std::span<const DensityMatrix> states) {
    if (states.empty()) throw LayoutError("tensor_compose: nothing to compose");
    SpaceLayout layout = states.front().layout();
    Matrix m = states.front().matrix();
    for (std::size_t k = 1; k < states.size(); ++k) {
        layout = join(layout, states[k].layout());
        m = kron(m, states[k].matrix());
    }
    return DensityMatrix::assume_valid(std::move(layout), std::move(m));
}

HermitianOperator tensor_compose(std::span<const HermitianOperator> ops) {
    if (ops.empty()) throw LayoutError("tensor_compose: nothing to compose");
    SpaceLayout layout = ops.front().layout();
    Matrix m = ops.front().matrix();
    for (std::size_t k = 1; k < ops.size(); ++k) {
        layout = join(layout, ops[k].layout());
        m = kron(m, ops[k].matrix());
    }
    return HermitianOperator(std::move(layout), std::move(m));
}

DensityMatrix tensor_compose(const DensityMatrix& a, const DensityMatrix& b) {
    const std::vector<DensityMatrix> both{a, b};
    return tensor_compose(std::span<const DensityMatrix>(both));
}

HermitianOperator tensor_compose(const HermitianOperator& a, const HermitianOperator& b) {
    const std::vector<HermitianOperator> both{a, b};
    return tensor_compose(std::span<const HermitianOperator>(both));
}

Matrix embed(const Matrix& local, const SpaceLayout& local_layout, const SpaceLayout& target) {
    require_square(local_layout, local, "embed");
    // Position of each local factor inside the target.
    std::vector<std::size_t> where;
    for (const auto& f : local_layout.factors()) {
        const auto idx = target.index_of(f.label);
        if (!idx) throw LayoutError("embed: label '" + f.label + "' missing from " + target.describe());
        if (target[*idx].dim != f.dim) throw LayoutError("embed: dimension mismatch for '" + f.label + "'");
        where.push_back(*idx);
    }
    const auto dims = target.dims();
    const std::size_t d = target.total_dim();
    std::vector<bool> is_local(dims.size(), false);
    for (auto w : where) is_local[w] = true;

    // Split each composite index into (local index, environment index).
    std::vector<std::size_t> local_idx(d), env_idx(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto dig = digits_of(i, dims);
        std::size_t li = 0;
        for (std::size_t k = 0; k < where.size(); ++k) li = li * dims[where[k]] + dig[where[k]];
        std::size_t ei = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!is_local[k]) ei = ei * dims[k] + dig[k];
        }
        local_idx[i] = li;
        env_idx[i] = ei;
    }
    Matrix out = Matrix::Zero(as_index(d), as_index(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (env_idx[i] == env_idx[j]) out(as_index(i), as_index(j)) = local(as_index(local_idx[i]), as_index(local_idx[j]));
        }
    }
    return out;
}

HermitianOperator embed(const HermitianOperator& local, const SpaceLayout& target) {
    return HermitianOperator(target, embed(local.matrix(), local.layout(), target));
}

Matrix partial_trace(const Matrix& m, const SpaceLayout& layout, const std::vector<std::string>& keep) {
    require_square(layout, m, "partial_trace");
    const SpaceLayout kept = layout.restricted_to(keep);
    const auto dims = layout.dims();
    std::vector<bool> is_kept(dims.size(), false);
    for (std::size_t k = 0; k < dims.size(); ++k) is_kept[k] = kept.contains(layout[k].label);

    const std::size_t d = layout.total_dim();
    std::vector<std::size_t> kept_idx(d), traced_idx(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto dig = digits_of(i, dims);
        std::size_t ki = 0, ti = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (is_kept[k]) ki = ki * dims[k] + dig[k];
            else ti = ti * dims[k] + dig[k];
        }
        kept_idx[i] = ki;
        traced_idx[i] = ti;
    }
    const auto dk = as_index(kept.total_dim());
    Matrix out = Matrix::Zero(dk, dk);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (traced_idx[i] == traced_idx[j]) out(as_index(kept_idx[i]), as_index(kept_idx[j])) += m(as_index(i), as_index(j));
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<std::string>& keep) {
    const SpaceLayout kept = state.layout().restricted_to(keep);
    return DensityMatrix::assume_valid(kept, partial_trace(state.matrix(), state.layout(), keep));
}

Matrix left_multiply_local(const SpaceLayout& layout, std::size_t factor, const Matrix& op, const Matrix& x) {
    const auto dk = as_index(layout[factor].dim);
    if (op.rows() != dk || op.cols() != dk) throw LayoutError("left_multiply_local: operator dimension mismatch");
    const auto inner = as_index(layout.stride(factor));
    const auto d = as_index(layout.total_dim());
    const auto outer = d / (dk * inner);
    Matrix out = Matrix::Zero(d, x.cols());
    for (Index c = 0; c < x.cols(); ++c) {
        for (Index o = 0; o < outer; ++o) {
            const Index base = o * dk * inner;
            for (Index n = 0; n < inner; ++n) {
                for (Index i = 0; i < dk; ++i) {
                    Complex acc = 0.0;
                    for (Index j = 0; j < dk; ++j) acc += op(i, j) * x(base + j * inner + n, c);
                    out(base + i * inner + n, c) = acc;
                }
            }
        }
    }
    return out;
}

Matrix right_multiply_local(const SpaceLayout& layout, std::size_t factor, const Matrix& op, const Matrix& x) {
    const auto dk = as_index(layout[factor].dim);
    if (op.rows() != dk || op.cols() != dk) throw LayoutError("right_multiply_local: operator dimension mismatch");
    const auto inner = as_index(layout.stride(factor));
    const auto d = as_index(layout.total_dim());
    const auto outer = d / (dk * inner);
    Matrix out = Matrix::Zero(x.rows(), d);
    for (Index o = 0; o < outer; ++o) {
        const Index base = o * dk * inner;
        for (Index n = 0; n < inner; ++n) {
            for (Index i = 0; i < dk; ++i) {
                const Index col = base + i * inner + n;
                for (Index j = 0; j < dk; ++j) {
                    const Complex w = op(j, i);
                    if (w == Complex(0.0)) continue;
                    out.col(col) += w * x.col(base + j * inner + n);
                }
            }
        }
    }
    return out;
}

// ------------------------------------------------------ physics primitives

DensityMatrix thermal_state(const HermitianOperator& h, double temperature) {
    if (std::isnan(temperature) || temperature <= 0.0) {
        throw ParameterError("thermal_state: temperature must be positive (got " + std::to_string(temperature) + ")");
    }
    if (std::isinf(temperature)) return DensityMatrix::maximally_mixed(h.layout());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw ConsistencyError("thermal_state: eigensolver failed");
    const RealVector& e = solver.eigenvalues();
    RealVector w = (-(e.array() - e.minCoeff()) / temperature).exp();
    w /= w.sum();
    const Matrix& v = solver.eigenvectors();
    return DensityMatrix::assume_valid(h.layout(), v * w.cast<Complex>().asDiagonal() * v.adjoint());
}

Propagator::Propagator(const HermitianOperator& h, double tau) : layout_(h.layout()) {
    if (!std::isfinite(tau)) throw ParameterError("Propagator: duration must be finite");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw ConsistencyError("Propagator: eigensolver failed");
    const RealVector& e = solver.eigenvalues();
    ComplexVector phases(e.size());
    for (Index k = 0; k < e.size(); ++k) phases(k) = std::polar(1.0, -e(k) * tau);
    const Matrix& v = solver.eigenvectors();
    unitary_ = v * phases.asDiagonal() * v.adjoint();
    unitary_adjoint_ = unitary_.adjoint();
}

Matrix Propagator::apply(const Matrix& rho) const {
    if (rho.rows() != unitary_.rows() || rho.cols() != unitary_.cols()) {
        throw LayoutError("Propagator: state dimension mismatch");
    }
    Matrix out = unitary_ * rho * unitary_adjoint_;
    return hermitize(out);
}

DensityMatrix Propagator::apply(const DensityMatrix& rho) const {
    if (!(rho.layout() == layout_)) {
        throw LayoutError("evolve: Hamiltonian on " + layout_.describe() + ", state on " + rho.layout().describe());
    }
    return DensityMatrix::assume_valid(layout_, apply(rho.matrix()));
}

DensityMatrix evolve_unitary(const HermitianOperator& h, double tau, const DensityMatrix& rho) {
    if (!(rho.layout() == h.layout())) {
        throw LayoutError("evolve_unitary: Hamiltonian on " + h.layout().describe() + ", state on " +
                          rho.layout().describe());
    }
    return Propagator(h, tau).apply(rho);
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()(k);
        if (p > kEntropyCutoff) s -= p * std::log(p);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

}  // namespace strobe
