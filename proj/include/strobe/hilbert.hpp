// hilbert.hpp - dense operators and states on labeled tensor-product spaces.
//
// Every matrix lives on a SpaceLayout: an ordered list of named factors with
// their local dimensions. Kronecker products follow the declared order, with
// the last factor varying fastest in the composite index.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace strobe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Hermiticity and unit-trace checks on freshly built objects.
inline constexpr double kStructuralTol = 1e-12;
// Invariants after time evolution or channel application.
inline constexpr double kDynamicalTol = 1e-10;

struct Factor {
    std::string label;
    std::size_t dim{0};
};

class SpaceLayout {
public:
    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<Factor> factors);
    SpaceLayout(std::initializer_list<Factor> factors);

    std::size_t size() const noexcept { return factors_.size(); }
    bool empty() const noexcept { return factors_.empty(); }
    std::size_t total_dim() const noexcept { return total_dim_; }

    const Factor& operator[](std::size_t i) const { return factors_[i]; }
    const std::vector<Factor>& factors() const noexcept { return factors_; }
    std::vector<std::size_t> dims() const;
    std::vector<std::string> labels() const;

    std::optional<std::size_t> index_of(const std::string& label) const;
    bool contains(const std::string& label) const { return index_of(label).has_value(); }

    // Product of the dimensions of all factors after `factor`.
    std::size_t stride(std::size_t factor) const;

    // The factors whose labels appear in `keep`, in this layout's order.
    SpaceLayout restricted_to(const std::vector<std::string>& keep) const;

    std::string describe() const;

    friend bool operator==(const SpaceLayout& a, const SpaceLayout& b);

private:
    std::vector<Factor> factors_;
    std::size_t total_dim_{0};
};

bool operator==(const SpaceLayout& a, const SpaceLayout& b);

// Concatenate layouts; throws CompositionError on a repeated label.
SpaceLayout join(const SpaceLayout& a, const SpaceLayout& b);

class DensityMatrix;

class HermitianOperator {
public:
    HermitianOperator(SpaceLayout layout, Matrix matrix);

    static HermitianOperator zero(SpaceLayout layout);
    static HermitianOperator identity(SpaceLayout layout);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }

    // tr{O rho}; the imaginary part vanishes for Hermitian arguments.
    double expectation(const DensityMatrix& rho) const;

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator operator*(double scale) const;

private:
    SpaceLayout layout_;
    Matrix matrix_;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

class DensityMatrix {
public:
    // Checks Hermiticity, unit trace and positivity.
    DensityMatrix(SpaceLayout layout, Matrix matrix);

    // For channel outputs whose validity follows from construction: the
    // matrix is Hermitian-symmetrized and only its shape is checked.
    static DensityMatrix assume_valid(SpaceLayout layout, Matrix matrix);

    static DensityMatrix maximally_mixed(SpaceLayout layout);
    static DensityMatrix pure(SpaceLayout layout, const ComplexVector& psi);
    static DensityMatrix basis_state(SpaceLayout layout, std::size_t index);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }

    RealVector eigenvalues() const;

private:
    struct Unchecked {};
    DensityMatrix(SpaceLayout layout, Matrix matrix, Unchecked);

    SpaceLayout layout_;
    Matrix matrix_;
};

// ---------------------------------------------------------------- helpers

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& m);
double hermiticity_defect(const Matrix& m);
// Re tr{op * rho}.
double expectation(const Matrix& op, const Matrix& rho);

// Trace norm of a Hermitian matrix, halved.
double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// ------------------------------------------------------------- composition

DensityMatrix tensor_compose(std::span<const DensityMatrix> states);
HermitianOperator tensor_compose(std::span<const HermitianOperator> ops);
DensityMatrix tensor_compose(const DensityMatrix& a, const DensityMatrix& b);
HermitianOperator tensor_compose(const HermitianOperator& a, const HermitianOperator& b);

// Lift an operator on a subset of factors into `target` by tensoring with
// identities. The subset need not be contiguous.
Matrix embed(const Matrix& local, const SpaceLayout& local_layout, const SpaceLayout& target);
HermitianOperator embed(const HermitianOperator& local, const SpaceLayout& target);

// Reduced matrix on the factors named in `keep` (result in layout order).
Matrix partial_trace(const Matrix& m, const SpaceLayout& layout, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<std::string>& keep);

// (1 x .. x op x .. x 1) * x and x * (1 x .. x op x .. x 1) without forming the
// embedded operator. `op` acts on factor index `factor` of `layout`.
Matrix left_multiply_local(const SpaceLayout& layout, std::size_t factor, const Matrix& op, const Matrix& x);
Matrix right_multiply_local(const SpaceLayout& layout, std::size_t factor, const Matrix& op, const Matrix& x);

// ------------------------------------------------------ physics primitives

// Gibbs state exp(-H/T)/Z. T = +infinity gives I/d; T <= 0 throws.
DensityMatrix thermal_state(const HermitianOperator& h, double temperature);

// exp(-i H tau) from the eigendecomposition of H, cached for reuse.
class Propagator {
public:
    Propagator(const HermitianOperator& h, double tau);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const Matrix& unitary() const noexcept { return unitary_; }

    Matrix apply(const Matrix& rho) const;
    DensityMatrix apply(const DensityMatrix& rho) const;

private:
    SpaceLayout layout_;
    Matrix unitary_;
    Matrix unitary_adjoint_;
};

DensityMatrix evolve_unitary(const HermitianOperator& h, double tau, const DensityMatrix& rho);

// -tr{rho ln rho}; eigenvalues below 1e-14 count as zero.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& rho);

}  // namespace strobe
