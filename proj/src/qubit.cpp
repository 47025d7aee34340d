#include "strobe/qubit.hpp"

#include "strobe/errors.hpp"

#include <cmath>

namespace strobe::qubit {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0),
         Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

HermitianOperator hamiltonian(const std::string& label, double omega) {
    return HermitianOperator(SpaceLayout{{label, 2}}, 0.5 * omega * sigma_z());
}

double fermi_dirac(double omega, double temperature) {
    if (!(temperature > 0.0)) throw ParameterError("fermi_dirac: temperature must be positive");
    if (std::isinf(temperature)) return 0.5;
    return 1.0 / (std::exp(omega / temperature) + 1.0);
}

}  // namespace strobe::qubit
