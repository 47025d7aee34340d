// qubit.hpp - single-qubit operators.
//
// Basis convention: |0> is the excited state (sigma_z = +1), |1> the ground
// state. sigma_plus raises the energy of H = (omega/2) sigma_z.

#pragma once

#include "strobe/hilbert.hpp"

#include <string>

namespace strobe::qubit {

Matrix identity();
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |0><1|
Matrix sigma_minus();  // |1><0|

// (omega/2) sigma_z on a single factor named `label`.
HermitianOperator hamiltonian(const std::string& label, double omega);

// Excited-state population (e^{omega/T} + 1)^{-1}.
double fermi_dirac(double omega, double temperature);

}  // namespace strobe::qubit
