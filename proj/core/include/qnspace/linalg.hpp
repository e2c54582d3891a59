#pragma once

#include <complex>
#include <vector>

#include "qnspace/cpoly.hpp"

namespace qns {

/// Solves A·x = b by Gaussian elimination with partial pivoting.
/// SingularJacobian when no usable pivot remains.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

/// Coefficients of det(λI − A), leading coefficient first (monic, length
/// n+1), by the Faddeev–LeVerrier recurrence.
std::vector<double> characteristic_polynomial(const Matrix& a);

/// All complex roots of a real polynomial (coefficients leading-first) by
/// Durand–Kerner simultaneous iteration. Intended for the small, well
/// separated spectra arising from Jacobians of test systems.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Eigenvalues of a real square matrix, sorted by (re, im). Closed form for
/// n ≤ 2; characteristic polynomial plus root iteration above that.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

}  // namespace qns
