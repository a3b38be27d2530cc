#pragma once

#include <cstdint>
#include <vector>

#include "iwasawa/matrix.hpp"

namespace iwasawa {

/// Default relative residual tolerance.
inline constexpr double kResidualTol = 1e-10;
/// Default relative tolerance for the Hermitian precondition.
inline constexpr double kHermitianTol = 1e-12;

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conj(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);

/// ||m - m*||_F.
double hermitian_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// [a, b] = ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||u* u - 1||_F.
double unitarity_defect(const ComplexMatrix& u);

struct HermitianEig {
    std::vector<double> values;  // non-increasing
    ComplexMatrix vectors;       // unitary, columns match values
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// Requires ||h - h*||_F <= tol (1 + ||h||_F). The result is accepted only if
/// ||h V - V diag||_F <= 1e-12 ||h||_F; otherwise ConvergenceFailure.
HermitianEig hermitian_eig(const ComplexMatrix& h, double tol = kHermitianTol);

/// Positive square root of a Hermitian positive definite matrix.
ComplexMatrix positive_sqrt(const ComplexMatrix& h);

/// Scaling and squaring with a diagonal Pade approximant of degree 3..13
/// (Higham, SIAM J. Matrix Anal. Appl. 26, 2005).
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Singular values, non-increasing.
std::vector<double> singular_values(const ComplexMatrix& m);

double schatten_norm(const ComplexMatrix& m, SchattenP p);

/// Largest singular value by power iteration on m* m, stopped when successive
/// estimates agree to rel_tol. Used where a dense SVD is too expensive.
double operator_norm_power(const ComplexMatrix& m, double rel_tol = 1e-6, std::size_t max_iter = 20000);

/// Solves a x = b by LU with partial pivoting. Throws Singular when a pivot
/// falls under ||a||_F * 1e-13.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/// n x n matrix of independent standard complex Gaussians drawn from Rng(seed),
/// row-major order.
ComplexMatrix random_ginibre(std::size_t n, std::uint64_t seed);

/// Haar-like unitary: Q factor (positive-diagonal R) of a Ginibre draw.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace iwasawa
