#pragma once

#include <functional>
#include <vector>

#include "qsg/cmatrix.hpp"

namespace qsg {

// Right eigenpairs of a square matrix. values[k] pairs with column k of
// vectors; vectors have unit 2-norm. Eigenvalues carry algebraic
// multiplicity and are sorted by (real, imag).
struct Eigensystem {
    std::vector<Complex> values;
    CMatrix vectors;
};

// Full singular value decomposition a = u * diag(sigma) * v^*.
// u is m x m unitary, v is n x n unitary, sigma holds min(m, n) values
// sorted descending.
struct Svd {
    CMatrix u;
    std::vector<double> sigma;
    CMatrix v;
};

// Matrix exponential by scaling and squaring with diagonal Pade cores.
CMatrix expm(const CMatrix& m);

// Eigenvalues and unit right eigenvectors via Hessenberg reduction and
// shifted QR iteration with deflation. Iteration budget 100*n; on
// exhaustion throws NumericError carrying the residual achieved.
Eigensystem eig(const CMatrix& m);

// One-sided Jacobi SVD. Exact for the desk scale used here; the
// reconstruction error stays near machine precision.
Svd svd(const CMatrix& m);

// Entrywise adaptive composite Simpson quadrature of a matrix-valued map
// over [a, b], absolute tolerance tol per entry, recursion depth cap 24.
// A zero-length interval returns the zero matrix exactly.
CMatrix quad_operator(const std::function<CMatrix(double)>& f, double a, double b, double tol);

// Scalar counterpart of quad_operator.
double quad_scalar(const std::function<double(double)>& f, double lo, double hi, double tol);

// Largest / smallest singular value (spectral norm and its counterpart).
// Both return 0 for empty matrices.
double spectral_norm(const CMatrix& m);
double smallest_singular_value(const CMatrix& m);

// Solve a * x = b by LU with partial pivoting; a square.
CMatrix lu_solve(CMatrix a, CMatrix b);

}  // namespace qsg
