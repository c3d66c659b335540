#pragma once

#include <cstddef>

#include "qsg/cmatrix.hpp"
#include "qsg/tolerance.hpp"

namespace qsg {

// A square matrix together with the tolerance context that governs every
// rank and matching decision made about it.
struct FiniteOperator {
    CMatrix matrix;
    ToleranceContext tol;

    std::size_t dim() const noexcept { return matrix.rows(); }
};

FiniteOperator make_operator(CMatrix m, ToleranceContext tol = {});

// A linear subspace of C^n carried by an orthonormal basis (n x k, k >= 0).
class Subspace {
public:
    Subspace(std::size_t ambient_dim, CMatrix basis);

    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const CMatrix& basis() const noexcept { return basis_; }

    // Orthonormal basis of the orthogonal complement (n x (n - k)).
    Subspace orthogonal_complement() const;

private:
    std::size_t ambient_dim_;
    CMatrix basis_;
};

struct FredholmData {
    std::size_t alpha = 0;  // dim kernel
    std::size_t beta = 0;   // codim range
    bool is_fredholm = true;
};

struct ContainmentResult {
    bool contained = false;
    double defect = 0.0;  // ||(I - P_V) B_U|| in the spectral norm
};

struct SemiRegularity {
    bool semi_regular = false;
    double defect = 0.0;  // containment defect of the kernel in the hyper-range
};

struct BoundedBelowResult {
    bool bounded_below = false;
    double sigma_min = 0.0;
};

// Null space: right singular vectors with singular value at or below the
// rank cutoff. The cutoff is rank_tol * sigma_max (absolute rank_tol when
// sigma_max = 0), raised to sigma_floor when the caller knows the matrix
// carries accumulated roundoff (powers, products). sigma_max = 0 yields the
// full space.
Subspace kernel(const FiniteOperator& t, double sigma_floor = 0.0);

// Column space: left singular vectors with singular value above the cutoff.
Subspace range(const FiniteOperator& t, double sigma_floor = 0.0);

// Intersection of the ranges of all powers; computed as range-of-power with
// re-orthonormalization at each step, stopping when the dimension
// stabilizes (at or before the ambient dimension).
Subspace hyper_range(const FiniteOperator& t, double sigma_floor = 0.0);

// Semi-regularity: ranges are always closed here, so the test reduces to
// kernel(T) contained in hyper_range(T) within rank_tol.
SemiRegularity is_semi_regular(const FiniteOperator& t, double sigma_floor = 0.0);

FredholmData fredholm_data(const FiniteOperator& t);

// defect = ||(I - P_v) B_u||; zero-dimensional u is contained in anything.
// Throws DimensionError on ambient mismatch.
ContainmentResult subspace_contained(const Subspace& u, const Subspace& v, double tol);

// Compression Q^* T Q onto the orthogonal complement of the invariant
// subspace m; represents the induced map on the quotient. Throws
// InvarianceError when ||(I - P_m) T B_m|| > rank_tol * ||T||.
FiniteOperator quotient_operator(const FiniteOperator& t, const Subspace& m);

// Smallest singular value test; the zero operator is not bounded below.
// The operator on the zero space (dim 0) is vacuously bounded below.
BoundedBelowResult is_bounded_below(const FiniteOperator& t, double sigma_floor = 0.0);

}  // namespace qsg
