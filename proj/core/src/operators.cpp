#include "qsg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"

namespace qsg {

FiniteOperator make_operator(CMatrix m, ToleranceContext tol) {
    require_square(m, "FiniteOperator");
    require_finite(m, "FiniteOperator");
    tol.validate();
    return FiniteOperator{std::move(m), tol};
}

Subspace::Subspace(std::size_t ambient_dim, CMatrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.cols() > 0 && basis_.rows() != ambient_dim_) {
        throw DimensionError("Subspace: basis rows do not match the ambient dimension");
    }
    if (basis_.cols() > ambient_dim_) {
        throw DimensionError("Subspace: more basis vectors than the ambient dimension");
    }
    if (basis_.cols() > 0) {
        CMatrix gram = basis_.adjoint() * basis_;
        gram -= CMatrix::identity(basis_.cols());
        if (gram.frobenius_norm() > 1e-10) {
            throw DomainError("Subspace: basis is not orthonormal");
        }
    } else {
        basis_ = CMatrix(ambient_dim_, 0);
    }
}

Subspace Subspace::zero(std::size_t ambient_dim) {
    return Subspace(ambient_dim, CMatrix(ambient_dim, 0));
}

Subspace Subspace::full(std::size_t ambient_dim) {
    return Subspace(ambient_dim, CMatrix::identity(ambient_dim));
}

Subspace Subspace::orthogonal_complement() const {
    const std::size_t n = ambient_dim_;
    const std::size_t k = dim();
    if (k == 0) return Subspace::full(n);
    if (k == n) return Subspace::zero(n);
    // Full left factor of the basis; columns past k span the complement.
    const Svd dec = svd(basis_);
    CMatrix comp(n, n - k);
    for (std::size_t j = k; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) comp(i, j - k) = dec.u(i, j);
    return Subspace(n, std::move(comp));
}

namespace {

double rank_cutoff(double sigma_max, double rank_tol, double sigma_floor) {
    const double rel = sigma_max == 0.0 ? rank_tol : rank_tol * sigma_max;
    return std::max(rel, sigma_floor);
}

}  // namespace

Subspace kernel(const FiniteOperator& t, double sigma_floor) {
    const std::size_t n = t.dim();
    if (n == 0) return Subspace::zero(0);
    const Svd dec = svd(t.matrix);
    const double cutoff = rank_cutoff(dec.sigma.front(), t.tol.rank_tol, sigma_floor);
    std::size_t rank = 0;
    while (rank < n && dec.sigma[rank] > cutoff) ++rank;
    CMatrix basis(n, n - rank);
    for (std::size_t j = rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j - rank) = dec.v(i, j);
    return Subspace(n, std::move(basis));
}

Subspace range(const FiniteOperator& t, double sigma_floor) {
    const std::size_t n = t.dim();
    if (n == 0) return Subspace::zero(0);
    const Svd dec = svd(t.matrix);
    const double cutoff = rank_cutoff(dec.sigma.front(), t.tol.rank_tol, sigma_floor);
    std::size_t rank = 0;
    while (rank < n && dec.sigma[rank] > cutoff) ++rank;
    CMatrix basis(n, rank);
    for (std::size_t j = 0; j < rank; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = dec.u(i, j);
    return Subspace(n, std::move(basis));
}

Subspace hyper_range(const FiniteOperator& t, double sigma_floor) {
    const std::size_t n = t.dim();
    if (n == 0) return Subspace::zero(0);

    const double scale = spectral_norm(t.matrix);
    // Iterated products of a numerically nilpotent operator collapse toward
    // the roundoff floor; the floor keeps the rank decision anchored to the
    // scale of the original operator.
    const double floor = std::max(sigma_floor, 4.0 * static_cast<double>(n) *
                                                   std::numeric_limits<double>::epsilon() * scale);

    Subspace cur = range(t, sigma_floor);
    for (std::size_t step = 1; step <= n && cur.dim() > 0; ++step) {
        // next = orthonormal basis of T * cur  (= range of T^{step+1})
        const CMatrix product = t.matrix * cur.basis();
        const Svd dec = svd(product);
        const double smax = dec.sigma.empty() ? 0.0 : dec.sigma.front();
        const double cutoff = rank_cutoff(smax, t.tol.rank_tol, floor);
        std::size_t rank = 0;
        while (rank < dec.sigma.size() && dec.sigma[rank] > cutoff) ++rank;
        CMatrix basis(n, rank);
        for (std::size_t j = 0; j < rank; ++j)
            for (std::size_t i = 0; i < n; ++i) basis(i, j) = dec.u(i, j);
        Subspace next(n, std::move(basis));
        if (next.dim() == cur.dim()) return cur;
        cur = std::move(next);
    }
    return cur;
}

SemiRegularity is_semi_regular(const FiniteOperator& t, double sigma_floor) {
    const Subspace k = kernel(t, sigma_floor);
    const Subspace h = hyper_range(t, sigma_floor);
    const ContainmentResult c = subspace_contained(k, h, t.tol.rank_tol);
    return SemiRegularity{c.contained, c.defect};
}

FredholmData fredholm_data(const FiniteOperator& t) {
    const std::size_t n = t.dim();
    const std::size_t alpha = kernel(t).dim();
    const std::size_t rank = range(t).dim();
    return FredholmData{alpha, n - rank, true};
}

ContainmentResult subspace_contained(const Subspace& u, const Subspace& v, double tol) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw DimensionError("subspace_contained: ambient dimensions differ");
    }
    if (u.dim() == 0) return ContainmentResult{true, 0.0};
    CMatrix residual = u.basis();
    if (v.dim() > 0) {
        residual -= v.basis() * (v.basis().adjoint() * u.basis());
    }
    const double defect = spectral_norm(residual);
    return ContainmentResult{defect <= tol, defect};
}

FiniteOperator quotient_operator(const FiniteOperator& t, const Subspace& m) {
    if (m.ambient_dim() != t.dim()) {
        throw DimensionError("quotient_operator: subspace ambient dimension mismatch");
    }
    const double tnorm = spectral_norm(t.matrix);
    if (m.dim() > 0) {
        CMatrix image = t.matrix * m.basis();
        image -= m.basis() * (m.basis().adjoint() * image);
        const double defect = spectral_norm(image);
        if (defect > t.tol.rank_tol * std::max(tnorm, 1e-300)) {
            throw InvarianceError(
                "quotient_operator: subspace is not invariant (defect " +
                    std::to_string(defect) + ")",
                defect);
        }
    }
    const Subspace comp = m.orthogonal_complement();
    CMatrix compressed = comp.basis().adjoint() * (t.matrix * comp.basis());
    return FiniteOperator{std::move(compressed), t.tol};
}

BoundedBelowResult is_bounded_below(const FiniteOperator& t, double sigma_floor) {
    if (t.dim() == 0) {
        return BoundedBelowResult{true, std::numeric_limits<double>::infinity()};
    }
    const Svd dec = svd(t.matrix);
    const double smax = dec.sigma.front();
    const double smin = dec.sigma.back();
    return BoundedBelowResult{smin > std::max(t.tol.rank_tol * smax, sigma_floor), smin};
}

}  // namespace qsg
