#include <doctest.h>

#include <cmath>

#include "qsg/catalog.hpp"
#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"
#include "qsg/operators.hpp"

using namespace qsg;

namespace {

const Complex kOne{1.0, 0.0};
const Complex kZero{0.0, 0.0};

FiniteOperator op(CMatrix m) { return make_operator(std::move(m)); }

Subspace span_of(std::initializer_list<std::size_t> axes, std::size_t n) {
    CMatrix basis(n, axes.size());
    std::size_t j = 0;
    for (const std::size_t a : axes) basis(a, j++) = kOne;
    return Subspace(n, std::move(basis));
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("kernel of the identity is trivial") {
    CHECK(kernel(op(CMatrix::identity(2))).dim() == 0);
}

TEST_CASE("kernel of the Jordan block is the first axis") {
    const FiniteOperator t = op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}}));
    const Subspace k = kernel(t);
    REQUIRE(k.dim() == 1);
    CHECK(subspace_contained(k, span_of({0}, 2), 1e-10).contained);
}

TEST_CASE("kernel of diag(0, 1, 2) is the first axis") {
    const std::vector<Complex> d{kZero, kOne, Complex{2.0, 0.0}};
    const Subspace k = kernel(op(CMatrix::diagonal(d)));
    REQUIRE(k.dim() == 1);
    CHECK(subspace_contained(k, span_of({0}, 3), 1e-10).contained);
}

TEST_CASE("kernel of the zero matrix is the full space") {
    CHECK(kernel(op(CMatrix::zero(3, 3))).dim() == 3);
}

TEST_CASE("range of the identity is everything; of the zero matrix nothing") {
    CHECK(range(op(CMatrix::identity(2))).dim() == 2);
    CHECK(range(op(CMatrix::zero(3, 3))).dim() == 0);
}

TEST_CASE("range of the Jordan block is the first axis") {
    const Subspace r = range(op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}})));
    REQUIRE(r.dim() == 1);
    CHECK(subspace_contained(r, span_of({0}, 2), 1e-10).contained);
}

TEST_CASE("hyper-range of an invertible operator is the full space") {
    const CMatrix a = random_general_matrix(4, 7) + CMatrix::identity(4) * Complex{3.0, 0.0};
    CHECK(hyper_range(op(a)).dim() == 4);
}

TEST_CASE("hyper-range of a nilpotent 3x3 Jordan block is trivial") {
    const CMatrix j3 = CMatrix::from_rows(
        {{kZero, kOne, kZero}, {kZero, kZero, kOne}, {kZero, kZero, kZero}});
    CHECK(hyper_range(op(j3)).dim() == 0);
}

TEST_CASE("hyper-range of diag(0, 1) is the second axis") {
    const std::vector<Complex> d{kZero, kOne};
    const Subspace h = hyper_range(op(CMatrix::diagonal(d)));
    REQUIRE(h.dim() == 1);
    CHECK(subspace_contained(h, span_of({1}, 2), 1e-10).contained);
}

TEST_CASE("semi-regularity of elementary operators") {
    CHECK(is_semi_regular(op(CMatrix::identity(2))).semi_regular);
    CHECK_FALSE(is_semi_regular(op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}})))
                    .semi_regular);
    CHECK_FALSE(is_semi_regular(op(CMatrix::zero(2, 2))).semi_regular);
}

TEST_CASE("Fredholm data on the examples") {
    const FredholmData f1 = fredholm_data(op(CMatrix::identity(3)));
    CHECK(f1.alpha == 0);
    CHECK(f1.beta == 0);
    CHECK(f1.is_fredholm);

    const std::vector<Complex> d{kZero, kZero, kOne};
    const FredholmData f2 = fredholm_data(op(CMatrix::diagonal(d)));
    CHECK(f2.alpha == 2);
    CHECK(f2.beta == 2);

    const FredholmData f3 =
        fredholm_data(op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}})));
    CHECK(f3.alpha == 1);
    CHECK(f3.beta == 1);
}

TEST_CASE("rank-nullity holds for every operator") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t n = 2 + seed % 6;
        CMatrix a = random_general_matrix(n, seed);
        if (seed % 2 == 0) {
            for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = kZero;  // force rank loss
        }
        const FiniteOperator t = op(a);
        CHECK(kernel(t).dim() + range(t).dim() == n);
        const FredholmData f = fredholm_data(t);
        CHECK(f.alpha == f.beta);
    }
}

TEST_CASE("subspace containment defects") {
    const Subspace zero2 = Subspace::zero(2);
    CHECK(subspace_contained(zero2, Subspace::zero(2), 1e-10).contained);
    CHECK(subspace_contained(zero2, Subspace::zero(2), 1e-10).defect == 0.0);

    CHECK(subspace_contained(span_of({0}, 3), span_of({0, 1}, 3), 1e-10).contained);

    const ContainmentResult c = subspace_contained(span_of({0}, 2), span_of({1}, 2), 1e-10);
    CHECK_FALSE(c.contained);
    CHECK(c.defect == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("subspace containment rejects mismatched ambient dimensions") {
    CHECK_THROWS_AS(subspace_contained(Subspace::zero(2), Subspace::zero(3), 1e-10),
                    DimensionError);
}

TEST_CASE("subspaces require orthonormal bases") {
    CMatrix skewed(2, 1);
    skewed(0, 0) = kOne;
    skewed(1, 0) = kOne;  // norm sqrt(2)
    CHECK_THROWS_AS(Subspace(2, skewed), DomainError);
    CHECK_THROWS_AS(Subspace(3, CMatrix::identity(2)), DimensionError);
}

TEST_CASE("quotient of diag(1, 2) by the first axis is [2]") {
    const FiniteOperator t =
        op(CMatrix::from_rows({{kOne, kZero}, {kZero, Complex{2.0, 0.0}}}));
    const FiniteOperator q = quotient_operator(t, span_of({0}, 2));
    REQUIRE(q.dim() == 1);
    CHECK(std::abs(q.matrix(0, 0) - Complex{2.0, 0.0}) < 1e-12);
}

TEST_CASE("quotient of the Jordan block by its kernel is [0]") {
    const FiniteOperator t = op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}}));
    const FiniteOperator q = quotient_operator(t, span_of({0}, 2));
    REQUIRE(q.dim() == 1);
    CHECK(std::abs(q.matrix(0, 0)) < 1e-12);
}

TEST_CASE("quotient rejects non-invariant subspaces") {
    // T (e1 + e2) = e1 + 2 e2 leaves the diagonal span of e1 + e2
    const FiniteOperator t =
        op(CMatrix::from_rows({{kOne, kZero}, {kZero, Complex{2.0, 0.0}}}));
    const double inv = 1.0 / std::sqrt(2.0);
    CMatrix basis(2, 1);
    basis(0, 0) = Complex{inv, 0.0};
    basis(1, 0) = Complex{inv, 0.0};
    CHECK_THROWS_AS(quotient_operator(t, Subspace(2, basis)), InvarianceError);
}

TEST_CASE("bounded-below tests") {
    const BoundedBelowResult b1 = is_bounded_below(op(CMatrix::identity(2)));
    CHECK(b1.bounded_below);
    CHECK(b1.sigma_min == doctest::Approx(1.0).epsilon(1e-12));

    const BoundedBelowResult b2 =
        is_bounded_below(op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}})));
    CHECK_FALSE(b2.bounded_below);
    CHECK(b2.sigma_min == doctest::Approx(0.0).epsilon(1e-14));

    const std::vector<Complex> d{Complex{2.0, 0.0}, Complex{3.0, 0.0}};
    const BoundedBelowResult b3 = is_bounded_below(op(CMatrix::diagonal(d)));
    CHECK(b3.bounded_below);
    CHECK(b3.sigma_min == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_FALSE(is_bounded_below(op(CMatrix::zero(2, 2))).bounded_below);
    CHECK(is_bounded_below(op(CMatrix(0, 0))).bounded_below);  // vacuous on the zero space
}

TEST_CASE("hyper-range is invariant under the operator") {
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        const std::size_t n = 3 + seed % 4;
        CMatrix a = random_general_matrix(n, seed);
        if (seed % 2 == 0) {
            for (std::size_t i = 0; i < n; ++i) a(i, 0) = kZero;
        }
        const FiniteOperator t = op(a);
        const Subspace h = hyper_range(t);
        if (h.dim() == 0) continue;
        CMatrix image = t.matrix * h.basis();
        image -= h.basis() * (h.basis().adjoint() * image);
        CHECK(spectral_norm(image) <= 10.0 * t.tol.rank_tol * spectral_norm(t.matrix));
    }
}

TEST_CASE("semi-regular operators contain their kernel in the hyper-range") {
    for (std::uint64_t seed = 21; seed <= 25; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const FiniteOperator t = op(random_general_matrix(n, seed));
        const SemiRegularity sr = is_semi_regular(t);
        if (sr.semi_regular) {
            CHECK(subspace_contained(kernel(t), hyper_range(t), t.tol.rank_tol).contained);
        }
    }
}

TEST_CASE("range-of-power dimensions are stationary past the stabilization index") {
    // closedness of the hyper-range has this computable shadow in finite
    // dimension: once dim range(T^k) stops dropping it never moves again
    const CMatrix j3 = CMatrix::from_rows(
        {{kZero, kOne, kZero}, {kZero, kZero, kOne}, {kZero, kZero, kZero}});
    for (const CMatrix& m : {j3, random_general_matrix(4, 77), CMatrix::zero(3, 3)}) {
        const FiniteOperator t = op(m);
        const std::size_t n = t.dim();
        std::vector<std::size_t> dims;
        for (std::size_t k = 1; k <= 2 * n; ++k) {
            // rank decisions on explicit powers get a roundoff-scaled floor
            const double floor = 4.0 * static_cast<double>(k * n) * 2.2e-16 *
                                 std::pow(spectral_norm(m), static_cast<double>(k));
            dims.push_back(range(FiniteOperator{matrix_power(m, static_cast<unsigned>(k)), t.tol},
                                 floor)
                               .dim());
        }
        std::size_t stable_from = 0;
        for (std::size_t i = 1; i < dims.size(); ++i) {
            if (dims[i] != dims[i - 1]) stable_from = i;
        }
        CHECK(stable_from < 2 * n);
        const std::size_t hyper_dim = hyper_range(t).dim();
        CHECK(dims.back() == hyper_dim);
    }
}

TEST_CASE("quotient is bounded below exactly when its kernel is trivial") {
    for (std::uint64_t seed = 31; seed <= 35; ++seed) {
        const std::size_t n = 3 + seed % 3;
        const FiniteOperator t = op(random_general_matrix(n, seed));
        const Subspace h = hyper_range(t);
        const FiniteOperator q = quotient_operator(t, h);
        const BoundedBelowResult bb = is_bounded_below(q);
        CHECK(bb.bounded_below == (kernel(q).dim() == 0));
    }
}

}  // TEST_SUITE
