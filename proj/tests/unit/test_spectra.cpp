#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsg/catalog.hpp"
#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"
#include "qsg/spectra.hpp"

using namespace qsg;

namespace {

const Complex kOne{1.0, 0.0};
const Complex kZero{0.0, 0.0};

FiniteOperator op(CMatrix m) { return make_operator(std::move(m)); }

FiniteOperator jordan2() {
    return op(CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}}));
}

// exact closed form for the smallest singular value of [[l, -1], [0, l]]
double jordan_shift_sigma_min(double l) {
    const double tr = 2.0 * l * l + 1.0;
    const double det = l * l * l * l;
    return std::sqrt((tr - std::sqrt(tr * tr - 4.0 * det)) / 2.0);
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("ordinary spectrum of diag(1, 2)") {
    const std::vector<Complex> d{kOne, Complex{2.0, 0.0}};
    const SpectralSet s = spectrum(op(CMatrix::diagonal(d)), SpectrumKind::Ordinary);
    REQUIRE(s.points.size() == 2);
    CHECK(std::abs(s.points[0].value - kOne) < 1e-10);
    CHECK(std::abs(s.points[1].value - Complex{2.0, 0.0}) < 1e-10);
}

TEST_CASE("the essential spectrum is empty in finite dimension") {
    CHECK(spectrum(op(random_general_matrix(5, 3)), SpectrumKind::Essential).empty());
}

TEST_CASE("regular spectrum of the Jordan block is {0}") {
    const SpectralSet s = spectrum(jordan2(), SpectrumKind::Regular);
    REQUIRE(s.points.size() == 1);
    CHECK(std::abs(s.points[0].value) < 1e-10);
    CHECK(s.points[0].multiplicity == 2);
}

TEST_CASE("the first four spectrum kinds coincide as multisets") {
    for (const CMatrix& m : {random_general_matrix(5, 9), random_normal_matrix(6, 4),
                             CMatrix::from_rows({{kZero, kOne}, {kZero, kZero}})}) {
        const FiniteOperator t = op(m);
        const SpectralSet ordinary = spectrum(t, SpectrumKind::Ordinary);
        CHECK(ordinary.total_multiplicity() <= static_cast<int>(t.dim()));
        CHECK(ordinary.total_multiplicity() == static_cast<int>(t.dim()));
        for (const SpectrumKind kind : {SpectrumKind::Point, SpectrumKind::Approximate,
                                        SpectrumKind::Residual}) {
            const SpectralSet other = spectrum(t, kind);
            CHECK(inclusion_defect(ordinary, other) <= ordinary.match_tol);
            CHECK(inclusion_defect(other, ordinary) <= ordinary.match_tol);
            CHECK(other.total_multiplicity() == ordinary.total_multiplicity());
        }
    }
}

TEST_CASE("the regular spectrum is contained in the ordinary spectrum") {
    for (const CMatrix& m : {random_general_matrix(4, 11), random_normal_matrix(5, 12)}) {
        const FiniteOperator t = op(m);
        CHECK(inclusion_defect(spectrum(t, SpectrumKind::Regular),
                               spectrum(t, SpectrumKind::Ordinary)) == 0.0);
    }
}

TEST_CASE("exp_image maps {0} to {1}") {
    SpectralSet s;
    s.kind = SpectrumKind::Ordinary;
    s.points = {SpectralPoint{kZero, 1}};
    s.match_tol = 1e-6;
    const SpectralSet image = exp_image(s, 3.0);
    REQUIRE(image.points.size() == 1);
    CHECK(std::abs(image.points[0].value - kOne) < 1e-14);
}

TEST_CASE("exp_image merges the +-(i pi) collision with multiplicity 2") {
    SpectralSet s;
    s.kind = SpectrumKind::Ordinary;
    s.points = {SpectralPoint{Complex{0.0, -std::numbers::pi}, 1},
                SpectralPoint{Complex{0.0, std::numbers::pi}, 1}};
    s.match_tol = 1e-6;
    const SpectralSet image = exp_image(s, 1.0);
    REQUIRE(image.points.size() == 1);
    CHECK(std::abs(image.points[0].value - Complex{-1.0, 0.0}) < 1e-10);
    CHECK(image.points[0].multiplicity == 2);
}

TEST_CASE("exp_image of the empty set is empty") {
    SpectralSet s;
    s.match_tol = 1e-6;
    CHECK(exp_image(s, 2.0).empty());
}

TEST_CASE("inclusion defects on explicit sets") {
    SpectralSet empty;
    empty.match_tol = 1e-6;
    SpectralSet one;
    one.points = {SpectralPoint{kOne, 1}};
    one.match_tol = 1e-6;
    SpectralSet onetwo;
    onetwo.points = {SpectralPoint{kOne, 1}, SpectralPoint{Complex{2.0, 0.0}, 1}};
    onetwo.match_tol = 1e-6;

    CHECK(inclusion_defect(empty, onetwo) == 0.0);
    CHECK(inclusion_defect(one, onetwo) == 0.0);

    SpectralSet e1;
    e1.points = {SpectralPoint{Complex{std::exp(1.0), 0.0}, 1}};
    e1.match_tol = 1e-6;
    SpectralSet e15;
    e15.points = {SpectralPoint{Complex{std::exp(1.5), 0.0}, 1}};
    e15.match_tol = 1e-6;
    CHECK(inclusion_defect(e1, e15) ==
          doctest::Approx(1.7634072418790194).epsilon(1e-12));
}

TEST_CASE("spectral mapping is an equality in finite dimension") {
    for (std::uint64_t seed = 51; seed <= 54; ++seed) {
        const std::size_t n = 2 + seed % 6;
        const FiniteOperator a = op(random_normal_matrix(n, seed));
        for (const double s : {0.5, 1.0, 2.0}) {
            const SpectralSet image = exp_image(spectrum(a, SpectrumKind::Ordinary), s);
            const SpectralSet direct =
                spectrum(op(expm(Complex{s, 0.0} * a.matrix)), SpectrumKind::Ordinary);
            const double tol = std::max(image.match_tol, direct.match_tol);
            CHECK(inclusion_defect(image, direct) <= tol);
            CHECK(inclusion_defect(direct, image) <= tol);
        }
    }
}

TEST_CASE("approx_eigenpair at an exact eigenvalue has zero residual") {
    const std::vector<Complex> d{kOne, Complex{2.0, 0.0}};
    const ApproxEigenpair pair = approx_eigenpair(op(CMatrix::diagonal(d)), kOne);
    CHECK(pair.eta < 1e-14);
    CHECK(std::abs(pair.x(0, 0) - kOne) < 1e-10);
    CHECK(std::abs(pair.x(1, 0)) < 1e-10);
}

TEST_CASE("approx_eigenpair off-spectrum distance on a normal matrix") {
    const std::vector<Complex> d{kOne, Complex{2.0, 0.0}};
    const ApproxEigenpair pair = approx_eigenpair(op(CMatrix::diagonal(d)), Complex{1.1, 0.0});
    CHECK(pair.eta == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("approx_eigenpair on the Jordan block matches the closed form") {
    const ApproxEigenpair pair = approx_eigenpair(jordan2(), Complex{0.1, 0.0});
    CHECK(pair.eta == doctest::Approx(jordan_shift_sigma_min(0.1)).epsilon(1e-10));
    CHECK(pair.eta == doctest::Approx(0.009901951359277277).epsilon(1e-9));
    // the coarse closed form |l|^2 / sqrt(1 + |l|^2) sits within a percent
    CHECK(std::abs(pair.eta - 0.00995) < 1e-3);
}

TEST_CASE("approx_eigenpair invariants: unit vector, recomputable residual") {
    for (std::uint64_t seed = 61; seed <= 63; ++seed) {
        const FiniteOperator t = op(random_general_matrix(4, seed));
        for (const Complex lambda : default_lambda_samples(t)) {
            const ApproxEigenpair pair = approx_eigenpair(t, lambda);
            CHECK(std::abs(pair.x.frobenius_norm() - 1.0) < 1e-12);
            CMatrix r = pair.lambda * pair.x;
            r -= t.matrix * pair.x;
            CHECK(std::abs(r.frobenius_norm() - pair.eta) < 1e-10);
            CHECK(pair.eta >= 0.0);
        }
    }
}

TEST_CASE("approx_eigenpair eta is the eigenvalue distance for normal operators") {
    const FiniteOperator t = op(random_normal_matrix(5, 71));
    const SpectralSet spec = spectrum(t, SpectrumKind::Ordinary);
    for (const Complex probe : {Complex{0.3, 0.1}, Complex{-0.2, -0.4}, Complex{1.0, 0.0}}) {
        double dist = 1e300;
        for (const auto& p : spec.points) dist = std::min(dist, std::abs(probe - p.value));
        CHECK(approx_eigenpair(t, probe).eta == doctest::Approx(dist).epsilon(1e-8));
    }
}

TEST_CASE("pseudospectrum of the zero operator is |lambda|") {
    const PseudospectrumGrid grid =
        pseudospectrum_grid(op(CMatrix::zero(2, 2)), -1.0, 1.0, -1.0, 1.0, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double re = -1.0 + static_cast<double>(j);
            const double im = -1.0 + static_cast<double>(i);
            CHECK(grid.at(i, j) == doctest::Approx(std::hypot(re, im)).epsilon(1e-12));
        }
}

TEST_CASE("pseudospectrum vanishes at eigenvalues and matches the Jordan closed form") {
    const PseudospectrumGrid at_eig = pseudospectrum_grid(jordan2(), 0.0, 1.0, 0.0, 1.0, 2, 2);
    CHECK(at_eig.at(0, 0) <= 1e-10);  // node at the eigenvalue 0

    const PseudospectrumGrid at_01 = pseudospectrum_grid(jordan2(), 0.1, 0.2, 0.0, 1.0, 2, 2);
    CHECK(at_01.at(0, 0) == doctest::Approx(jordan_shift_sigma_min(0.1)).epsilon(1e-9));
}

TEST_CASE("pseudospectrum grids require at least two nodes per axis") {
    CHECK_THROWS_AS(pseudospectrum_grid(jordan2(), 0.0, 1.0, 0.0, 1.0, 1, 3), DomainError);
}

TEST_CASE("default lambda samples cover eigenvalues, midpoints, an off-point and zero") {
    const std::vector<Complex> d{kOne, Complex{2.0, 0.0}};
    const std::vector<Complex> samples = default_lambda_samples(op(CMatrix::diagonal(d)));
    const auto has = [&](Complex v) {
        for (const Complex s : samples)
            if (std::abs(s - v) < 1e-8) return true;
        return false;
    };
    CHECK(has(kZero));
    CHECK(has(kOne));
    CHECK(has(Complex{1.5, 0.0}));
    CHECK(has(Complex{2.0, 0.0}));
    CHECK(has(Complex{3.0, 0.0}));
    CHECK(samples.size() == 5);
}

}  // TEST_SUITE
