#include "qsg/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qsg/errors.hpp"

namespace qsg {

namespace {

// Gaussian deviates from explicit uniform bits so that seeded matrices are
// reproducible bit-for-bit regardless of the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // (0, 1]
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex{re, im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Haar-ish random unitary: modified Gram-Schmidt on a complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, Rng& rng) {
    CMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = rng.complex_gaussian();
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * w[i];
                for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u(i, k);
            }
        }
        double nrm = 0.0;
        for (const auto& x : w) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) u(i, j) = w[i] / nrm;
    }
    return u;
}

}  // namespace

CMatrix random_normal_matrix(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x517cc1b727220a95ULL);
    std::vector<Complex> diag(dim);
    for (auto& d : diag) {
        // uniform in the disk of radius 1.2
        const double r = 1.2 * std::sqrt(rng.uniform());
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        d = Complex{r * std::cos(a), r * std::sin(a)};
    }
    const CMatrix u = random_unitary(dim, rng);
    return u * CMatrix::diagonal(diag) * u.adjoint();
}

CMatrix random_general_matrix(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
    CMatrix a(dim, dim);
    const double scale = 0.8 / std::sqrt(static_cast<double>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = scale * rng.complex_gaussian();
    return a;
}

ScalarMap scalar_map(const std::string& name) {
    if (name == "one") return [](double) { return 1.0; };
    if (name == "linear") return [](double u) { return 1.0 + u; };
    if (name == "exponential") return [](double u) { return std::exp(u); };
    throw CatalogError("unknown scalar map '" + name + "'");
}

MatrixMap matrix_map(const std::string& name) {
    if (name == "noncommuting") {
        return [](double t) {
            return CMatrix::from_rows({{Complex{0.0, 0.0}, Complex{1.0, 0.0}},
                                       {Complex{t, 0.0}, Complex{0.0, 0.0}}});
        };
    }
    throw CatalogError("unknown generator family '" + name + "'");
}

std::vector<CatalogEntry> list_catalog() {
    return {
        {"constant-diagonal", "constant generator diag(1, 2)"},
        {"constant-jordan", "constant nilpotent Jordan block [[0,1],[0,0]]"},
        {"constant-rotation", "constant rotation generator [[0,1],[-1,0]]"},
        {"evolution-noncommuting", "time-dependent generator [[0,1],[t,0]] (noncommuting family)"},
        {"random-general", "seeded dense complex generator; parameters dim, seed"},
        {"random-normal", "seeded normal generator, eigenvalues in a disk; parameters dim, seed"},
        {"scaled-constant-a", "diag(1, 2) rescaled by a(u) = 1"},
        {"scaled-exponential-a", "scalar generator [1] rescaled by a(u) = exp(u)"},
        {"scaled-linear-a", "scalar generator [1] rescaled by a(u) = 1 + u"},
    };
}

QuasiSemigroup catalog_backend(const std::string& name, ToleranceContext tol, std::size_t dim,
                               std::uint64_t seed) {
    const Complex one{1.0, 0.0};
    const Complex zero{0.0, 0.0};

    if (name == "constant-diagonal") {
        return QuasiSemigroup(
            QuasiSemigroup::Constant{CMatrix::from_rows({{one, zero}, {zero, Complex{2.0, 0.0}}})},
            tol, name);
    }
    if (name == "constant-jordan") {
        return QuasiSemigroup(
            QuasiSemigroup::Constant{CMatrix::from_rows({{zero, one}, {zero, zero}})}, tol, name);
    }
    if (name == "constant-rotation") {
        return QuasiSemigroup(
            QuasiSemigroup::Constant{
                CMatrix::from_rows({{zero, one}, {Complex{-1.0, 0.0}, zero}})},
            tol, name);
    }
    if (name == "evolution-noncommuting") {
        return QuasiSemigroup(QuasiSemigroup::Evolution{matrix_map("noncommuting"), 0.02}, tol,
                              name);
    }
    if (name == "random-general") {
        return QuasiSemigroup(QuasiSemigroup::Constant{random_general_matrix(dim, seed)}, tol,
                              name + "(dim=" + std::to_string(dim) +
                                  ",seed=" + std::to_string(seed) + ")");
    }
    if (name == "random-normal") {
        return QuasiSemigroup(QuasiSemigroup::Constant{random_normal_matrix(dim, seed)}, tol,
                              name + "(dim=" + std::to_string(dim) +
                                  ",seed=" + std::to_string(seed) + ")");
    }
    if (name == "scaled-constant-a") {
        return QuasiSemigroup(
            QuasiSemigroup::Scaled{CMatrix::from_rows({{one, zero}, {zero, Complex{2.0, 0.0}}}),
                                   scalar_map("one")},
            tol, name);
    }
    if (name == "scaled-exponential-a") {
        return QuasiSemigroup(
            QuasiSemigroup::Scaled{CMatrix::from_rows({{one}}), scalar_map("exponential")}, tol,
            name);
    }
    if (name == "scaled-linear-a") {
        return QuasiSemigroup(
            QuasiSemigroup::Scaled{CMatrix::from_rows({{one}}), scalar_map("linear")}, tol, name);
    }
    throw CatalogError("unknown catalog backend '" + name + "'");
}

}  // namespace qsg
