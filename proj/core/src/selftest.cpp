#include "qsg/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "qsg/catalog.hpp"
#include "qsg/numkernel.hpp"
#include "qsg/operators.hpp"
#include "qsg/quasi_semigroup.hpp"
#include "qsg/spectra.hpp"

namespace qsg {

namespace {

struct Reporter {
    std::ostream& out;
    bool all_pass = true;

    void check(const std::string& name, bool pass, double observed, double limit) {
        all_pass = all_pass && pass;
        out << (pass ? "[PASS] " : "[FAIL] ") << name << " (observed " << observed << ", limit "
            << limit << ")\n";
    }
};

double max_eig_residual(const CMatrix& m) {
    const Eigensystem es = eig(m);
    double worst = 0.0;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        CMatrix v = es.vectors.col(k);
        CMatrix r = m * v;
        r -= es.values[k] * v;
        worst = std::max(worst, r.frobenius_norm());
    }
    return worst;
}

// greedy bidirectional multiset distance between two complex lists
double multiset_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Complex x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (std::abs(x - b[i]) < best) {
                best = std::abs(x - b[i]);
                arg = i;
            }
        }
        worst = std::max(worst, best);
        b.erase(b.begin() + static_cast<long>(arg));
    }
    return worst;
}

}  // namespace

bool run_selftest(std::ostream& out) {
    Reporter rep{out};

    // expm against the diagonalization oracle on normal matrices
    {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const std::size_t n = 2 + (seed * 3) % 15;  // up to 16
            const CMatrix a = random_normal_matrix(n, seed);
            const Eigensystem es = eig(a);
            std::vector<Complex> expd(n);
            for (std::size_t i = 0; i < n; ++i) expd[i] = std::exp(es.values[i]);
            const CMatrix oracle =
                es.vectors * CMatrix::diagonal(expd) * es.vectors.adjoint();
            const CMatrix direct = expm(a);
            worst = std::max(worst,
                             (direct - oracle).frobenius_norm() / oracle.frobenius_norm());
        }
        rep.check("expm matches the diagonalization oracle on normal matrices", worst <= 1e-10,
                  worst, 1e-10);
    }

    // expm(sA) expm(rA) = expm((s+r)A)
    {
        double worst = 0.0;
        for (std::uint64_t seed = 11; seed <= 14; ++seed) {
            const std::size_t n = 2 + seed % 7;  // up to 8
            const CMatrix a = random_general_matrix(n, seed);
            for (const auto& [s, r] : std::array<std::pair<double, double>, 3>{
                     {{0.5, 0.25}, {1.0, 1.0}, {2.0, 0.5}}}) {
                const CMatrix lhs =
                    expm(Complex{s, 0.0} * a) * expm(Complex{r, 0.0} * a);
                const CMatrix rhs = expm(Complex{s + r, 0.0} * a);
                worst = std::max(worst,
                                 (lhs - rhs).frobenius_norm() /
                                     std::max(1.0, rhs.frobenius_norm()));
            }
        }
        rep.check("expm one-parameter group property on random matrices", worst <= 1e-8, worst,
                  1e-8);
    }

    // eigen residuals up to dimension 64
    {
        double worst_rel = 0.0;
        for (const std::size_t n : {2u, 5u, 8u, 16u, 32u, 64u}) {
            const CMatrix a = random_general_matrix(n, 100 + n);
            const double res = max_eig_residual(a);
            worst_rel = std::max(worst_rel, res / spectral_norm(a));
        }
        rep.check("eig residuals ||Mv - lambda v|| <= 1e-8 ||M|| up to dim 64",
                  worst_rel <= 1e-8, worst_rel, 1e-8);
    }

    // svd reconstruction
    {
        double worst = 0.0;
        for (const std::size_t n : {3u, 8u, 24u, 64u}) {
            const CMatrix a = random_general_matrix(n, 200 + n);
            const Svd dec = svd(a);
            CMatrix sigma(a.rows(), a.cols());
            for (std::size_t i = 0; i < dec.sigma.size(); ++i) sigma(i, i) = dec.sigma[i];
            const CMatrix rebuilt = dec.u * sigma * dec.v.adjoint();
            worst = std::max(worst, (rebuilt - a).frobenius_norm() / a.frobenius_norm());
        }
        rep.check("svd reconstruction error <= 1e-10 relative", worst <= 1e-10, worst, 1e-10);
    }

    // quadrature is exact on cubics
    {
        const double got = quad_scalar(
            [](double h) { return 3.0 * h * h * h - 2.0 * h * h + h - 1.0; }, 0.0, 2.0, 1e-12);
        const double expected = 20.0 / 3.0;  // antiderivative (3/4)h^4-(2/3)h^3+h^2/2-h at 2
        const double err = std::abs(got - expected);
        rep.check("adaptive Simpson is exact on cubic integrands", err <= 1e-12, err, 1e-12);
    }

    // spectral mapping self-test: eig(expm A) = exp(eig A) for normal A
    {
        double worst = 0.0;
        for (std::uint64_t seed = 31; seed <= 34; ++seed) {
            const std::size_t n = 2 + seed % 7;
            const CMatrix a = random_normal_matrix(n, seed);
            std::vector<Complex> mapped;
            for (const Complex v : eig(a).values) mapped.push_back(std::exp(v));
            worst = std::max(worst, multiset_mismatch(mapped, eig(expm(a)).values));
        }
        rep.check("spectral mapping: eig(expm A) matches exp(eig A)", worst <= 1e-6, worst, 1e-6);
    }

    // rank-nullity on random and deliberately singular operators
    {
        bool ok = true;
        for (std::uint64_t seed = 41; seed <= 44; ++seed) {
            const std::size_t n = 3 + seed % 5;
            CMatrix a = random_general_matrix(n, seed);
            if (seed % 2 == 0) {
                // zero out a column block to force rank deficiency
                for (std::size_t i = 0; i < n; ++i) a(i, 0) = Complex{0.0, 0.0};
            }
            const FiniteOperator op = make_operator(a);
            ok = ok && (kernel(op).dim() + range(op).dim() == n);
        }
        rep.check("rank-nullity: dim kernel + dim range = n", ok, ok ? 0.0 : 1.0, 0.0);
    }

    // cocycle law on the catalog backends; the fast-growing exponential
    // scale gets a grid that keeps ||R|| at order one so the absolute
    // tolerance stays meaningful
    {
        double worst = 0.0;
        double limit = 0.0;
        for (const auto& entry : list_catalog()) {
            if (entry.name.rfind("random", 0) == 0) continue;
            const QuasiSemigroup q = catalog_backend(entry.name);
            limit = std::max(limit, std::max(1e-8, q.tol().ode_tol));
            const double scale = entry.name == "scaled-exponential-a" ? 0.3 : 1.0;
            for (const double t : {0.0, 0.5, 1.0})
                for (const double s : {0.5, 1.0})
                    for (const double r : {0.5, 1.0}) {
                        const CMatrix lhs = q.eval(scale * t, scale * (s + r)).matrix;
                        const CMatrix rhs = q.eval(scale * (t + r), scale * s).matrix *
                                            q.eval(scale * t, scale * r).matrix;
                        worst = std::max(worst, spectral_norm(lhs - rhs));
                    }
        }
        rep.check("cocycle law on all catalog backends", worst <= limit, worst, limit);
    }

    // the scaled backend with a constant scale reproduces the constant backend
    {
        const QuasiSemigroup constant = catalog_backend("constant-diagonal");
        const QuasiSemigroup scaled = catalog_backend("scaled-constant-a");
        double worst = 0.0;
        for (const double t : {0.0, 0.7, 1.5})
            for (const double s : {0.0, 0.5, 1.0, 2.0}) {
                worst = std::max(worst, (scaled.eval(t, s).matrix - constant.eval(t, s).matrix)
                                            .max_abs());
            }
        rep.check("scaled backend with a = 1 reproduces the constant backend", worst <= 1e-10,
                  worst, 1e-10);
    }

    // generator difference quotients converge at first order
    {
        double worst_order = std::numeric_limits<double>::infinity();
        for (const char* name : {"constant-diagonal", "scaled-linear-a"}) {
            const QuasiSemigroup q = catalog_backend(name);
            for (const double t : {0.0, 1.0}) {
                const double h = 1e-3;
                const CMatrix exact = q.generator(t).matrix;
                const double e1 =
                    spectral_norm(q.estimate_generator(t, h).forward - exact);
                const double e2 =
                    spectral_norm(q.estimate_generator(t, 0.5 * h).forward - exact);
                worst_order = std::min(worst_order, std::log2(e1 / e2));
            }
        }
        rep.check("generator difference quotients converge with order >= 0.9",
                  worst_order >= 0.9, worst_order, 0.9);
    }

    out << (rep.all_pass ? "selftest: all checks passed\n" : "selftest: FAILURES present\n");
    return rep.all_pass;
}

}  // namespace qsg
