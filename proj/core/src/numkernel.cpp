#include "qsg/numkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>

#include "qsg/errors.hpp"

namespace qsg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// LU with partial pivoting
// ---------------------------------------------------------------------------

void lu_factor(CMatrix& a, std::vector<std::size_t>& piv) {
    const std::size_t n = a.rows();
    piv.resize(n);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw NumericError("lu_solve: singular matrix", 0.0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(piv[k], piv[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = a(i, k) / a(k, k);
            a(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
}

}  // namespace

CMatrix lu_solve(CMatrix a, CMatrix b) {
    require_square(a, "lu_solve");
    if (a.rows() != b.rows()) throw DimensionError("lu_solve: rhs row count mismatch");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    if (n == 0) return b;

    std::vector<std::size_t> piv;
    lu_factor(a, piv);

    CMatrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = b(piv[i], j);

    // forward substitution (unit lower triangle)
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const Complex l = a(i, k);
            if (l == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= l * x(k, j);
        }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            Complex s = x(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k) s -= a(ii, k) * x(k, j);
            x(ii, j) = s / a(ii, ii);
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// Matrix exponential: scaling and squaring with diagonal Pade cores.
// Order selection by the usual 1-norm thresholds.
// ---------------------------------------------------------------------------

namespace {

CMatrix pade_solve(const CMatrix& u, const CMatrix& v) {
    // r = (v - u)^{-1} (v + u)
    return lu_solve(v - u, v + u);
}

CMatrix expm_pade(const CMatrix& a, int order) {
    const std::size_t n = a.rows();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix a2 = a * a;

    switch (order) {
        case 3: {
            static constexpr std::array<double, 4> b{120, 60, 12, 1};
            CMatrix u = a * (b[3] * a2 + b[1] * id);
            CMatrix v = b[2] * a2 + b[0] * id;
            return pade_solve(u, v);
        }
        case 5: {
            static constexpr std::array<double, 6> b{30240, 15120, 3360, 420, 30, 1};
            const CMatrix a4 = a2 * a2;
            CMatrix u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
            CMatrix v = b[4] * a4 + b[2] * a2 + b[0] * id;
            return pade_solve(u, v);
        }
        case 7: {
            static constexpr std::array<double, 8> b{17297280, 8648640, 1995840, 277200,
                                                     25200,    1512,    56,      1};
            const CMatrix a4 = a2 * a2;
            const CMatrix a6 = a4 * a2;
            CMatrix u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            CMatrix v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            return pade_solve(u, v);
        }
        case 9: {
            static constexpr std::array<double, 10> b{17643225600., 8821612800., 2075673600.,
                                                      302702400.,   30270240.,   2162160.,
                                                      110880.,      3960.,       90.,
                                                      1.};
            const CMatrix a4 = a2 * a2;
            const CMatrix a6 = a4 * a2;
            const CMatrix a8 = a6 * a2;
            CMatrix u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            CMatrix v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            return pade_solve(u, v);
        }
        default: {  // 13
            static constexpr std::array<double, 14> b{
                64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
                129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
                1323241920.,        40840800.,          960960.,           16380.,
                182.,               1.};
            const CMatrix a4 = a2 * a2;
            const CMatrix a6 = a4 * a2;
            CMatrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                             b[5] * a4 + b[3] * a2 + b[1] * id);
            CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                        b[2] * a2 + b[0] * id;
            return pade_solve(u, v);
        }
    }
}

}  // namespace

CMatrix expm(const CMatrix& m) {
    require_square(m, "expm");
    require_finite(m, "expm");
    const std::size_t n = m.rows();
    if (n == 0) return m;

    const double nrm = m.one_norm();
    // 1-norm thresholds for Pade orders 3, 5, 7, 9.
    if (nrm <= 1.495585217958292e-2) return expm_pade(m, 3);
    if (nrm <= 2.539398330063230e-1) return expm_pade(m, 5);
    if (nrm <= 9.504178996162932e-1) return expm_pade(m, 7);
    if (nrm <= 2.097847961257068e0) return expm_pade(m, 9);

    constexpr double theta13 = 5.371920351148152e0;
    int squarings = 0;
    CMatrix scaled = m;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        scaled *= Complex{std::ldexp(1.0, -squarings), 0.0};
    }
    CMatrix r = expm_pade(scaled, 13);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder Hessenberg reduction, then single-shift QR with
// Givens rotations and deflation; eigenvectors by triangular
// back-substitution on the Schur factor.
// ---------------------------------------------------------------------------

namespace {

struct Givens {
    double c;   // real cosine
    Complex s;  // complex sine
};

// Rotation G with G^* [x; y] = [r; 0], G = [[c, s], [-conj(s), c]].
Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, Complex{0.0, 0.0}};
    const double t = std::hypot(ax, ay);
    if (ax == 0.0) {
        return {0.0, -std::conj(y) / ay};
    }
    const Complex phase = x / ax;
    return {ax / t, -phase * std::conj(y) / t};
}

// Reduce h to upper Hessenberg form by Householder reflections, accumulating
// the transform into q (h_new = q^* h_old q applied incrementally).
void hessenberg_reduce(CMatrix& h, CMatrix& q) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the subdiagonal.
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        Complex alpha = h(k + 1, k);
        const double aa = std::abs(alpha);
        const Complex phase = (aa == 0.0) ? Complex{1.0, 0.0} : alpha / aa;
        const Complex beta = -phase * scale;

        std::vector<Complex> v(n, Complex{0.0, 0.0});
        v[k + 1] = alpha - beta;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vn2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vn2 += std::norm(v[i]);
        if (vn2 == 0.0) continue;
        const double inv = 2.0 / vn2;

        // h <- (I - inv v v^*) h
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{0.0, 0.0};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= inv;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        // h <- h (I - inv v v^*)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= inv;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        // q <- q (I - inv v v^*)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j];
            dot *= inv;
            for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
        }
        h(k + 1, k) = beta;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{0.0, 0.0};
    }
}

// Eigenvalue of the trailing 2x2 of the active block closest to h(m, m).
Complex wilkinson_shift(const CMatrix& h, std::size_t m) {
    const Complex a = h(m - 1, m - 1);
    const Complex b = h(m - 1, m);
    const Complex c = h(m, m - 1);
    const Complex d = h(m, m);
    const Complex tr2 = 0.5 * (a + d);
    const Complex disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    const Complex l1 = tr2 + disc;
    const Complex l2 = tr2 - disc;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Schur decomposition a = z t z^*; t upper triangular on return in h.
void schur_qr(CMatrix& h, CMatrix& z, std::size_t budget) {
    const std::size_t n = h.rows();
    if (n < 2) return;

    std::size_t hi = n - 1;
    std::size_t iter_total = 0;
    std::size_t iter_block = 0;

    auto subdiag_negligible = [&](std::size_t k) {
        const double bound = kEps * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k)));
        return std::abs(h(k, k - 1)) <= std::max(bound, 1e-300);
    };

    while (hi > 0) {
        // deflate converged trailing entries
        while (hi > 0 && subdiag_negligible(hi)) {
            h(hi, hi - 1) = Complex{0.0, 0.0};
            --hi;
            iter_block = 0;
        }
        if (hi == 0) break;

        // active block [lo, hi]
        std::size_t lo = hi;
        while (lo > 0 && !subdiag_negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = Complex{0.0, 0.0};

        if (iter_total++ > budget) {
            double worst = 0.0;
            for (std::size_t k = 1; k < n; ++k) worst = std::max(worst, std::abs(h(k, k - 1)));
            throw NumericError("eig: QR iteration budget exhausted", worst);
        }

        Complex shift = wilkinson_shift(h, hi);
        if (++iter_block % 12 == 0) {
            // exceptional shift to break symmetry stalls
            shift = h(hi, hi) + Complex{1.5 * std::abs(h(hi, hi - 1)), 0.0};
        }

        // implicit single-shift sweep over [lo, hi]
        Complex x = h(lo, lo) - shift;
        Complex y = h(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = make_givens(x, y);
            const std::size_t jstart = (k == 0) ? 0 : k - 1;
            // left: rows k, k+1
            for (std::size_t j = jstart; j < n; ++j) {
                const Complex t1 = h(k, j);
                const Complex t2 = h(k + 1, j);
                h(k, j) = g.c * t1 - g.s * t2;
                h(k + 1, j) = std::conj(g.s) * t1 + g.c * t2;
            }
            // right: columns k, k+1
            const std::size_t imax = std::min(k + 2, hi);
            for (std::size_t i = 0; i <= imax; ++i) {
                const Complex t1 = h(i, k);
                const Complex t2 = h(i, k + 1);
                h(i, k) = g.c * t1 - std::conj(g.s) * t2;
                h(i, k + 1) = g.s * t1 + g.c * t2;
            }
            // accumulate Schur vectors
            for (std::size_t i = 0; i < n; ++i) {
                const Complex t1 = z(i, k);
                const Complex t2 = z(i, k + 1);
                z(i, k) = g.c * t1 - std::conj(g.s) * t2;
                z(i, k + 1) = g.s * t1 + g.c * t2;
            }
            if (k + 1 < hi) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
    }
}

// Unit right eigenvector of the triangular t for the eigenvalue at position
// idx, via back-substitution with small-pivot protection.
std::vector<Complex> triangular_eigenvector(const CMatrix& t, std::size_t idx, double smin) {
    const std::size_t n = t.rows();
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    v[idx] = 1.0;
    const Complex lambda = t(idx, idx);
    for (std::size_t jj = idx; jj-- > 0;) {
        Complex s{0.0, 0.0};
        for (std::size_t k = jj + 1; k <= idx; ++k) s += t(jj, k) * v[k];
        Complex d = t(jj, jj) - lambda;
        if (std::abs(d) < smin) d = Complex{smin, 0.0};
        v[jj] = -s / d;
        const double mag = std::abs(v[jj]);
        if (mag > 1e120) {  // rescale to avoid overflow on pathological cascades
            for (std::size_t k = jj; k <= idx; ++k) v[k] /= mag;
        }
    }
    return v;
}

}  // namespace

Eigensystem eig(const CMatrix& m) {
    require_square(m, "eig");
    require_finite(m, "eig");
    const std::size_t n = m.rows();

    Eigensystem out;
    out.vectors = CMatrix(n, n);
    if (n == 0) return out;

    CMatrix t = m;
    CMatrix z = CMatrix::identity(n);
    hessenberg_reduce(t, z);
    schur_qr(t, z, 100 * n);

    const double tmax = std::max(t.max_abs(), 1e-300);
    const double smin = kEps * tmax * static_cast<double>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Complex la = t(a, a), lb = t(b, b);
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });

    out.values.resize(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t idx = order[col];
        out.values[col] = t(idx, idx);

        const std::vector<Complex> v = triangular_eigenvector(t, idx, smin);
        // transform back and normalize with a canonical phase
        std::vector<Complex> w(n, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k <= idx; ++k) s += z(i, k) * v[k];
            w[i] = s;
        }
        double nrm = 0.0;
        std::size_t pivot = 0;
        double pmag = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nrm += std::norm(w[i]);
            if (std::abs(w[i]) > pmag) {
                pmag = std::abs(w[i]);
                pivot = i;
            }
        }
        nrm = std::sqrt(nrm);
        Complex phase{1.0, 0.0};
        if (pmag > 0.0) phase = std::conj(w[pivot]) / pmag;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, col) = w[i] * phase / nrm;
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVD: one-sided Jacobi on the columns, full U completed by Gram-Schmidt.
// ---------------------------------------------------------------------------

namespace {

// One-sided Jacobi on b (m x n, m >= n): returns with columns mutually
// orthogonal; v accumulates the right rotations.
void jacobi_orthogonalize(CMatrix& b, CMatrix& v) {
    const std::size_t m = b.rows();
    const std::size_t n = b.cols();
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(b(i, p));
                    beta += std::norm(b(i, q));
                    gamma += std::conj(b(i, p)) * b(i, q);
                }
                const double ag = std::abs(gamma);
                if (ag <= 1e-15 * std::sqrt(alpha * beta) || ag == 0.0) continue;
                rotated = true;

                // phase removal, then a real Jacobi rotation on the Gram 2x2
                const Complex phase = gamma / ag;  // e^{i phi}
                const double tau = (beta - alpha) / (2.0 * ag);
                const double tt = (tau >= 0.0 ? 1.0 : -1.0) /
                                  (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                const Complex ph_conj = std::conj(phase);

                for (std::size_t i = 0; i < m; ++i) {
                    const Complex bp = b(i, p);
                    const Complex bq = b(i, q);
                    b(i, p) = c * bp - s * ph_conj * bq;
                    b(i, q) = s * phase * bp + c * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q);
                    v(i, p) = c * vp - s * ph_conj * vq;
                    v(i, q) = s * phase * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

// Extend the accepted columns of u (flags good[j]) to a full orthonormal
// basis. For each missing column, take the canonical vector with the largest
// residual against the accepted columns and orthogonalize it twice.
void complete_basis(CMatrix& u, std::vector<bool>& good) {
    const std::size_t m = u.rows();
    for (std::size_t j = 0; j < m; ++j) {
        if (good[j]) continue;

        std::vector<Complex> best;
        double best_norm = -1.0;
        for (std::size_t cand = 0; cand < m; ++cand) {
            std::vector<Complex> w(m, Complex{0.0, 0.0});
            w[cand] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < m; ++k) {
                    if (!good[k]) continue;
                    Complex dot{0.0, 0.0};
                    for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, k)) * w[i];
                    for (std::size_t i = 0; i < m; ++i) w[i] -= dot * u(i, k);
                }
            }
            double nrm = 0.0;
            for (const auto& x : w) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(w);
            }
        }
        if (best_norm <= 0.0) throw NumericError("svd: basis completion failed", 0.0);
        for (std::size_t i = 0; i < m; ++i) u(i, j) = best[i] / best_norm;
        good[j] = true;
    }
}

Svd svd_tall(const CMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    CMatrix b = a;
    CMatrix v = CMatrix::identity(n);
    jacobi_orthogonalize(b, v);

    std::vector<double> sig(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(b(i, j));
        sig[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

    const double smax = n > 0 ? sig[order[0]] : 0.0;
    const double tiny = std::max(smax * 1e-13, 1e-300);

    Svd out;
    out.sigma.resize(n);
    out.u = CMatrix(m, m);
    out.v = CMatrix(n, n);
    std::vector<bool> good(m, false);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = sig[src];
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
        if (sig[src] > tiny) {
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = b(i, src) / sig[src];
            good[j] = true;
        }
    }
    complete_basis(out.u, good);
    return out;
}

}  // namespace

Svd svd(const CMatrix& m) {
    require_finite(m, "svd");
    if (m.rows() == 0 || m.cols() == 0) {
        Svd out;
        out.u = CMatrix::identity(m.rows());
        out.v = CMatrix::identity(m.cols());
        return out;
    }
    if (m.rows() >= m.cols()) return svd_tall(m);
    Svd t = svd_tall(m.adjoint());
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

double spectral_norm(const CMatrix& m) {
    if (m.empty()) return 0.0;
    return svd(m).sigma.front();
}

double smallest_singular_value(const CMatrix& m) {
    if (m.empty()) return 0.0;
    return svd(m).sigma.back();
}

// ---------------------------------------------------------------------------
// Adaptive composite Simpson quadrature, depth cap 24, halving estimator.
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxDepth = 24;

CMatrix simpson(const CMatrix& fa, const CMatrix& fm, const CMatrix& fb, double width) {
    CMatrix s = fa;
    s += fb;
    s += 4.0 * fm;
    s *= Complex{width / 6.0, 0.0};
    return s;
}

CMatrix simpson_adaptive(const std::function<CMatrix(double)>& f, double a, double b,
                         const CMatrix& fa, const CMatrix& fm, const CMatrix& fb,
                         const CMatrix& whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const CMatrix flm = f(0.5 * (a + mid));
    const CMatrix frm = f(0.5 * (mid + b));
    const CMatrix left = simpson(fa, flm, fm, mid - a);
    const CMatrix right = simpson(fm, frm, fb, b - mid);
    CMatrix sum = left;
    sum += right;
    CMatrix delta = sum;
    delta -= whole;
    const double err = delta.max_abs();
    if (err <= 15.0 * tol || depth >= kMaxDepth) {
        if (depth >= kMaxDepth && err > 15.0 * tol) {
            throw QuadratureError("quad: depth cap reached before tolerance", err / 15.0);
        }
        delta *= Complex{1.0 / 15.0, 0.0};
        sum += delta;  // Richardson correction
        return sum;
    }
    CMatrix l = simpson_adaptive(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth + 1);
    l += simpson_adaptive(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    return l;
}

}  // namespace

CMatrix quad_operator(const std::function<CMatrix(double)>& f, double a, double b, double tol) {
    if (!(a <= b)) throw DomainError("quad_operator: requires a <= b");
    if (!(tol > 0.0)) throw DomainError("quad_operator: tolerance must be positive");
    const CMatrix fa = f(a);
    if (a == b) return CMatrix::zero(fa.rows(), fa.cols());
    const CMatrix fm = f(0.5 * (a + b));
    const CMatrix fb = f(b);
    const CMatrix whole = simpson(fa, fm, fb, b - a);
    return simpson_adaptive(f, a, b, fa, fm, fb, whole, tol, 0);
}

double quad_scalar(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const auto wrap = [&f](double x) {
        CMatrix m(1, 1);
        m(0, 0) = Complex{f(x), 0.0};
        return m;
    };
    if (!(lo <= hi)) throw DomainError("quad_scalar: requires lo <= hi");
    return quad_operator(wrap, lo, hi, tol)(0, 0).real();
}

}  // namespace qsg
