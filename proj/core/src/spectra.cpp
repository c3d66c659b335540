#include "qsg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"

namespace qsg {

const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Ordinary: return "ordinary";
        case SpectrumKind::Point: return "point";
        case SpectrumKind::Approximate: return "approximate";
        case SpectrumKind::Residual: return "residual";
        case SpectrumKind::Essential: return "essential";
        case SpectrumKind::Regular: return "regular";
    }
    return "unknown";
}

int SpectralSet::total_multiplicity() const noexcept {
    int total = 0;
    for (const auto& p : points) total += p.multiplicity;
    return total;
}

double SpectralSet::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, std::abs(p.value));
    return m;
}

namespace {

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Greedy clustering of a sorted eigenvalue list; points within tol of the
// running cluster mean merge into one representative.
std::vector<SpectralPoint> cluster(std::vector<Complex> values, double tol) {
    std::sort(values.begin(), values.end(), complex_less);
    std::vector<SpectralPoint> out;
    for (const Complex v : values) {
        if (!out.empty()) {
            auto& last = out.back();
            const double scale = 1.0 + std::abs(last.value);
            if (std::abs(v - last.value) <= tol * scale) {
                // running mean keeps the representative centered
                const double m = static_cast<double>(last.multiplicity);
                last.value = (last.value * m + v) / (m + 1.0);
                last.multiplicity += 1;
                continue;
            }
        }
        out.push_back(SpectralPoint{v, 1});
    }
    return out;
}

double match_tolerance(double eig_tol, double max_abs) {
    // exponentials amplify absolute error, so the tolerance grows with the
    // magnitude of the points
    return std::max(eig_tol, 1e-6 * (1.0 + max_abs));
}

CMatrix shifted(const FiniteOperator& t, Complex lambda) {
    CMatrix m = Complex{-1.0, 0.0} * t.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += lambda;
    return m;
}

}  // namespace

SpectralSet spectrum(const FiniteOperator& t, SpectrumKind kind) {
    const std::size_t n = t.dim();
    SpectralSet out;
    out.kind = kind;

    if (kind == SpectrumKind::Essential) {
        // every operator here is Fredholm, so the essential spectrum is empty
        out.match_tol = match_tolerance(t.tol.eig_tol, 0.0);
        return out;
    }

    const Eigensystem es = eig(t.matrix);
    std::vector<SpectralPoint> candidates = cluster(es.values, t.tol.eig_tol);
    const double op_norm = spectral_norm(t.matrix);

    for (const SpectralPoint& cand : candidates) {
        const FiniteOperator probe{shifted(t, cand.value), t.tol};
        // lambda I - T is singular in exact arithmetic at every candidate;
        // when it lands at roundoff scale entirely (T close to lambda I) the
        // relative cutoff needs this floor to see the singularity
        const double floor = 4.0 * static_cast<double>(n) *
                             std::numeric_limits<double>::epsilon() *
                             (std::abs(cand.value) + op_norm);
        bool member = false;
        switch (kind) {
            case SpectrumKind::Ordinary:
                // not bijective: a nontrivial kernel or a proper range
                member = kernel(probe, floor).dim() > 0 || range(probe, floor).dim() < n;
                break;
            case SpectrumKind::Point:
                member = kernel(probe, floor).dim() > 0;
                break;
            case SpectrumKind::Approximate:
                member = !is_bounded_below(probe, floor).bounded_below;
                break;
            case SpectrumKind::Residual:
                // dense = full in finite dimension
                member = range(probe, floor).dim() < n;
                break;
            case SpectrumKind::Regular:
                member = !is_semi_regular(probe, floor).semi_regular;
                break;
            case SpectrumKind::Essential:
                break;
        }
        if (member) out.points.push_back(cand);
    }
    out.match_tol = match_tolerance(t.tol.eig_tol, out.max_abs());
    return out;
}

SpectralSet exp_image(const SpectralSet& s, double time) {
    SpectralSet out;
    out.kind = s.kind;
    std::vector<SpectralPoint> mapped;
    mapped.reserve(s.points.size());
    for (const auto& p : s.points) {
        mapped.push_back(SpectralPoint{std::exp(p.value * time), p.multiplicity});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) {
                  return complex_less(a.value, b.value);
              });

    double max_abs = 0.0;
    for (const auto& p : mapped) max_abs = std::max(max_abs, std::abs(p.value));
    out.match_tol = std::max(s.match_tol, 1e-6 * (1.0 + max_abs));

    // merge exponential collisions, multiplicities summed
    for (const auto& p : mapped) {
        if (!out.points.empty() &&
            std::abs(p.value - out.points.back().value) <= out.match_tol) {
            auto& last = out.points.back();
            const double mw = static_cast<double>(last.multiplicity);
            const double pw = static_cast<double>(p.multiplicity);
            last.value = (last.value * mw + p.value * pw) / (mw + pw);
            last.multiplicity += p.multiplicity;
        } else {
            out.points.push_back(p);
        }
    }
    return out;
}

double inclusion_defect(const SpectralSet& s1, const SpectralSet& s2) {
    if (s1.points.empty()) return 0.0;
    if (s2.points.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& p : s1.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : s2.points) best = std::min(best, std::abs(p.value - q.value));
        worst = std::max(worst, best);
    }
    return worst;
}

ApproxEigenpair approx_eigenpair(const FiniteOperator& t, Complex lambda) {
    const std::size_t n = t.dim();
    const Svd dec = svd(shifted(t, lambda));

    CMatrix x(n, 1);
    std::size_t pivot = 0;
    double pmag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = dec.v(i, n - 1);
        if (std::abs(x(i, 0)) > pmag) {
            pmag = std::abs(x(i, 0));
            pivot = i;
        }
    }
    if (pmag > 0.0) {
        const Complex phase = std::conj(x(pivot, 0)) / pmag;
        for (std::size_t i = 0; i < n; ++i) x(i, 0) *= phase;
    }
    return ApproxEigenpair{lambda, std::move(x), dec.sigma.back()};
}

PseudospectrumGrid pseudospectrum_grid(const FiniteOperator& t, double re_lo, double re_hi,
                                       double im_lo, double im_hi, std::size_t re_resolution,
                                       std::size_t im_resolution) {
    if (re_resolution < 2 || im_resolution < 2) {
        throw DomainError("pseudospectrum_grid: resolution must be at least 2 per axis");
    }
    PseudospectrumGrid grid;
    grid.re_lo = re_lo;
    grid.re_hi = re_hi;
    grid.im_lo = im_lo;
    grid.im_hi = im_hi;
    grid.re_resolution = re_resolution;
    grid.im_resolution = im_resolution;
    grid.values.resize(re_resolution * im_resolution);
    for (std::size_t i = 0; i < im_resolution; ++i) {
        const double im = im_lo + (im_hi - im_lo) * static_cast<double>(i) /
                                      static_cast<double>(im_resolution - 1);
        for (std::size_t j = 0; j < re_resolution; ++j) {
            const double re = re_lo + (re_hi - re_lo) * static_cast<double>(j) /
                                          static_cast<double>(re_resolution - 1);
            grid.values[i * re_resolution + j] =
                smallest_singular_value(shifted(t, Complex{re, im}));
        }
    }
    return grid;
}

std::vector<Complex> default_lambda_samples(const FiniteOperator& a) {
    const SpectralSet spec = spectrum(a, SpectrumKind::Ordinary);
    std::vector<Complex> samples;
    double max_abs = 0.0;
    for (const auto& p : spec.points) {
        samples.push_back(p.value);
        max_abs = std::max(max_abs, std::abs(p.value));
    }
    const std::size_t k = spec.points.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            samples.push_back(0.5 * (spec.points[i].value + spec.points[j].value));
        }
    }
    samples.push_back(Complex{max_abs + 1.0, 0.0});
    samples.push_back(Complex{0.0, 0.0});

    std::sort(samples.begin(), samples.end(), complex_less);
    std::vector<Complex> out;
    for (const Complex v : samples) {
        if (out.empty() || std::abs(v - out.back()) > 1e-9) out.push_back(v);
    }
    return out;
}

}  // namespace qsg
