#pragma once

#include <string>
#include <vector>

#include "qsg/cmatrix.hpp"
#include "qsg/operators.hpp"

namespace qsg {

// The spectrum variants handled by the harness. In finite dimension the
// first four coincide as sets and the essential spectrum is empty; each is
// still computed from its own defining test so the collapse is observed
// rather than assumed.
enum class SpectrumKind { Ordinary, Point, Approximate, Residual, Essential, Regular };

const char* to_string(SpectrumKind kind);

struct SpectralPoint {
    Complex value;
    int multiplicity = 1;
};

// A finite multiset of spectral points with the tolerance under which
// membership and inclusion are judged.
struct SpectralSet {
    SpectrumKind kind = SpectrumKind::Ordinary;
    std::vector<SpectralPoint> points;  // sorted by (real, imag)
    double match_tol = 0.0;

    bool empty() const noexcept { return points.empty(); }
    int total_multiplicity() const noexcept;
    double max_abs() const noexcept;  // 0 for the empty set
};

// Best unit-norm approximate eigenvector for lambda: the right singular
// vector of (lambda I - T) at the smallest singular value; eta is that
// singular value, i.e. ||(lambda I - T) x||.
struct ApproxEigenpair {
    Complex lambda;
    CMatrix x;  // n x 1, unit norm, canonical phase
    double eta = 0.0;
};

// Pseudospectrum portrait: sigma_min(lambda I - T) on a rectangular grid.
// values is row-major with rows indexed by the imaginary axis (ascending)
// and columns by the real axis (ascending).
struct PseudospectrumGrid {
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;
    std::size_t re_resolution = 0;
    std::size_t im_resolution = 0;
    std::vector<double> values;

    double at(std::size_t im_index, std::size_t re_index) const {
        return values[im_index * re_resolution + re_index];
    }
};

// Candidate points are the clustered eigenvalues of T; each kind applies its
// own defining test per candidate (kernel for Point, range for Residual,
// bounded-below for Approximate, semi-regularity for Regular). Essential is
// empty in finite dimension.
SpectralSet spectrum(const FiniteOperator& t, SpectrumKind kind);

// {e^(lambda s)} with multiplicities preserved and collisions merged.
SpectralSet exp_image(const SpectralSet& s, double time);

// max over p in s1 of the distance to s2; 0 when s1 is empty, +inf when s1
// is nonempty and s2 is empty. Inclusion holds iff the defect is within the
// match tolerance.
double inclusion_defect(const SpectralSet& s1, const SpectralSet& s2);

ApproxEigenpair approx_eigenpair(const FiniteOperator& t, Complex lambda);

// Requires at least 2 nodes per axis.
PseudospectrumGrid pseudospectrum_grid(const FiniteOperator& t, double re_lo, double re_hi,
                                       double im_lo, double im_hi, std::size_t re_resolution,
                                       std::size_t im_resolution);

// Default probe set: clustered eigenvalues of A, their pairwise midpoints,
// one off-spectrum point (max |eig| + 1) and 0; deduplicated and sorted.
std::vector<Complex> default_lambda_samples(const FiniteOperator& a);

}  // namespace qsg
