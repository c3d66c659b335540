#include "qsg/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"
#include "qsg/operators.hpp"

namespace qsg {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::ReportOnly: return "REPORT-ONLY";
    }
    return "unknown";
}

VerificationRecord make_record(std::string claim_id, ClaimParams params, double residual,
                               std::optional<double> bound, std::string note) {
    VerificationRecord rec;
    rec.claim_id = std::move(claim_id);
    rec.params = std::move(params);
    rec.residual = residual;
    rec.bound = bound;
    rec.verdict = bound.has_value() ? (residual <= *bound ? Verdict::Pass : Verdict::Fail)
                                    : Verdict::ReportOnly;
    rec.note = std::move(note);
    return rec;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr const char* kVaryingNote = "generator varies in t; measured only";

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CMatrix shift_identity(Complex lambda, const CMatrix& m) {
    // lambda I - m
    CMatrix out = Complex{-1.0, 0.0} * m;
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += lambda;
    return out;
}

double identity_bound(const QuasiSemigroup& q, Complex lambda, double t, double s) {
    return 10.0 * q.tol().quad_tol * s * std::exp(std::abs(lambda.real()) * s) *
           q.growth_bound(t + s) * static_cast<double>(q.dim());
}

// Roundoff floor for rank decisions on an explicit n-th power of a matrix of
// the given spectral norm; products of numerically zero factors land at this
// scale rather than at exact zero.
double power_floor(double operator_norm, int n, std::size_t dim) {
    return 4.0 * static_cast<double>(n) * static_cast<double>(dim) * kEps *
           std::pow(operator_norm, n);
}

ClaimParams base_params(const QuasiSemigroup& q, double t, double s) {
    ClaimParams p;
    p.t = t;
    p.s = s;
    p.backend = q.description();
    return p;
}

}  // namespace

DLambda d_lambda(const QuasiSemigroup& q, Complex lambda, double t, double s) {
    if (t < 0.0 || s < 0.0) throw DomainError("d_lambda: negative time argument");
    DLambda out;
    out.lambda = lambda;
    out.t = t;
    out.s = s;
    if (s == 0.0) {
        out.matrix = CMatrix::zero(q.dim(), q.dim());
        return out;
    }
    out.matrix = quad_operator(
        [&](double h) { return std::exp(lambda * (s - h)) * q.eval(t, h).matrix; }, 0.0, s,
        q.tol().quad_tol);
    return out;
}

namespace {

VerificationRecord identity_record(const QuasiSemigroup& q, Complex lambda, double t, double s,
                                   bool left, const char* claim) {
    const CMatrix d = d_lambda(q, lambda, t, s).matrix;
    const CMatrix shifted_gen = shift_identity(lambda, q.generator(t).matrix);
    const CMatrix lhs = left ? d * shifted_gen : shifted_gen * d;
    const CMatrix rhs = shift_identity(std::exp(lambda * s), q.eval(t, s).matrix);
    const double residual = spectral_norm(lhs - rhs);

    ClaimParams params = base_params(q, t, s);
    params.lambda = lambda;
    if (q.constant_generator()) {
        return make_record(claim, std::move(params), residual,
                           identity_bound(q, lambda, t, s));
    }
    return make_record(claim, std::move(params), residual, std::nullopt, kVaryingNote);
}

}  // namespace

VerificationRecord check_identity_right(const QuasiSemigroup& q, Complex lambda, double t,
                                        double s) {
    return identity_record(q, lambda, t, s, false, "thm2.1.1");
}

VerificationRecord check_identity_left(const QuasiSemigroup& q, Complex lambda, double t,
                                       double s) {
    return identity_record(q, lambda, t, s, true, "thm2.1.2");
}

VerificationRecord check_power_identity(const QuasiSemigroup& q, Complex lambda, double t,
                                        double s, int n, bool left_factors) {
    if (n < 1) throw DomainError("check_power_identity: n must be at least 1");
    const CMatrix d = d_lambda(q, lambda, t, s).matrix;
    const CMatrix f = shift_identity(lambda, q.generator(t).matrix);
    const CMatrix g = shift_identity(std::exp(lambda * s), q.eval(t, s).matrix);

    const CMatrix fn = matrix_power(f, static_cast<unsigned>(n));
    const CMatrix dn = matrix_power(d, static_cast<unsigned>(n));
    const CMatrix gn = matrix_power(g, static_cast<unsigned>(n));
    const CMatrix lhs = left_factors ? dn * fn : fn * dn;
    const double residual = spectral_norm(lhs - gn);

    ClaimParams params = base_params(q, t, s);
    params.lambda = lambda;
    params.power = n;
    if (q.constant_generator()) {
        const double scale =
            static_cast<double>(n) *
            std::pow(spectral_norm(f) + spectral_norm(d), static_cast<double>(n - 1));
        return make_record(left_factors ? "cor2.3.2" : "cor2.3.1", std::move(params), residual,
                           identity_bound(q, lambda, t, s) * scale);
    }
    return make_record(left_factors ? "cor2.3.2" : "cor2.3.1", std::move(params), residual,
                       std::nullopt, kVaryingNote);
}

namespace {

VerificationRecord containment_record(const QuasiSemigroup& q, Complex lambda, double t, double s,
                                      int n, bool hyper_ranges, bool kernel_side,
                                      std::string claim) {
    const CMatrix f = shift_identity(lambda, q.generator(t).matrix);
    const CMatrix g = shift_identity(std::exp(lambda * s), q.eval(t, s).matrix);
    const ToleranceContext tol = q.tol();
    const std::size_t dim = q.dim();

    Subspace inner = Subspace::zero(dim);
    Subspace outer = Subspace::zero(dim);
    if (hyper_ranges) {
        inner = hyper_range(FiniteOperator{g, tol});
        outer = hyper_range(FiniteOperator{f, tol});
    } else {
        const double floor_f = power_floor(spectral_norm(f), n, dim);
        const double floor_g = power_floor(spectral_norm(g), n, dim);
        const CMatrix fn = matrix_power(f, static_cast<unsigned>(n));
        const CMatrix gn = matrix_power(g, static_cast<unsigned>(n));
        if (kernel_side) {
            inner = kernel(FiniteOperator{fn, tol}, floor_f);
            outer = kernel(FiniteOperator{gn, tol}, floor_g);
        } else {
            inner = range(FiniteOperator{gn, tol}, floor_g);
            outer = range(FiniteOperator{fn, tol}, floor_f);
        }
    }

    const double bound = 10.0 * tol.rank_tol;
    const ContainmentResult c = subspace_contained(inner, outer, bound);

    ClaimParams params = base_params(q, t, s);
    params.lambda = lambda;
    if (!hyper_ranges) params.power = n;
    if (q.constant_generator()) {
        return make_record(std::move(claim), std::move(params), c.defect, bound);
    }
    return make_record(std::move(claim), std::move(params), c.defect, std::nullopt,
                       kVaryingNote);
}

}  // namespace

VerificationRecord check_kernel_inclusion(const QuasiSemigroup& q, Complex lambda, double t,
                                          double s, int n) {
    if (n < 1) throw DomainError("check_kernel_inclusion: n must be at least 1");
    return containment_record(q, lambda, t, s, n, false, true, n == 1 ? "cor2.3.3" : "cor2.3.5");
}

VerificationRecord check_range_inclusion(const QuasiSemigroup& q, Complex lambda, double t,
                                         double s, int n, bool hyper_ranges) {
    if (!hyper_ranges && n < 1) throw DomainError("check_range_inclusion: n must be at least 1");
    if (hyper_ranges) return containment_record(q, lambda, t, s, 1, true, false, "cor2.3.7");
    return containment_record(q, lambda, t, s, n, false, false, n == 1 ? "cor2.3.4" : "cor2.3.6");
}

VerificationRecord check_spectral_inclusion(const QuasiSemigroup& q, double t, double s,
                                            SpectrumKind kind) {
    if (t < 0.0 || s < 0.0) throw DomainError("check_spectral_inclusion: negative argument");
    static const char* claim_by_kind[] = {"thm2.4.1", "thm2.4.2", "thm2.4.3", "thm2.4.5",
                                          "thm2.4.4", "thm2.5"};
    const char* claim = claim_by_kind[static_cast<int>(kind)];

    ClaimParams params = base_params(q, t, s);

    if (kind == SpectrumKind::Essential) {
        return make_record(claim, std::move(params), 0.0, q.tol().eig_tol,
                           "vacuous in finite dimension: both sides empty");
    }

    const SpectralSet sa = spectrum(q.generator(t), kind);
    const SpectralSet sr = spectrum(q.eval(t, s), kind);
    const SpectralSet image = exp_image(sa, s);
    const double defect = inclusion_defect(image, sr);
    const double reverse = inclusion_defect(sr, image);
    const double match_tol = std::max(image.match_tol, sr.match_tol);

    std::string note = "reverse defect " + format_double(reverse);
    if (reverse <= match_tol) note += " (set equality within tolerance)";

    if (q.constant_generator()) {
        return make_record(claim, std::move(params), defect, match_tol, std::move(note));
    }
    return make_record(claim, std::move(params), defect, std::nullopt,
                       std::string(kVaryingNote) + "; " + note);
}

VerificationRecord check_approx_propagation(const QuasiSemigroup& q, double t, double s,
                                            const ApproxEigenpair& pair) {
    if (t < 0.0 || s < 0.0) throw DomainError("check_approx_propagation: negative argument");
    const Complex lambda = pair.lambda;
    CMatrix lhs = std::exp(lambda * s) * pair.x;
    lhs -= q.eval(t, s).matrix * pair.x;
    const double residual = lhs.frobenius_norm();

    const double c = (s == 0.0)
                         ? 0.0
                         : quad_scalar(
                               [&](double h) {
                                   return std::exp(lambda.real() * (s - h)) * q.growth_bound(t + h);
                               },
                               0.0, s, q.tol().quad_tol);
    const double bound = c * pair.eta + 10.0 * q.tol().quad_tol;

    ClaimParams params = base_params(q, t, s);
    params.lambda = lambda;
    const std::string note = "eta " + format_double(pair.eta) + ", c " + format_double(c);
    if (q.constant_generator()) {
        return make_record("thm2.4.3.prop", std::move(params), residual, bound, note);
    }
    return make_record("thm2.4.3.prop", std::move(params), residual, std::nullopt,
                       std::string(kVaryingNote) + "; " + note);
}

RegularInclusionResult check_regular_inclusion(const QuasiSemigroup& q, double t, double s) {
    const std::vector<Complex> lambdas = default_lambda_samples(q.generator(t));
    return check_regular_inclusion(q, t, s, lambdas);
}

RegularInclusionResult check_regular_inclusion(const QuasiSemigroup& q, double t, double s,
                                               std::span<const Complex> lambdas) {
    RegularInclusionResult out;
    out.primary = check_spectral_inclusion(q, t, s, SpectrumKind::Regular);

    const FiniteOperator r = q.eval(t, s);
    const FiniteOperator a = q.generator(t);
    const ToleranceContext tol = q.tol();
    const double bound = 10.0 * tol.rank_tol;
    const double dim_eps =
        4.0 * static_cast<double>(q.dim()) * std::numeric_limits<double>::epsilon();
    const double r_norm = spectral_norm(r.matrix);
    const double a_norm = spectral_norm(a.matrix);

    for (const Complex lambda : lambdas) {
        const Complex mu = std::exp(lambda * s);
        const FiniteOperator g{shift_identity(mu, r.matrix), tol};
        const double floor_g = dim_eps * (std::abs(mu) + r_norm);
        const SemiRegularity sr = is_semi_regular(g, floor_g);
        if (!sr.semi_regular) continue;  // the proof path starts from a semi-regular point

        ClaimParams params = base_params(q, t, s);
        params.lambda = lambda;
        // semi-regularity of the evaluated family is always probed at
        // exp(lambda * s) for the s under test
        std::string note = "semi-regular probe at exp(lambda*s); ";

        const Subspace m = hyper_range(g, floor_g);
        CMatrix image = r.matrix * m.basis();
        if (m.dim() > 0) {
            image -= m.basis() * (m.basis().adjoint() * image);
        }
        const double invariance_defect =
            m.dim() == 0 ? 0.0 : spectral_norm(image);
        const double invariance_bound =
            bound * std::max(spectral_norm(r.matrix), 1.0);
        if (invariance_defect > invariance_bound) {
            out.diagnostics.push_back(make_record(
                "thm2.5.diag", std::move(params), invariance_defect, invariance_bound,
                note + "hyper-range not invariant: rank decision suspect"));
            continue;
        }

        const FiniteOperator quotient = quotient_operator(g, m);
        const BoundedBelowResult bb = is_bounded_below(quotient, floor_g);
        const double floor_a = dim_eps * (std::abs(lambda) + a_norm);
        const FiniteOperator shifted_a{shift_identity(lambda, a.matrix), tol};
        const ContainmentResult kc = subspace_contained(
            kernel(shifted_a, floor_a), hyper_range(shifted_a, floor_a), bound);

        // the quotient compression must be injective from below; fold the
        // failure into the residual so a single threshold decides the record
        double residual = std::max(invariance_defect, kc.defect);
        if (!bb.bounded_below) residual = std::max(residual, 1.0);
        note += "quotient dim " + std::to_string(quotient.dim()) + ", sigma_min " +
                format_double(bb.sigma_min) + ", kernel containment defect " +
                format_double(kc.defect);

        if (q.constant_generator()) {
            out.diagnostics.push_back(
                make_record("thm2.5.diag", std::move(params), residual, bound, std::move(note)));
        } else {
            out.diagnostics.push_back(make_record("thm2.5.diag", std::move(params), residual,
                                                  std::nullopt,
                                                  std::string(kVaryingNote) + "; " + note));
        }
    }
    return out;
}

}  // namespace qsg
