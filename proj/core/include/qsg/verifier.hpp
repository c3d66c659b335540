#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsg/cmatrix.hpp"
#include "qsg/quasi_semigroup.hpp"
#include "qsg/spectra.hpp"

namespace qsg {

enum class Verdict { Pass, Fail, ReportOnly };

const char* to_string(Verdict v);

// Parameter tuple of one checked claim instance. Unused coordinates stay
// disengaged so reports only carry what the claim actually depends on.
struct ClaimParams {
    double t = 0.0;
    double s = 0.0;
    std::optional<double> r;
    std::optional<Complex> lambda;
    std::optional<int> power;
    std::string backend;
};

// One theorem-instance check. PASS/FAIL verdicts always carry a bound and
// satisfy: PASS iff residual <= bound. REPORT-ONLY records carry none; they
// measure identities whose proof requires a time-constant generator on a
// backend that does not provide one.
struct VerificationRecord {
    std::string claim_id;
    ClaimParams params;
    double residual = 0.0;
    std::optional<double> bound;
    Verdict verdict = Verdict::ReportOnly;
    std::string note;
};

VerificationRecord make_record(std::string claim_id, ClaimParams params, double residual,
                               std::optional<double> bound, std::string note = {});

// The convolution-type operator
//   D_lambda(t, s) = integral_0^s e^{lambda (s-h)} R(t, h) dh,
// computed by entrywise adaptive quadrature at the quad tolerance. At s = 0
// the matrix is exactly zero.
struct DLambda {
    Complex lambda;
    double t = 0.0;
    double s = 0.0;
    CMatrix matrix;
};

DLambda d_lambda(const QuasiSemigroup& q, Complex lambda, double t, double s);

// (lambda - A(t)) D_lambda(t, s)  vs  e^{lambda s} - R(t, s)
VerificationRecord check_identity_right(const QuasiSemigroup& q, Complex lambda, double t,
                                        double s);
// D_lambda(t, s) (lambda - A(t))  vs  e^{lambda s} - R(t, s)
VerificationRecord check_identity_left(const QuasiSemigroup& q, Complex lambda, double t,
                                       double s);

// n-th power identity (lambda - A(t))^n D^n vs (e^{lambda s} - R(t, s))^n;
// left_factors swaps the product order to D^n (lambda - A(t))^n.
VerificationRecord check_power_identity(const QuasiSemigroup& q, Complex lambda, double t,
                                        double s, int n, bool left_factors = false);

// N[(lambda - A(t))^n] contained in N[(e^{lambda s} - R(t, s))^n].
VerificationRecord check_kernel_inclusion(const QuasiSemigroup& q, Complex lambda, double t,
                                          double s, int n);

// Rg[(e^{lambda s} - R(t, s))^n] contained in Rg[(lambda - A(t))^n];
// hyper_ranges = true switches both sides to hyper-ranges (the n -> inf
// variant) and ignores n.
VerificationRecord check_range_inclusion(const QuasiSemigroup& q, Complex lambda, double t,
                                         double s, int n, bool hyper_ranges = false);

// exp_image(spectrum(A(t), kind), s) contained in spectrum(R(t, s), kind).
// The note carries the reverse defect (equality holds in finite dimension)
// and flags the vacuous essential case.
VerificationRecord check_spectral_inclusion(const QuasiSemigroup& q, double t, double s,
                                            SpectrumKind kind);

// Propagation of an approximate eigenpair: ||e^{lambda s} x - R(t, s) x||
// against c * eta + 10 * quad_tol with c the quadrature of
// e^{Re(lambda)(s-h)} M(t+h) over [0, s].
VerificationRecord check_approx_propagation(const QuasiSemigroup& q, double t, double s,
                                            const ApproxEigenpair& pair);

// Regular-spectrum inclusion plus a replay of its proof path at every probe
// lambda where e^{lambda s} - R(t, s) is semi-regular: the hyper-range M
// must be R(t, s)-invariant, the compression of e^{lambda s} - R(t, s) to
// the quotient bounded below, and the kernel of lambda - A(t) contained in
// its hyper-range.
struct RegularInclusionResult {
    VerificationRecord primary;
    std::vector<VerificationRecord> diagnostics;  // claim id "thm2.5.diag"
};

RegularInclusionResult check_regular_inclusion(const QuasiSemigroup& q, double t, double s);
RegularInclusionResult check_regular_inclusion(const QuasiSemigroup& q, double t, double s,
                                               std::span<const Complex> lambdas);

}  // namespace qsg
