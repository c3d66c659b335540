#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qsg/cmatrix.hpp"
#include "qsg/operators.hpp"
#include "qsg/tolerance.hpp"

namespace qsg {

using ScalarMap = std::function<double(double)>;
using MatrixMap = std::function<CMatrix(double)>;

// Forward / shifted difference quotients of s -> R(t, s) at s = 0.
// The shifted quotient exists only for t >= h; discrepancy is 0 when it is
// absent.
struct GeneratorEstimate {
    double t = 0.0;
    double h = 0.0;
    CMatrix forward;                 // (R(t, h) - I) / h
    std::optional<CMatrix> shifted;  // (R(t - h, h) - I) / h
    double discrepancy = 0.0;
};

// A two-parameter evaluable family (t, s) -> R(t, s) with R(t, 0) = I, the
// cocycle law R(t, s + r) = R(t + r, s) R(t, r), and a growth bound
// ||R(t, s)|| <= M(t + s).
//
// Three backends:
//   Constant   R(t, s) = exp(s A); the one-parameter semigroup case.
//   Scaled     R(t, s) = exp((g(t+s) - g(t)) A) with g(t) the integral of a
//              positive continuous scale a; generator a(t) A.
//   Evolution  R(t, s) solves dU/ds = A(t + s) U, U(0) = I, by fixed-step
//              classical RK4; the step is calibrated at construction so that
//              halving it changes the result by at most ode_tol.
//
// Values are immutable after construction; eval is pure (an internal
// memoization cache does not affect results) and safe to call concurrently.
enum class BackendKind { Constant, Scaled, Evolution };

class QuasiSemigroup {
public:
    struct Constant {
        CMatrix generator;
    };
    struct Scaled {
        CMatrix generator;
        ScalarMap scale;
    };
    struct Evolution {
        MatrixMap generator_fun;
        double step_hint = 0.05;
    };
    using Backend = std::variant<Constant, Scaled, Evolution>;

    explicit QuasiSemigroup(Backend backend, ToleranceContext tol = {},
                            std::string description = {});

    std::size_t dim() const noexcept { return dim_; }
    const ToleranceContext& tol() const noexcept { return tol_; }
    const std::string& description() const noexcept { return description_; }
    BackendKind kind() const noexcept;

    // True when the generator family A(t) does not depend on t (probed at
    // fixed sample times; Constant backends are always time-constant).
    bool constant_generator() const noexcept { return constant_generator_; }

    // Increasing majorant M with ||R(t, s)|| <= M(t + s), M >= 1.
    double growth_bound(double tau) const;

    // R(t, s); throws DomainError for negative arguments. s = 0 returns the
    // identity exactly.
    FiniteOperator eval(double t, double s) const;

    // A(t): the stored matrix, a(t) A, or the evolution generator at t.
    FiniteOperator generator(double t) const;

    // Difference quotients at step h > 0.
    GeneratorEstimate estimate_generator(double t, double h) const;

private:
    struct Cache;

    CMatrix eval_raw(double t, double s) const;
    double g(double x) const;                 // Scaled: integral of the scale over [0, x]
    double evolution_norm_sup(double tau) const;

    Backend backend_;
    ToleranceContext tol_;
    std::string description_;
    std::size_t dim_ = 0;
    bool constant_generator_ = false;
    double generator_norm_ = 0.0;  // ||A||_2 for Constant / Scaled
    double evo_step_ = 0.05;
    std::shared_ptr<Cache> cache_;
};

struct AxiomResidual {
    double t = 0.0, s = 0.0, r = 0.0;
    double cocycle = 0.0;      // ||R(t, s+r) - R(t+r, s) R(t, r)||
    double continuity = 0.0;   // ||R(t, eps) - I|| at eps = 1e-6
    double bound_slack = 0.0;  // M(t + s) - ||R(t, s)||
};

// Definitional residuals over a grid of (t, s, r) points.
std::vector<AxiomResidual> check_axioms(const QuasiSemigroup& q,
                                        std::span<const std::array<double, 3>> grid);

// ||R(t0, s0) A(t) - A(t) R(t0, s0)|| in the spectral norm.
double check_commutation(const QuasiSemigroup& q, double t, double t0, double s0);

// ||R(t, s) - I - integral_0^s A(t+h) R(t, h) dh||.
double check_integral_equation(const QuasiSemigroup& q, double t, double s);

// ||(1/s) integral_0^s R(t, h) dh - I|| for each s in the decreasing list.
std::vector<double> check_averaging(const QuasiSemigroup& q, double t,
                                    std::span<const double> s_values);

}  // namespace qsg
